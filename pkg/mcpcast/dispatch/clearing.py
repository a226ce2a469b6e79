__all__ = [
    "MarketClearingResult", "clear_window", "rolling_mcp",
    "merit_order_price", "merit_order_prices", "write_mcp"
]

from typing import IO, Optional, Tuple, Union
from dataclasses import dataclass
import logging

import numpy as np

from .fleet import FleetSpec, merit_order
from ..dataset.base import HourlyPanel, HOURS, MCP
from ..dataset.tabular import write_series
from ..errors import InconsistentWindow, InvalidFleet
from ..solver import LpProblem, solve_lp, EQ

logger = logging.getLogger("mcpcast.dispatch")

@dataclass(frozen=True)
class MarketClearingResult:
    """Dispatch of one window. Hourly arrays are indexed by hour within the window."""
    start: int
    mcp: np.ndarray
    generation: np.ndarray
    curtailment: np.ndarray
    shedding: np.ndarray
    objective: float
    charge: Optional[np.ndarray] = None
    discharge: Optional[np.ndarray] = None
    level: Optional[np.ndarray] = None

    @property
    def hours(self) -> np.ndarray:
        return np.arange(self.start, self.start + self.mcp.size)


def _build_problem(fleet: FleetSpec, demand: np.ndarray, hours: np.ndarray,
        initial_level: float) -> Tuple[LpProblem, dict]:
    T = hours.size
    U = fleet.n_units
    costs = fleet.unit_costs(hours)
    renewables = fleet.renewables(hours)
    storage = fleet.storage

    # variable blocks, hour major inside each block
    index = {"gen": 0, "curt": T * U, "shed": T * U + T}
    n = T * U + 2 * T
    if storage is not None:
        index.update({"charge": n, "discharge": n + T, "level": n + 2 * T})
        n += 3 * T

    c = np.zeros(n)
    upper = np.full(n, np.inf)
    c[:T * U] = costs.reshape(-1)
    upper[:T * U] = np.tile(fleet.capacities, T)
    c[index["curt"]:index["curt"] + T] = fleet.curtailment_cost
    upper[index["curt"]:index["curt"] + T] = renewables
    c[index["shed"]:index["shed"] + T] = fleet.shedding_cost
    upper[index["shed"]:index["shed"] + T] = np.maximum(demand, 0.0)

    n_rows = T if storage is None else 2 * T
    A = np.zeros((n_rows, n))
    b = np.zeros(n_rows)
    t = np.arange(T)

    # demand balance: sum g + discharge - charge - curtailment + shedding = demand - renewables
    for u in range(U):
        A[t, t * U + u] = 1.0
    A[t, index["curt"] + t] = -1.0
    A[t, index["shed"] + t] = 1.0
    b[:T] = demand - renewables

    if storage is not None:
        A[t, index["discharge"] + t] = 1.0
        A[t, index["charge"] + t] = -1.0
        upper[index["charge"]:index["charge"] + T] = storage.power
        upper[index["discharge"]:index["discharge"] + T] = storage.power
        upper[index["level"]:index["level"] + T] = storage.energy

        # level_t - level_{t-1} - eta charge_t + discharge_t = 0
        rows = T + t
        A[rows, index["level"] + t] = 1.0
        A[rows[1:], index["level"] + t[:-1]] = -1.0
        A[rows, index["charge"] + t] = -storage.efficiency
        A[rows, index["discharge"] + t] = 1.0
        b[T] = initial_level

    names = ["g_{}_h{}".format(unit.name, h) for h in hours for unit in fleet.units]
    names += ["curt_h{}".format(h) for h in hours] + ["shed_h{}".format(h) for h in hours]
    if storage is not None:
        for block in ("charge", "discharge", "level"):
            names += ["{}_h{}".format(block, h) for h in hours]
    row_names = ["balance_h{}".format(h) for h in hours]
    if storage is not None:
        row_names += ["storage_h{}".format(h) for h in hours]

    problem = LpProblem(c=c, A=A, b=b, senses=[EQ] * n_rows, sense="min",
        upper=upper, var_names=names, row_names=row_names)
    return problem, index

def clear_window(fleet: FleetSpec, demand: np.ndarray, window: Optional[Tuple[int, int]] = None,
        initial_level: float = 0.0) -> MarketClearingResult:
    """Solves the min cost dispatch of a window and prices every hour with the
    dual of its demand balance row

    Args:
        fleet (FleetSpec): fleet with renewable and fuel profiles bound on the same hourly axis as `demand`
        demand (np.ndarray): hourly demand MWh/h
        window (Tuple[int, int], optional): hour range [start, stop). Defaults to the full demand series.
        initial_level (float, optional): storage level entering the window. Defaults to 0.

    Returns:
        MarketClearingResult: prices, dispatch and objective of the window
    """
    demand = np.asarray(demand, dtype=np.float64).reshape(-1)
    start, stop = (0, demand.size) if window is None else (int(window[0]), int(window[1]))

    if stop - start < HOURS:
        raise InconsistentWindow("window [{}, {}) is shorter than {} hours".format(start, stop, HOURS))
    if start < 0 or stop > demand.size:
        raise InconsistentWindow("window [{}, {}) is not covered by {} demand hours".format(start, stop, demand.size))
    horizon = fleet.horizon()
    if horizon is not None and stop > horizon:
        raise InconsistentWindow("window [{}, {}) is not covered by {} profile hours".format(start, stop, horizon))
    if not np.all(np.isfinite(demand[start:stop])):
        raise InconsistentWindow("demand of window [{}, {}) is not finite".format(start, stop))
    if fleet.storage is not None and not 0 <= initial_level <= fleet.storage.energy + 1e-9:
        raise InconsistentWindow("initial storage level {} outside [0, {}]".format(initial_level, fleet.storage.energy))

    hours = np.arange(start, stop)
    T = hours.size
    U = fleet.n_units
    problem, index = _build_problem(fleet, demand[start:stop], hours,
        min(initial_level, fleet.storage.energy) if fleet.storage is not None else 0.0)
    solution = solve_lp(problem)
    x = solution.x

    result = MarketClearingResult(
        start=start,
        mcp=solution.duals[:T].copy(),
        generation=x[:T * U].reshape(T, U),
        curtailment=x[index["curt"]:index["curt"] + T],
        shedding=x[index["shed"]:index["shed"] + T],
        objective=solution.objective,
        charge=x[index["charge"]:index["charge"] + T] if fleet.storage is not None else None,
        discharge=x[index["discharge"]:index["discharge"] + T] if fleet.storage is not None else None,
        level=x[index["level"]:index["level"] + T] if fleet.storage is not None else None)

    logger.debug("cleared window [{}, {}) in {} pivots, mean mcp {:.2f}".format(
        start, stop, solution.iterations, float(result.mcp.mean())))
    return result

def rolling_mcp(fleet: FleetSpec, panel: HourlyPanel, window_hours: int = 36,
        keep_hours: int = 24, demand_series: str = "load") -> np.ndarray:
    """Rolls the dispatch window over the panel horizon

    Every solve covers `window_hours` and keeps the prices of its first `keep_hours`;
    the storage level at the end of the kept hours enters the next window.
    Profiles missing from the fleet are taken from the panel.

    Returns:
        np.ndarray: (n_days, 24) market clearing prices
    """
    if not window_hours >= keep_hours >= HOURS:
        raise InconsistentWindow("window {} h and keep {} h must satisfy window >= keep >= 24".format(
            window_hours, keep_hours))
    if keep_hours % HOURS != 0:
        raise InconsistentWindow("keep hours must be a multiple of 24 not {}".format(keep_hours))

    fleet = fleet.bind_panel(panel)
    demand = panel.hourly(demand_series)
    horizon = demand.size
    mcp = np.empty(horizon)
    level = 0.0

    for start in range(0, horizon, keep_hours):
        stop = min(start + window_hours, horizon)
        result = clear_window(fleet, demand, window=(start, stop), initial_level=level)
        kept = min(keep_hours, stop - start)
        mcp[start:start + kept] = result.mcp[:kept]
        if result.level is not None:
            level = float(np.clip(result.level[kept - 1], 0.0, fleet.storage.energy))

    return mcp.reshape(panel.n_days, HOURS)

def merit_order_price(fleet: FleetSpec, net_load: float, hour: Optional[int] = None) -> float:
    """Price of the cheapest unit stack covering `max(net_load, 0)`

    Valid for storage free fleets only. Net load below zero is priced at minus the
    curtailment cost, net load above capacity at the shedding cost, zero net load at
    the cost of the first unit in merit order.

    >>> from mcpcast.dispatch.fleet import Unit
    >>> fleet = FleetSpec(units=(Unit("a", 20.0, 50.0), Unit("b", 40.0, 50.0)))
    >>> merit_order_price(fleet, 70.0), merit_order_price(fleet, 0.0), merit_order_price(fleet, -10.0)
    (40.0, 20.0, -20.0)
    """
    if fleet.storage is not None:
        raise InvalidFleet("merit order pricing needs a storage free fleet")
    if net_load < 0:
        return -float(fleet.curtailment_cost)
    if net_load > fleet.total_capacity:
        return float(fleet.shedding_cost)

    costs = fleet.unit_costs(np.array([0 if hour is None else hour]))[0]
    capacities = fleet.capacities
    covered = 0.0
    for k in merit_order(costs):
        if capacities[k] <= 0:
            continue
        covered += capacities[k]
        if covered >= net_load:
            return float(costs[k])
    return float(fleet.shedding_cost)

def merit_order_prices(fleet: FleetSpec, panel: HourlyPanel, demand_series: str = "load") -> np.ndarray:
    """hour by hour merit order prices of the panel horizon as (n_days, 24) array"""
    fleet = fleet.bind_panel(panel)
    demand = panel.hourly(demand_series)
    hours = np.arange(demand.size)
    net = demand - fleet.renewables(hours)
    prices = np.array([merit_order_price(fleet, net[h], hour=h) for h in hours])
    return prices.reshape(panel.n_days, HOURS)

def write_mcp(dates: np.ndarray, mcp: np.ndarray, stream: Union[str, IO]):
    """Writes clearing prices as a `timestamp,mcp` csv that merges into a panel file

    Args:
        dates (np.ndarray): delivery days of the rows of `mcp`
        mcp (np.ndarray): (n_days, 24) prices
        stream (Union[str, IO]): file path or text stream
    """
    write_series(HourlyPanel(dates, {MCP: np.asarray(mcp, dtype=np.float64)}), MCP, stream)
