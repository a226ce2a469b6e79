__all__ = ["plan_day", "realized_profit", "verify_plan", "wasted_energy", "build_day_problem"]

from typing import Tuple
import logging

import numpy as np

from .spec import StorageSpec, StoragePlan, LOSS_ON_CHARGE
from ..dataset.base import HOURS
from ..errors import PlanInfeasible
from ..solver import LpProblem, solve_lp, MAXIMIZE, LE, EQ

logger = logging.getLogger("mcpcast.storage")

def _coefficients(spec: StorageSpec) -> Tuple[float, float, float]:
    """(charge gain, generation draw, usable share of the previous level)"""
    if spec.loss_on == LOSS_ON_CHARGE:
        return spec.eta, 1.0, 1.0
    return 1.0, 1.0 / spec.eta, spec.eta

def build_day_problem(prices: np.ndarray, spec: StorageSpec) -> LpProblem:
    """Daily arbitrage LP over charge C, generation G and level SL, in this variable order.

    max  sum p G - p C
    s.t. C_h + G_h <= cap
         SL_1 = a C_1,  SL_h <= SL_{h-1} + a C_h - g G_h
         G_1 = 0,  G_h <= r SL_{h-1}
         SL_h <= cap ecr,  SL_T = 0,  C, G <= cap,  all >= 0
    """
    T = prices.size
    a, g, r = _coefficients(spec)
    C, G, L = 0, T, 2 * T
    n = 3 * T
    h = np.arange(T)
    later = h[1:]

    A_cap = np.zeros((T, n))
    A_cap[h, C + h] = 1.0
    A_cap[h, G + h] = 1.0

    A_level = np.zeros((T - 1, n))
    rows = np.arange(T - 1)
    A_level[rows, L + later] = 1.0
    A_level[rows, L + later - 1] = -1.0
    A_level[rows, C + later] = -a
    A_level[rows, G + later] = g

    A_init = np.zeros((1, n))
    A_init[0, L] = 1.0
    A_init[0, C] = -a

    A_draw = np.zeros((T - 1, n))
    A_draw[rows, G + later] = 1.0
    A_draw[rows, L + later - 1] = -r

    A = np.vstack([A_cap, A_level, A_init, A_draw])
    b = np.concatenate([np.full(T, spec.cap), np.zeros(T - 1), [0.0], np.zeros(T - 1)])
    senses = [LE] * T + [LE] * (T - 1) + [EQ] + [LE] * (T - 1)

    upper = np.concatenate([np.full(T, spec.cap), np.full(T, spec.cap), np.full(T, spec.energy)])
    upper[G] = 0.0
    upper[L + T - 1] = 0.0

    c = np.concatenate([-prices, prices, np.zeros(T)])
    names = ["C_h{}".format(k + 1) for k in h] + ["G_h{}".format(k + 1) for k in h] + \
        ["SL_h{}".format(k + 1) for k in h]
    return LpProblem(c=c, A=A, b=b, senses=senses, sense=MAXIMIZE, upper=upper, var_names=names)

def plan_day(forecast: np.ndarray, spec: StorageSpec) -> StoragePlan:
    """Plans the storage schedule of one day against forecast prices

    Hours where the solver returns simultaneous charging and generation are netted,
    which keeps the objective and loosens the level constraints.

    Args:
        forecast (np.ndarray): 24 forecast prices
        spec (StorageSpec): storage plant

    Returns:
        StoragePlan: verified schedule and its planned objective
    """
    prices = np.asarray(forecast, dtype=np.float64).reshape(-1)
    assert prices.size == HOURS, "storage plans need {} prices not {}".format(HOURS, prices.size)
    assert np.all(np.isfinite(prices)), "forecast prices must be finite"

    solution = solve_lp(build_day_problem(prices, spec))
    x = np.maximum(solution.x, 0.0)
    T = prices.size
    charge, generation, level = x[:T].copy(), x[T:2 * T].copy(), x[2 * T:].copy()

    overlap = np.minimum(charge, generation)
    charge -= overlap
    generation -= overlap

    plan = StoragePlan(charge=charge, generation=generation, level=level,
        objective=float(prices @ (generation - charge)))
    verify_plan(plan, spec)

    if np.all(prices > 0):
        waste = wasted_energy(plan, spec)
        if waste.max() > 1e-6 * spec.energy:
            logger.warning("plan drops {:.3g} MWh of stored energy at positive prices".format(waste.sum()))
    return plan

def realized_profit(plan: StoragePlan, actual: np.ndarray) -> float:
    """value of the planned schedule at realized prices

    >>> plan = StoragePlan(charge=[1.0, 0.0], generation=[0.0, 0.9], level=[1.0, 0.0], objective=35.0)
    >>> round(realized_profit(plan, [50.0, 10.0]), 9)
    -41.0
    """
    actual = np.asarray(actual, dtype=np.float64).reshape(-1)
    assert actual.size == plan.hours, "{} realized prices for a {} hour plan".format(actual.size, plan.hours)
    return float(actual @ (plan.generation - plan.charge))

def wasted_energy(plan: StoragePlan, spec: StorageSpec) -> np.ndarray:
    """per hour slack of the level balance, energy that leaves the storage without being sold"""
    a, g, _ = _coefficients(spec)
    previous = np.concatenate([[0.0], plan.level[:-1]])
    return previous + a * plan.charge - g * plan.generation - plan.level

def verify_plan(plan: StoragePlan, spec: StorageSpec, tol: float = 1e-9):
    """Checks every constraint of the daily problem independently of the solver

    Raises:
        PlanInfeasible: naming the first violated constraint and hour
    """
    a, g, r = _coefficients(spec)
    scale = tol * max(1.0, spec.energy)
    C, G, SL = plan.charge, plan.generation, plan.level
    previous = np.concatenate([[0.0], SL[:-1]])

    checks = [
        ("non negative charge", -C),
        ("non negative generation", -G),
        ("non negative level", -SL),
        ("charge plus generation within capacity", C + G - spec.cap),
        ("level within volume", SL - spec.energy),
        ("level balance", SL - (previous + a * C - g * G)),
        ("generation from stored energy", G - r * previous),
    ]
    for name, excess in checks:
        bad = np.flatnonzero(excess > scale)
        if bad.size > 0:
            raise PlanInfeasible("{} violated in hour {} by {:.3g}".format(name, bad[0] + 1, excess[bad[0]]))

    if abs(SL[0] - a * C[0]) > scale:
        raise PlanInfeasible("first hour level {} differs from stored charge {}".format(SL[0], a * C[0]))
    if SL[-1] > scale:
        raise PlanInfeasible("storage is not empty at the end of the day, level {}".format(SL[-1]))
