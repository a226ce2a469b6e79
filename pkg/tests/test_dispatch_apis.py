import io

import numpy as np
import pytest
import yaml

import mcpcast as mc
from mcpcast.dispatch import Unit, PumpedStorage, FleetSpec
from mcpcast.errors import InconsistentWindow, InvalidFleet

from . import utils

@pytest.mark.parametrize("api",
    [
        "Unit", "PumpedStorage", "FleetSpec", "load_fleet",
        "clear_window", "rolling_mcp", "merit_order_price", "merit_order_prices", "write_mcp"
    ]
)
def test_api_exists(api):
    assert api in dir(mc.dispatch), "{} not found in the mcpcast.dispatch".format(api)

def _two_units() -> FleetSpec:
    return FleetSpec(units=(Unit("a", 20.0, 50.0), Unit("b", 40.0, 50.0)))

def test_clear_window_two_units():
    result = mc.dispatch.clear_window(_two_units(), np.full(24, 70.0))
    assert np.allclose(result.mcp, 40.0), "clearing price must be 40 but found {}".format(result.mcp)
    assert np.allclose(result.generation, [[50.0, 20.0]] * 24), "dispatch must be (50, 20) every hour"
    assert np.allclose(result.shedding, 0.0) and np.allclose(result.curtailment, 0.0), \
        "no shedding nor curtailment expected"

def test_clear_window_shedding():
    result = mc.dispatch.clear_window(_two_units(), np.full(24, 120.0))
    assert np.allclose(result.mcp, 3000.0), "shedding hours must be priced at the shedding cost"
    assert np.allclose(result.shedding, 20.0), "20 MWh must be shed every hour"

def test_clear_window_curtailment():
    fleet = _two_units().with_profiles(wind=np.full(24, 100.0))
    result = mc.dispatch.clear_window(fleet, np.full(24, 60.0))
    assert np.allclose(result.mcp, -20.0), "curtailment hours must be priced at minus the curtailment cost"
    assert np.allclose(result.curtailment, 40.0), "40 MWh must be curtailed every hour"

def test_clear_window_short_window():
    with pytest.raises(InconsistentWindow):
        mc.dispatch.clear_window(_two_units(), np.full(24, 70.0), window=(0, 12))

def test_clear_window_uncovered_window():
    with pytest.raises(InconsistentWindow):
        mc.dispatch.clear_window(_two_units(), np.full(24, 70.0), window=(0, 48))

def test_fleet_cost_ordering():
    with pytest.raises(InvalidFleet):
        FleetSpec(units=(Unit("a", 4000.0, 50.0),))

def test_unit_fuel_cost():
    fleet = FleetSpec(units=(Unit("g", 2.0, 10.0, fuel="gas", efficiency=0.5, emission_factor=0.4),))
    fleet = fleet.with_profiles(fuels={"gas": np.full(24, 20.0), "co2": np.full(24, 25.0)})
    costs = fleet.unit_costs(np.arange(24))
    assert np.allclose(costs, 2.0 + 20.0 / 0.5 + 25.0 * 0.4), "unexpected hourly unit cost {}".format(costs[0])

@pytest.mark.parametrize("net_load, price",
    [
        (70.0, 40.0),
        (30.0, 20.0),
        (0.0, 20.0),
        (-10.0, -20.0),
        (120.0, 3000.0)
    ]
)
def test_merit_order_price(net_load: float, price: float):
    assert mc.dispatch.merit_order_price(_two_units(), net_load) == price, \
        "merit order price of {} must be {}".format(net_load, price)

def _random_fleet(rng: np.random.Generator):
    n_units = int(rng.integers(1, 6))
    costs = rng.uniform(1.0, 100.0, size=n_units).round(2)
    capacities = rng.uniform(10.0, 100.0, size=n_units).round(1)
    fleet = FleetSpec(units=tuple(Unit("u{}".format(k), float(costs[k]), float(capacities[k]))
        for k in range(n_units)))
    return fleet, costs, capacities

def _away_from_kinks(demand: np.ndarray, capacities: np.ndarray, costs: np.ndarray, margin: float) -> np.ndarray:
    # the dual is not unique where the net load fills a unit exactly
    kinks = np.cumsum(capacities[np.argsort(costs, kind="stable")])
    return np.array([d if np.min(np.abs(kinks - d)) > margin else d + 2 * margin for d in demand])

@pytest.mark.parametrize("seed", list(range(100)))
def test_clear_window_matches_merit_order(seed: int):
    rng = np.random.default_rng(seed)
    fleet, costs, capacities = _random_fleet(rng)
    demand = _away_from_kinks(rng.uniform(0.0, 1.1 * capacities.sum(), size=24), capacities, costs, 1e-3)

    result = mc.dispatch.clear_window(fleet, demand)
    expected = [utils.stack_walk(costs, capacities, d) for d in demand]
    assert np.allclose(result.mcp, expected, atol=1e-6), \
        "clearing prices {} must equal the stack walk {}".format(result.mcp, expected)
    for d in demand:
        assert mc.dispatch.merit_order_price(fleet, d) == utils.stack_walk(costs, capacities, d), \
            "merit order price of {} does not match the stack walk".format(d)

@pytest.mark.parametrize("seed", list(range(10)))
def test_clearing_price_is_the_marginal_cost(seed: int):
    rng = np.random.default_rng(100 + seed)
    fleet, costs, capacities = _random_fleet(rng)
    step = 0.1
    demand = _away_from_kinks(rng.uniform(1.0, 1.1 * capacities.sum(), size=24), capacities, costs, 5 * step)
    result = mc.dispatch.clear_window(fleet, demand)
    for hour in (0, 11, 23):
        up, down = demand.copy(), demand.copy()
        up[hour] += step
        down[hour] -= step
        slope = (mc.dispatch.clear_window(fleet, up).objective - mc.dispatch.clear_window(fleet, down).objective) / (2 * step)
        assert abs(slope - result.mcp[hour]) <= 1e-4 * abs(result.mcp[hour]), \
            "cost slope {} of hour {} must equal the clearing price {}".format(slope, hour, result.mcp[hour])

def test_rolling_mcp_without_storage_equals_merit_order():
    panel, fleet = utils.synth_panel(n_days=4, seed=1)
    rolled = mc.dispatch.rolling_mcp(fleet, panel, window_hours=36, keep_hours=24)
    hourly = mc.dispatch.merit_order_prices(fleet, panel)
    assert rolled.shape == (4, 24), "rolling prices must be (4, 24) but found {}".format(rolled.shape)
    assert np.allclose(rolled, hourly, atol=1e-6), "storage free rolling prices must equal merit order prices"

def test_rolling_mcp_invalid_window():
    panel, fleet = utils.synth_panel(n_days=2, seed=1)
    with pytest.raises(InconsistentWindow):
        mc.dispatch.rolling_mcp(fleet, panel, window_hours=24, keep_hours=36)

def test_storage_flattens_prices():
    # cheap night, expensive day: the pump stores night energy and sells it at peak
    fleet = FleetSpec(units=(Unit("base", 10.0, 60.0), Unit("peak", 80.0, 100.0)),
        storage=PumpedStorage(power=20.0, energy_power_factor=4.0, efficiency=0.75))
    demand = np.concatenate([np.full(12, 40.0), np.full(12, 100.0)])
    result = mc.dispatch.clear_window(fleet, demand)
    assert result.level is not None, "storage fleet must report levels"
    assert np.all(result.level <= 80.0 + 1e-9) and np.all(result.level >= -1e-9), "level must stay in [0, 80]"
    assert result.discharge[12:].sum() > 0, "storage must discharge at peak hours"
    free = mc.dispatch.clear_window(fleet.without_storage(), demand)
    assert result.objective < free.objective, "storage must lower the dispatch cost"

def test_fleet_yaml_round_trip(tmp_path):
    fleet = FleetSpec(units=(Unit("a", 20.0, 50.0), Unit("g", 2.0, 30.0, fuel="gas", efficiency=0.5)),
        storage=PumpedStorage(power=10.0))
    path = tmp_path / "fleet.yaml"
    with open(path, "w") as foo:
        yaml.dump({"fleet": fleet.to_dict()}, foo)
    loaded = mc.dispatch.load_fleet(str(path))
    assert loaded.to_dict() == fleet.to_dict(), "fleet changed on write and load"

def test_write_mcp():
    buffer = io.StringIO()
    dates = np.array(["2021-01-04"], dtype="datetime64[D]")
    mc.dispatch.write_mcp(dates, np.full((1, 24), 40.0), buffer)
    lines = buffer.getvalue().strip().split("\n")
    assert lines[0] == "timestamp,mcp", "unexpected header {}".format(lines[0])
    assert lines[1] == "2021-01-04T00,40.0", "unexpected first row {}".format(lines[1])
    assert len(lines) == 25, "expected 24 rows and a header"
