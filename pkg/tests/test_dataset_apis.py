import io

import numpy as np
import pytest

import mcpcast as mc
from mcpcast.errors import (
    InsufficientHistory,
    InvalidConfig,
    LeakageError,
    MissingColumn,
    MissingRegressor,
    NonContiguousHours,
    UnparseableValue,
    UnknownSeries
)

from . import utils

@pytest.mark.parametrize("api",
    [
        "HourlyPanel", "load_panel", "write_panel", "SplitSpec", "LagSpec",
        "day_design", "build_feature_matrix", "larx_design", "naive_forecast",
        "SynthConfig", "synth_market"
    ]
)
def test_api_exists(api):
    assert api in dir(mc.dataset), "{} not found in the mcpcast.dataset".format(api)

def _csv(n_days: int = 2, drop_row: int = None, columns=("price", "load")) -> bytes:
    lines = ["timestamp," + ",".join(columns)]
    for d in range(n_days):
        for h in range(24):
            lines.append("2021-01-{:02d}T{:02d},".format(4 + d, h) + ",".join(
                str(float(d * 24 + h + k)) for k in range(len(columns))))
    if drop_row is not None:
        del lines[drop_row]
    return ("\n".join(lines) + "\n").encode("utf-8")

def test_load_panel():
    panel = mc.dataset.load_panel(_csv(), required=["price", "load"])
    assert panel.n_days == 2, "expected 2 days but found {}".format(panel.n_days)
    assert panel["price"].shape == (2, 24), "price must be (2, 24) but found {}".format(panel["price"].shape)
    assert panel["load"][1, 0] == 25.0, "load of day 1 hour 0 must be 25.0"

def test_load_panel_missing_hour():
    with pytest.raises(NonContiguousHours):
        mc.dataset.load_panel(_csv(drop_row=6), required=["price", "load"])

def test_load_panel_missing_column():
    with pytest.raises(MissingColumn):
        mc.dataset.load_panel(_csv(columns=("price",)), required=["price", "load"])

def test_load_panel_unparseable_cell():
    raw = _csv().decode("utf-8").replace("2021-01-04T03,3.0", "2021-01-04T03,abc")
    with pytest.raises(UnparseableValue) as e:
        mc.dataset.load_panel(raw.encode("utf-8"), required=["price", "load"])
    assert "5" in str(e.value), "error must name file line 5 but found: {}".format(e.value)

def test_load_panel_unsorted_rows():
    lines = _csv().decode("utf-8").strip().split("\n")
    shuffled = [lines[0]] + lines[1:][::-1]
    panel = mc.dataset.load_panel(("\n".join(shuffled) + "\n").encode("utf-8"), required=["price", "load"])
    assert panel["price"][0, 0] == 0.0, "rows must be sorted by timestamp"

def test_panel_write_load():
    panel = utils.make_panel(n_days=3)
    buffer = io.StringIO()
    mc.dataset.write_panel(panel, buffer)
    loaded = mc.dataset.load_panel(buffer.getvalue().encode("utf-8"), required=["price", "load", "wind"])
    for name in ("price", "load", "wind"):
        assert np.array_equal(loaded[name], panel[name]), "series `{}` changed on write and load".format(name)

def test_panel_unknown_series():
    panel = utils.make_panel(n_days=2)
    with pytest.raises(UnknownSeries):
        panel["gas"]

def test_panel_non_consecutive_days():
    with pytest.raises(NonContiguousHours):
        mc.dataset.HourlyPanel(["2021-01-04", "2021-01-06"], {"price": np.zeros(48)})

def test_panel_is_read_only():
    panel = utils.make_panel(n_days=2)
    with pytest.raises(ValueError):
        panel["price"][0, 0] = 1.0

def test_masked_at():
    panel = utils.make_panel(n_days=10)
    masked = panel.masked_at(5)
    assert np.all(np.isnan(masked["price"][5:])), "prices of the delivery day must be hidden"
    assert np.all(np.isfinite(masked["price"][:5])), "prices before the delivery day must be known"
    assert np.all(np.isfinite(masked["load"][:6])), "exogenous series of the delivery day must be known"
    assert np.all(np.isnan(masked["load"][6:])), "exogenous series after the delivery day must be hidden"

@pytest.mark.parametrize("exo_names, n_columns",
    [
        ([], 4 * 24 + 7),
        (["load"], 4 * 24 + 3 * 24 + 7),
        (["load", "wind"], 4 * 24 + 6 * 24 + 7)
    ]
)
def test_feature_layout(exo_names, n_columns: int):
    columns, blocks = mc.dataset.feature_layout(exo_names)
    assert len(columns) == n_columns, "expected {} columns but found {}".format(n_columns, len(columns))
    assert blocks[-1].stop == n_columns, "blocks must cover every column"

def test_day_design_values():
    panel = utils.make_panel(n_days=20)
    design = mc.dataset.day_design(panel, ["load"], days=[10])
    X = design.X[0]
    block = {b.name: b for b in design.blocks}
    assert np.array_equal(X[block["price_d-1"].slice], panel["price"][9]), "price_d-1 block mismatch"
    assert np.array_equal(X[block["price_d-7"].slice], panel["price"][3]), "price_d-7 block mismatch"
    assert np.array_equal(X[block["load_d"].slice], panel["load"][10]), "load_d block mismatch"
    assert np.array_equal(X[block["load_d-7"].slice], panel["load"][3]), "load_d-7 block mismatch"

def test_day_design_weekday_dummies():
    panel = utils.make_panel(n_days=21)
    design = mc.dataset.day_design(panel, ["load"])
    dow = design.X[:, [b for b in design.blocks if b.name == "dow"][0].slice]
    assert np.all(dow.sum(axis=1) == 1), "exactly one weekday dummy must be set per row"
    # 2021-01-04 is a monday, day index 7 is the next monday
    assert dow[0, 0] == 1.0, "first design day must be a monday"

def test_day_design_insufficient_history():
    panel = utils.make_panel(n_days=20)
    with pytest.raises(InsufficientHistory):
        mc.dataset.day_design(panel, ["load"], days=[3])

def test_day_design_beyond_panel():
    panel = utils.make_panel(n_days=20)
    with pytest.raises(MissingRegressor):
        mc.dataset.day_design(panel, ["load"], days=[20])

def test_day_design_leakage():
    panel = utils.make_panel(n_days=20).masked_at(10)
    with pytest.raises(LeakageError):
        mc.dataset.day_design(panel, ["load"], days=[11])

def test_day_design_masked_delivery_day():
    panel = utils.make_panel(n_days=20)
    masked = panel.masked_at(10)
    design = mc.dataset.day_design(masked, ["load"], days=[10])
    expected = mc.dataset.day_design(panel, ["load"], days=[10])
    assert np.array_equal(design.X, expected.X), "masking must not change the regressors of the delivery day"

def test_build_feature_matrix():
    panel = utils.make_panel(n_days=20)
    fm = mc.dataset.build_feature_matrix(panel, ["load"])
    assert fm.shape[0] == (20 - 7) * 24, "expected one row per day and hour but found {}".format(fm.shape[0])
    assert fm.y[0] == panel["price"][7, 0], "first target must be the price of day 7 hour 0"

def test_larx_design():
    panel = utils.make_panel(n_days=5)
    X, columns = mc.dataset.larx_design(panel, ["load"], 5, days=[3])
    assert X.shape == (1, 25), "larx row must hold 1 exogenous and 24 price values not {}".format(X.shape)
    assert X[0, 0] == panel["load"][3, 5], "first larx regressor must be the load of the target hour"
    assert np.array_equal(X[0, 1:], panel["price"][2]), "larx prices must be those of the previous day"
    assert columns[0] == "load_d_h05", "unexpected first column {}".format(columns[0])

def test_naive_forecast():
    panel = utils.make_panel(n_days=10)
    assert np.array_equal(mc.dataset.naive_forecast(panel, 8), panel["price"][1]), \
        "naive forecast must repeat the prices of one week earlier"
    with pytest.raises(InsufficientHistory):
        mc.dataset.naive_forecast(panel, 6)

def test_split_spec():
    split = mc.dataset.SplitSpec.from_panel(400, 60, validation_weeks=42, scale=0.25)
    assert split.train == (0, 266) and split.validation == (266, 340) and split.test == (340, 400), \
        "unexpected split {}".format(split)
    assert list(split.days("test"))[0] == 340, "test days must start at 340"

def test_split_spec_overlap():
    with pytest.raises(InvalidConfig):
        mc.dataset.SplitSpec(train=(0, 10), validation=(5, 20), test=(20, 30))

def test_synth_market():
    panel, fleet = utils.synth_panel(n_days=14, seed=3)
    for name in ("price", "mcp", "load", "wind", "solar", "gas", "coal", "co2"):
        assert name in panel, "synthetic panel must contain `{}`".format(name)
        assert np.all(np.isfinite(panel[name])), "synthetic `{}` must be finite".format(name)
    assert fleet.n_units == 8, "default synthetic fleet has 8 units"

def test_synth_market_is_seeded():
    a, _ = utils.synth_panel(n_days=10, seed=7)
    b, _ = utils.synth_panel(n_days=10, seed=7)
    c, _ = utils.synth_panel(n_days=10, seed=8)
    assert np.array_equal(a["price"], b["price"]), "equal seeds must give equal markets"
    assert not np.array_equal(a["price"], c["price"]), "different seeds must give different markets"

def test_synth_market_without_noise():
    config = mc.dataset.SynthConfig(n_days=10, noise=0.0)
    panel, _ = mc.dataset.synth_market(config, 0)
    expected = panel["mcp"] + mc.dataset.seasonal_component(config, panel.weekdays())
    assert np.allclose(panel["price"], expected, rtol=0, atol=1e-12), \
        "noise free price must equal the clearing price plus the seasonal component"
