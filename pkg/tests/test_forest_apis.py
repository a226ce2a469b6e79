import io

import numpy as np
import pytest

import mcpcast as mc
from mcpcast.errors import EmptyData, InsufficientHistory
from mcpcast.forest import TreeParams, ForestParams

from . import utils

@pytest.mark.parametrize("api",
    [
        "TreeParams", "ForestParams", "fit_tree", "fit_forest", "feature_importance", "oob_error",
        "rfe_rf", "series_rows", "write_rfe_trace", "RF_LAGS", "fit_rf", "forecast_rf"
    ]
)
def test_api_exists(api):
    assert api in dir(mc.forest), "{} not found in the mcpcast.forest".format(api)

def test_depth_zero_tree_is_the_mean():
    y = np.array([1.0, 2.0, 6.0])
    tree = mc.forest.fit_tree(np.arange(3.0).reshape(-1, 1), y, TreeParams(max_depth=0))
    assert tree.depth == 0 and tree.n_leaves == 1, "depth 0 tree must be a single leaf"
    assert np.allclose(tree.predict(np.array([[10.0], [-4.0]])), 3.0), "single leaf must predict the mean"

def test_depth_one_tree_finds_the_step():
    X = np.arange(10.0).reshape(-1, 1)
    y = np.where(X[:, 0] < 5, 0.0, 10.0)
    tree = mc.forest.fit_tree(X, y, TreeParams(max_depth=1))
    preds = tree.predict(np.array([[4.0], [4.4], [4.6], [5.0]]))
    assert np.array_equal(preds, [0.0, 0.0, 10.0, 10.0]), "split must sit at the midpoint 4.5, found {}".format(preds)

def test_unlimited_tree_interpolates_training_targets():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(40, 3))
    y = rng.normal(size=40)
    tree = mc.forest.fit_tree(X, y)
    assert np.allclose(tree.predict(X), y), "one sample leaves must reproduce the training targets"

def test_forest_is_the_mean_of_its_trees():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(50, 4))
    Y = rng.normal(size=(50, 3))
    forest = mc.forest.fit_forest(X, Y, ForestParams(n_trees=7), seed=3)
    trees = forest.tree_predictions(X[:5])
    assert trees.shape == (7, 5, 3), "unexpected tree prediction shape {}".format(trees.shape)
    assert np.allclose(forest.predict(X[:5]), trees.mean(axis=0)), "forest must average its trees"

def test_forest_without_bootstrap_interpolates():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(30, 2))
    y = rng.normal(size=30)
    forest = mc.forest.fit_forest(X, y, ForestParams(n_trees=3, max_features=None, bootstrap=False))
    assert np.allclose(forest.predict(X), y), "full trees on all rows must reproduce the targets"

def test_forest_is_seeded():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(40, 5))
    y = X[:, 0] + rng.normal(scale=0.1, size=40)
    params = ForestParams(n_trees=5)
    a = mc.forest.fit_forest(X, y, params, seed=11).predict(X)
    b = mc.forest.fit_forest(X, y, params, seed=11).predict(X)
    assert np.array_equal(a, b), "equal seeds must grow equal forests"

def test_feature_importance():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(200, 3))
    y = 5.0 * X[:, 1] + rng.normal(scale=0.1, size=200)
    forest = mc.forest.fit_forest(X, y, ForestParams(n_trees=10), seed=0)
    ranked = mc.forest.feature_importance(forest, ["a", "b", "c"])
    assert ranked[0][0] == "b", "the signal feature must rank first, ranking {}".format(ranked)
    assert abs(sum(value for _, value in ranked) - 1.0) < 1e-9, "importances must sum to 1"

def test_oob_error():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(60, 2))
    y = X[:, 0]
    forest = mc.forest.fit_forest(X, y, ForestParams(n_trees=20), seed=0)
    error = mc.forest.oob_error(forest, X, y)
    assert np.isfinite(error) and error < np.mean(np.abs(y - y.mean())), "out of bag error must beat the mean"
    full = mc.forest.fit_forest(X, y, ForestParams(n_trees=2, bootstrap=False))
    assert np.isnan(mc.forest.oob_error(full, X, y)), "without out of bag rows the error is undefined"

def test_empty_data():
    with pytest.raises(EmptyData):
        mc.forest.fit_tree(np.zeros((0, 2)), np.zeros(0))

def test_rfe_two_features():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(80, 2))
    y = 3.0 * X[:, 0] + rng.normal(scale=0.1, size=80)
    trace = mc.forest.rfe_rf(X, y, ["signal", "noise"], ForestParams(n_trees=10))
    assert len(trace.steps) == 1, "two features need a single elimination step"
    assert trace.steps[0].dropped == "noise" and trace.survivor == "signal", "noise must be eliminated first"

def test_rfe_ranking():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(150, 4))
    y = 4.0 * X[:, 2] + 1.5 * X[:, 0] + rng.normal(scale=0.1, size=150)
    names = ["x0", "x1", "x2", "x3"]
    trace = mc.forest.rfe_rf(X, y, names, ForestParams(n_trees=10), seed=1)
    assert [step.n_features for step in trace.steps] == [4, 3, 2], "elimination runs down to one feature"
    assert trace.ranking[:2] == ("x2", "x0"), "unexpected ranking {}".format(trace.ranking)
    assert sorted(trace.ranking) == names, "ranking must hold every feature once"

def test_write_rfe_trace():
    trace = mc.forest.RfeTrace(steps=(mc.forest.RfeStep(1, "wind", 2, 1.5),), survivor="load")
    buffer = io.StringIO()
    mc.forest.write_rfe_trace(trace, buffer)
    lines = buffer.getvalue().strip().split("\n")
    assert lines[0] == "step,dropped_feature,n_features,validation_mae", "unexpected header {}".format(lines[0])
    assert lines[1] == "1,wind,2,1.500000", "unexpected row {}".format(lines[1])

def test_series_rows():
    panel = utils.make_panel(n_days=5)
    X, y = mc.forest.series_rows(panel, ["load", "wind"], [1, 2])
    assert X.shape == (48, 2) and y.shape == (48,), "two days give 48 hourly rows"
    assert np.array_equal(y, panel.hourly("price")[24:72]), "targets must be the prices of the same hours"

def test_fit_rf_and_forecast():
    panel = utils.make_panel(n_days=40)
    model = mc.forest.fit_rf(panel, 35, 28, ["load"], ForestParams(n_trees=5), seed=0)
    forecast = mc.forest.forecast_rf(model, panel.masked_at(35), 35)
    assert forecast.prices.shape == (24,) and np.all(np.isfinite(forecast.prices)), "forecast must be 24 finite prices"
    history = panel["price"][7:35]
    assert np.all(forecast.prices >= history.min(axis=0) - 1e-9) and np.all(forecast.prices <= history.max(axis=0) + 1e-9), \
        "forest forecasts stay inside the range of the training targets"

def test_fit_rf_insufficient_history():
    panel = utils.make_panel(n_days=40)
    with pytest.raises(InsufficientHistory):
        mc.forest.fit_rf(panel, 30, 28, ["load"])
