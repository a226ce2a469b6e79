import io
import json
import math

import numpy as np
import pytest
import torch

import mcpcast as mc
from mcpcast.errors import LengthMismatch, TooFewDays

@pytest.mark.parametrize("api",
    [
        "DayAheadForecast", "MetricsReport", "GWMatrix", "PriceMAE", "metrics", "ensemble_average",
        "gw_matrix", "write_metrics", "write_gw_matrix", "gw_matrix_json", "dump_gw_matrix_json",
        "describe_prices"
    ]
)
def test_api_exists(api):
    assert api in dir(mc.metric), "{} not found in the mcpcast.metric".format(api)

@pytest.mark.parametrize("api", ["mae", "rmse", "smape", "rmae", "daily_abs_errors", "gw_test"])
def test_functional_api_exists(api):
    assert api in dir(mc.metric.functional), "{} not found in the mcpcast.metric.functional".format(api)

PRED = np.array([2.0, 2.0, 2.0, 4.0] * 6)
ACTUAL = np.array([1.0, 2.0, 3.0, 4.0] * 6)
NAIVE = np.zeros(24)

def test_point_metrics():
    report = mc.metric.metrics(PRED, ACTUAL, NAIVE, model="m")
    assert report.mae == 0.5, "MAE must be 0.5 but found {}".format(report.mae)
    assert abs(report.rmse - math.sqrt(0.5)) < 1e-12, "RMSE must be sqrt(0.5) but found {}".format(report.rmse)
    assert abs(report.smape - 80.0 / 3.0) < 1e-9, "sMAPE must be 26.67 but found {}".format(report.smape)
    assert abs(report.rmae - 0.2) < 1e-12, "rMAE must be 0.2 but found {}".format(report.rmae)
    assert report.n_days == 1 and report.model == "m", "unexpected report header {}".format(report)

def test_naive_rmae_is_one():
    naive = np.random.default_rng(0).normal(size=48)
    actual = np.random.default_rng(1).normal(size=48)
    assert abs(mc.metric.functional.rmae(naive, actual, naive) - 1.0) < 1e-12, "naive forecast must score rMAE 1"

def test_smape_of_zero_hours():
    assert mc.metric.functional.smape(np.zeros(24), np.zeros(24)) == 0.0, "hours with zero prices must count as 0"

def test_metrics_length_mismatch():
    with pytest.raises(LengthMismatch):
        mc.metric.functional.mae(np.zeros(24), np.zeros(48))
    with pytest.raises(LengthMismatch):
        mc.metric.functional.mae(np.zeros(10), np.zeros(10))

def test_ensemble_average():
    average = mc.metric.ensemble_average([np.full(24, 10.0), np.full(24, 20.0), np.full(24, 60.0)])
    assert np.allclose(average, 30.0), "ensemble must be the pointwise mean"
    with pytest.raises(LengthMismatch):
        mc.metric.ensemble_average([np.zeros(24), np.zeros(48)])

def _errors(seed: int, n_days: int = 100, scale: float = 1.0) -> np.ndarray:
    return np.random.default_rng(seed).normal(scale=scale, size=(n_days, 24))

def test_gw_detects_better_model():
    result = mc.metric.functional.gw_test(_errors(0, scale=3.0), _errors(1, scale=1.0))
    assert result.mean_diff > 0 and result.better == "B", "model B must be the better one"
    assert result.one_sided < 0.01 and result.p_value < 0.01, "p-values must be small, found {}".format(result)

def test_gw_halved_errors():
    errors_b = np.abs(_errors(3, n_days=200))
    result = mc.metric.functional.gw_test(0.5 * errors_b, errors_b)
    assert result.better == "A" and result.p_value < 0.01, "halved errors must be significantly better, found {}".format(result)

def test_gw_null_rejection_rate():
    rng = np.random.default_rng(2021)
    rejections = 0
    for _ in range(1000):
        errors = rng.normal(size=(2, 200, 24))
        rejections += int(mc.metric.functional.gw_test(errors[0], errors[1]).p_value < 0.05)
    rate = rejections / 1000
    assert 0.03 <= rate <= 0.07, "rejection rate at 5% must stay in [0.03, 0.07] under equal errors, found {}".format(rate)

def test_gw_equal_models():
    errors = _errors(0)
    result = mc.metric.functional.gw_test(errors, errors)
    assert result.degenerate and result.p_value == 1.0, "identical errors must give a degenerate test"
    assert result.sign == 0 and result.better == "none", "identical errors have no better model"

def test_gw_too_few_days():
    with pytest.raises(TooFewDays):
        mc.metric.functional.gw_test(_errors(0, n_days=29), _errors(1, n_days=29))

def test_gw_length_mismatch():
    with pytest.raises(LengthMismatch):
        mc.metric.functional.gw_test(_errors(0, n_days=40), _errors(1, n_days=41))

def test_gw_matrix_orientation():
    errors = {"bad": _errors(0, scale=3.0), "good": _errors(1, scale=1.0), "mid": _errors(2, scale=2.0)}
    matrix = mc.metric.gw_matrix(errors)
    assert matrix.models == ["bad", "good", "mid"], "model order must follow the mapping"
    assert matrix[("bad", "good")] < 0.01, "good forecasts better than bad"
    assert matrix[("good", "bad")] > 0.99, "bad does not forecast better than good"
    assert abs(matrix[("bad", "mid")] + matrix[("mid", "bad")] - 1.0) < 1e-12, "reverse cells must add up to 1"
    assert np.all(np.isnan(np.diag(matrix.pvalues))), "the diagonal is undefined"

def test_gw_matrix_writers():
    matrix = mc.metric.gw_matrix({"a": _errors(0, scale=2.0), "b": _errors(1)})
    buffer = io.StringIO()
    mc.metric.write_gw_matrix(matrix, buffer)
    lines = buffer.getvalue().strip().split("\n")
    assert lines[0] == "model,a,b", "unexpected header {}".format(lines[0])
    assert lines[1].startswith("a,nan,"), "diagonal cells are written as nan, found {}".format(lines[1])

    buffer = io.StringIO()
    mc.metric.dump_gw_matrix_json(matrix, buffer)
    payload = json.loads(buffer.getvalue())
    assert payload["models"] == ["a", "b"] and payload["pvalues"][0][0] is None, "unexpected json {}".format(payload)

def test_write_metrics():
    buffer = io.StringIO()
    mc.metric.write_metrics([mc.metric.metrics(PRED, ACTUAL, NAIVE, model="m")], buffer)
    lines = buffer.getvalue().strip().split("\n")
    assert lines[0] == "model,mae,rmse,smape,rmae,n_days", "unexpected header {}".format(lines[0])
    assert lines[1].startswith("m,0.500000,"), "unexpected row {}".format(lines[1])

def test_price_mae():
    metric = mc.metric.PriceMAE()
    metric.update(torch.tensor([[1.0, 3.0]]), torch.tensor([[2.0, 2.0]]))
    metric.update(torch.tensor([[0.0, 0.0]]), torch.tensor([[4.0, 0.0]]))
    assert abs(float(metric.compute()) - 1.5) < 1e-12, "accumulated MAE must be 1.5 but found {}".format(metric.compute())

def test_describe_prices():
    summary = mc.metric.describe_prices(np.arange(1.0, 6.0))
    assert summary["count"] == 5 and summary["mean"] == 3.0 and summary["median"] == 3.0, \
        "unexpected summary {}".format(summary)
    assert summary["min"] == 1.0 and summary["max"] == 5.0, "unexpected range {}".format(summary)
    assert abs(summary["skewness"]) < 1e-12, "a symmetric series has no skew"
