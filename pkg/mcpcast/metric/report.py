__all__ = [
    "MetricsReport", "GWMatrix", "metrics", "ensemble_average",
    "gw_matrix", "write_metrics", "write_gw_matrix", "gw_matrix_json", "dump_gw_matrix_json"
]

from typing import Dict, IO, List, Mapping, Sequence, Union
from dataclasses import dataclass, asdict
import json
import logging

import numpy as np
import pandas as pd

from .functional import mae, rmse, smape, rmae, gw_test
from ..dataset.base import HOURS
from ..errors import LengthMismatch

logger = logging.getLogger("mcpcast.metric")

@dataclass(frozen=True)
class MetricsReport:
    model: str
    mae: float
    rmse: float
    smape: float
    rmae: float
    n_days: int


@dataclass(frozen=True)
class GWMatrix:
    """Pairwise one sided GW p-values.

    Cell (A, B) is the p-value of "B forecasts better than A"; the diagonal is nan.
    """
    models: List[str]
    pvalues: np.ndarray

    def __getitem__(self, pair) -> float:
        row, col = pair
        return float(self.pvalues[self.models.index(row), self.models.index(col)])


def metrics(pred: np.ndarray, actual: np.ndarray, naive: np.ndarray, model: str = "") -> MetricsReport:
    """Accuracy of a forecast series against realized prices

    >>> report = metrics([2, 2, 2, 4] * 6, [1, 2, 3, 4] * 6, [0, 0, 0, 0] * 6)
    >>> report.mae, round(report.smape, 2), report.rmae
    (0.5, 26.67, 0.2)
    """
    return MetricsReport(model=model, mae=mae(pred, actual), rmse=rmse(pred, actual),
        smape=smape(pred, actual), rmae=rmae(pred, actual, naive),
        n_days=int(np.asarray(actual).size // HOURS))

def ensemble_average(forecasts: Sequence[np.ndarray]) -> np.ndarray:
    """pointwise arithmetic mean of aligned forecast series

    >>> ensemble_average([np.array([10.0]), np.array([20.0])])
    array([15.])
    """
    assert len(forecasts) >= 1, "ensemble needs at least one member"
    members = [np.asarray(f, dtype=np.float64) for f in forecasts]
    shapes = {m.shape for m in members}
    if len(shapes) != 1:
        raise LengthMismatch("ensemble members have shapes {}".format([m.shape for m in members]))
    if len(members) == 1:
        return members[0].copy()
    return np.mean(np.stack(members), axis=0)

def gw_matrix(errors: Mapping[str, np.ndarray]) -> GWMatrix:
    """Runs the GW test for every ordered pair of models

    Args:
        errors (Mapping[str, np.ndarray]): model id to its (n_days, 24) error series, iteration order is kept

    Returns:
        GWMatrix: one sided p-values
    """
    models = list(errors.keys())
    assert len(models) >= 2, "at least 2 models are required, given {}".format(len(models))
    pvalues = np.full((len(models), len(models)), np.nan)
    for i, a in enumerate(models):
        for j in range(i + 1, len(models)):
            b = models[j]
            result = gw_test(errors[a], errors[b])
            pvalues[i, j] = result.one_sided
            if result.degenerate:
                pvalues[j, i] = 1.0 if result.mean_diff >= 0 else 0.0
            else:
                # the reverse hypothesis flips the sign of the standardized mean
                pvalues[j, i] = 1.0 - result.one_sided
            logger.debug("GW {} vs {}: p={:.4g}, mean differential {:.4g}".format(a, b, result.p_value, result.mean_diff))
    return GWMatrix(models=models, pvalues=pvalues)

def _write(frame: pd.DataFrame, stream: Union[str, IO], **kwargs):
    frame.to_csv(stream, index=False, lineterminator="\n", **kwargs)

def write_metrics(reports: Sequence[MetricsReport], stream: Union[str, IO]):
    """CSV with one row per model: model,mae,rmse,smape,rmae,n_days"""
    frame = pd.DataFrame([asdict(report) for report in reports],
        columns=["model", "mae", "rmse", "smape", "rmae", "n_days"])
    _write(frame, stream, float_format="%.6f", na_rep="nan")

def write_gw_matrix(matrix: GWMatrix, stream: Union[str, IO]):
    """CSV with a `model` column followed by one column per compared model"""
    frame = pd.DataFrame(matrix.pvalues, columns=matrix.models)
    frame.insert(0, "model", matrix.models)
    _write(frame, stream, float_format="%.6f", na_rep="nan")

def gw_matrix_json(matrix: GWMatrix) -> Dict:
    """plot ready structure, undefined cells are None"""
    return {
        "models": list(matrix.models),
        "hypothesis": "column model forecasts better than row model",
        "pvalues": [[None if np.isnan(v) else round(float(v), 6) for v in row] for row in matrix.pvalues]
    }

def dump_gw_matrix_json(matrix: GWMatrix, stream: Union[str, IO]):
    text = json.dumps(gw_matrix_json(matrix), indent=2, sort_keys=True) + "\n"
    if isinstance(stream, str):
        with open(stream, "w", encoding="utf-8") as foo:
            foo.write(text)
    else:
        stream.write(text)
