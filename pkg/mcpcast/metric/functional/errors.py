__all__ = ["mae", "rmse", "smape", "rmae", "daily_abs_errors"]

import logging
import numpy as np

from ...dataset.base import HOURS
from ...errors import LengthMismatch

logger = logging.getLogger("mcpcast.metric")

def _aligned(*series: np.ndarray):
    arrays = [np.asarray(s, dtype=np.float64).reshape(-1) for s in series]
    sizes = {a.size for a in arrays}
    if len(sizes) != 1:
        raise LengthMismatch("series lengths differ: {}".format([a.size for a in arrays]))
    size = sizes.pop()
    if size == 0 or size % HOURS != 0:
        raise LengthMismatch("series length {} is not a positive multiple of {}".format(size, HOURS))
    return arrays

def mae(pred: np.ndarray, actual: np.ndarray) -> float:
    """mean absolute error

    >>> mae([2, 2, 2, 4] * 6, [1, 2, 3, 4] * 6)
    0.5
    """
    pred, actual = _aligned(pred, actual)
    return float(np.mean(np.abs(actual - pred)))

def rmse(pred: np.ndarray, actual: np.ndarray) -> float:
    pred, actual = _aligned(pred, actual)
    return float(np.sqrt(np.mean((actual - pred) ** 2)))

def smape(pred: np.ndarray, actual: np.ndarray) -> float:
    """symmetric mean absolute percentage error in percent, hours with |p| + |p̂| = 0 count as 0"""
    pred, actual = _aligned(pred, actual)
    denom = np.abs(actual) + np.abs(pred)
    terms = np.divide(2.0 * np.abs(actual - pred), denom, out=np.zeros_like(denom), where=denom > 0)
    return float(100.0 * np.mean(terms))

def rmae(pred: np.ndarray, actual: np.ndarray, naive: np.ndarray) -> float:
    """MAE relative to the MAE of the naive forecast, nan when the naive forecast is perfect"""
    pred, actual, naive = _aligned(pred, actual, naive)
    naive_mae = float(np.mean(np.abs(actual - naive)))
    if naive_mae == 0:
        logger.warning("naive forecast has zero MAE, rMAE is undefined")
        return float("nan")
    return float(np.mean(np.abs(actual - pred))) / naive_mae

def daily_abs_errors(pred: np.ndarray, actual: np.ndarray) -> np.ndarray:
    """(n_days, 24) absolute errors"""
    pred, actual = _aligned(pred, actual)
    return np.abs(actual - pred).reshape(-1, HOURS)
