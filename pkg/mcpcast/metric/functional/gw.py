__all__ = ["GWResult", "gw_test", "loss_differential", "newey_west_variance"]

from dataclasses import dataclass
import logging
import math

import numpy as np
from scipy import stats

from ...dataset.base import HOURS
from ...errors import LengthMismatch, TooFewDays

logger = logging.getLogger("mcpcast.metric")

MIN_DAYS = 30

@dataclass(frozen=True)
class GWResult:
    """Unconditional Giacomini-White test of equal predictive ability.

    `mean_diff` is the mean of loss(A) - loss(B): positive means B forecasts better.
    `p_value` is two sided, `one_sided` tests "B is better than A".
    """
    statistic: float
    p_value: float
    one_sided: float
    mean_diff: float
    n_days: int
    degenerate: bool = False

    @property
    def sign(self) -> int:
        return int(np.sign(self.mean_diff))

    @property
    def better(self) -> str:
        return {1: "B", -1: "A", 0: "none"}[self.sign]


def _daily(errors: np.ndarray) -> np.ndarray:
    errors = np.asarray(errors, dtype=np.float64)
    if errors.ndim == 1:
        if errors.size % HOURS != 0:
            raise LengthMismatch("error series of length {} is not made of whole days".format(errors.size))
        errors = errors.reshape(-1, HOURS)
    return errors

def loss_differential(errors_a: np.ndarray, errors_b: np.ndarray) -> np.ndarray:
    """daily multivariate L1 loss differential, |e_A|_1 - |e_B|_1 over the 24 hours of each day"""
    errors_a, errors_b = _daily(errors_a), _daily(errors_b)
    if errors_a.shape != errors_b.shape:
        raise LengthMismatch("error series cover {} and {} days".format(errors_a.shape[0], errors_b.shape[0]))
    return np.abs(errors_a).sum(axis=1) - np.abs(errors_b).sum(axis=1)

def newey_west_variance(series: np.ndarray, lags: int) -> float:
    """long run variance with Bartlett weights

    >>> newey_west_variance(np.array([1.0, -1.0, 1.0, -1.0]), 0)
    1.0
    """
    u = np.asarray(series, dtype=np.float64) - np.mean(series)
    n = u.size
    variance = float(u @ u) / n
    for lag in range(1, min(lags, n - 1) + 1):
        weight = 1.0 - lag / (lags + 1.0)
        variance += 2.0 * weight * float(u[lag:] @ u[:-lag]) / n
    return variance

def gw_test(errors_a: np.ndarray, errors_b: np.ndarray) -> GWResult:
    """Tests whether two models forecast equally well over the same days

    Args:
        errors_a (np.ndarray): (n_days, 24) or flat hourly errors of model A
        errors_b (np.ndarray): errors of model B on the same hours

    Returns:
        GWResult: statistic, two sided and one sided p-values and the sign of the mean differential
    """
    delta = loss_differential(errors_a, errors_b)
    n = delta.size
    if n < MIN_DAYS:
        raise TooFewDays("GW test needs at least {} days, given {}".format(MIN_DAYS, n))

    mean_diff = float(delta.mean())
    lags = int(math.ceil(n ** (1.0 / 3.0)))
    variance = newey_west_variance(delta, lags)
    scale = float(np.mean(delta ** 2))

    if variance <= 1e-12 * scale or variance <= 0:
        logger.warning("loss differential over {} days has no variance, mean {:.6g}".format(n, mean_diff))
        if mean_diff == 0:
            return GWResult(statistic=0.0, p_value=1.0, one_sided=1.0, mean_diff=0.0, n_days=n, degenerate=True)
        return GWResult(statistic=float("inf"), p_value=0.0, one_sided=0.0 if mean_diff > 0 else 1.0,
            mean_diff=mean_diff, n_days=n, degenerate=True)

    statistic = n * mean_diff ** 2 / variance
    p_value = float(stats.chi2.sf(statistic, df=1))
    one_sided = float(stats.norm.sf(math.copysign(math.sqrt(statistic), mean_diff)))
    return GWResult(statistic=float(statistic), p_value=p_value, one_sided=one_sided,
        mean_diff=mean_diff, n_days=n)
