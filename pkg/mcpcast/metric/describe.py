__all__ = ["describe_prices"]

from typing import Dict

import numpy as np
from scipy import stats

def describe_prices(series: np.ndarray) -> Dict[str, float]:
    """Descriptive statistics of a price series

    Kurtosis is the excess kurtosis, so a gaussian series scores near 0.

    Args:
        series (np.ndarray): prices, any shape

    Returns:
        Dict[str, float]: count, mean, std, min, q25, median, q75, max, kurtosis, skewness, jarque_bera, jb_pvalue
    """
    values = np.asarray(series, dtype=np.float64).reshape(-1)
    assert values.size >= 2, "at least 2 values are required to describe a series"
    assert np.all(np.isfinite(values)), "series must be finite"

    summary = stats.describe(values)
    q25, median, q75 = np.percentile(values, [25, 50, 75])
    jb = stats.jarque_bera(values)
    return {
        "count": float(summary.nobs),
        "mean": float(summary.mean),
        "std": float(np.sqrt(summary.variance)),
        "min": float(summary.minmax[0]),
        "q25": float(q25),
        "median": float(median),
        "q75": float(q75),
        "max": float(summary.minmax[1]),
        "kurtosis": float(summary.kurtosis),
        "skewness": float(summary.skewness),
        "jarque_bera": float(jb.statistic),
        "jb_pvalue": float(jb.pvalue)
    }
