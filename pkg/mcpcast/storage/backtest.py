__all__ = ["StorageResult", "backtest_storage", "write_storage_report", "PERFECT"]

from typing import Dict, IO, List, Mapping, Optional, Sequence, Union
from dataclasses import dataclass
import logging

import numpy as np
import pandas as pd

from .spec import StorageSpec
from .planning import plan_day, realized_profit
from ..dataset.base import HOURS
from ..errors import MisalignedDays
from ..metric.forecast import DayAheadForecast

logger = logging.getLogger("mcpcast.storage")

PERFECT = "perfect"

@dataclass(frozen=True)
class StorageResult:
    """Storage value of one model's forecasts"""
    model: str
    storage: str
    annual_profit: float
    factor: float
    daily_profit: np.ndarray


def _as_days(forecast: Union[np.ndarray, Sequence[DayAheadForecast]], model: str,
        dates: Optional[np.ndarray], n_days: int) -> np.ndarray:
    if len(forecast) > 0 and isinstance(forecast[0], DayAheadForecast):
        if dates is not None:
            got = np.array([f.day for f in forecast], dtype="datetime64[D]")
            if got.size != dates.size or np.any(got != dates):
                raise MisalignedDays("forecasts of `{}` do not cover the actual days".format(model))
        forecast = np.stack([f.prices for f in forecast])
    values = np.asarray(forecast, dtype=np.float64).reshape(-1, HOURS)
    if values.shape[0] != n_days:
        raise MisalignedDays("`{}` has {} forecast days for {} actual days".format(model, values.shape[0], n_days))
    return values

def backtest_storage(forecasts: Mapping[str, Union[np.ndarray, Sequence[DayAheadForecast]]],
        actuals: np.ndarray, spec: StorageSpec, dates: Optional[np.ndarray] = None,
        include_perfect: bool = False) -> List[StorageResult]:
    """Plans every day against each model's forecast and values the plan at realized prices

    Days are independent, the storage is empty at the start and the end of each day.

    Args:
        forecasts (Mapping): model id to (n_days, 24) forecasts or a list of DayAheadForecast
        actuals (np.ndarray): (n_days, 24) realized prices
        spec (StorageSpec): storage plant
        dates (np.ndarray, optional): days of `actuals`, checked against DayAheadForecast days
        include_perfect (bool, optional): append the perfect forecast row. Defaults to False.

    Returns:
        List[StorageResult]: annual profit per MW and profit factor per model, in input order
    """
    actuals = np.asarray(actuals, dtype=np.float64).reshape(-1, HOURS)
    n_days = actuals.shape[0]
    assert n_days >= 1, "at least one day is required"
    if dates is not None:
        dates = np.asarray(dates, dtype="datetime64[D]")
        if dates.size != n_days:
            raise MisalignedDays("{} dates given for {} actual days".format(dates.size, n_days))

    perfect = np.array([realized_profit(plan_day(day, spec), day) for day in actuals])
    perfect_total = float(perfect.sum())

    def summarize(model: str, daily: np.ndarray) -> StorageResult:
        annual = float(daily.sum()) / spec.cap * 365.0 / n_days
        if perfect_total == 0:
            logger.warning("perfect forecast earns nothing with `{}`, factor of `{}` is undefined".format(
                spec.name, model))
            factor = float("nan")
        else:
            factor = float(daily.sum()) / perfect_total
        return StorageResult(model=model, storage=spec.name, annual_profit=annual, factor=factor, daily_profit=daily)

    results = []
    for model, forecast in forecasts.items():
        values = _as_days(forecast, model, dates, n_days)
        daily = np.array([realized_profit(plan_day(values[d], spec), actuals[d]) for d in range(n_days)])
        results.append(summarize(model, daily))
        logger.info("storage `{}` with `{}` forecasts: factor {:.4f}".format(spec.name, model, results[-1].factor))

    if include_perfect:
        results.append(summarize(PERFECT, perfect))
    return results

def write_storage_report(results: Sequence[StorageResult], stream: Union[str, IO]):
    """CSV with one row per (model, storage): model,storage,annual_profit_per_mw,factor"""
    frame = pd.DataFrame([(r.model, r.storage, r.annual_profit, r.factor) for r in results],
        columns=["model", "storage", "annual_profit_per_mw", "factor"])
    frame.to_csv(stream, index=False, lineterminator="\n", float_format="%.6f", na_rep="nan")
