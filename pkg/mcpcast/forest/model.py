__all__ = ["RF_LAGS", "RfModel", "fit_rf", "forecast_rf"]

from typing import Optional, Sequence, Tuple
from dataclasses import dataclass
import logging

import numpy as np

from .tree import Forest, ForestParams, fit_forest
from ..dataset.base import HourlyPanel, PRICE, DayLike
from ..dataset.features import LagSpec, day_design
from ..errors import InsufficientHistory, LeakageError
from ..metric.forecast import DayAheadForecast

logger = logging.getLogger("mcpcast.forest")

# prices of d-1 and d-7, exogenous series of the delivery day, weekday dummies
RF_LAGS = LagSpec(price_lags=(1, 7), exo_lags=(0,), weekday=True)

@dataclass(frozen=True)
class RfModel:
    """24 output forest over one daily regressor row"""
    forest: Forest
    window_days: int
    exo_names: Tuple[str, ...]
    columns: Tuple[str, ...]
    lag_spec: LagSpec = RF_LAGS

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.forest.predict(np.asarray(x, dtype=np.float64).reshape(1, -1))[0]


def fit_rf(panel: HourlyPanel, day: DayLike, window_days: int, exo_names: Sequence[str],
        params: Optional[ForestParams] = None, seed: int = 0, lag_spec: LagSpec = RF_LAGS) -> RfModel:
    """Fits the price forest on the `window_days` days before `day`"""
    d = panel.day_index(day)
    start = d - window_days
    if start < lag_spec.max_lag:
        raise InsufficientHistory("a {} day window before {} needs {} more days of history".format(
            window_days, panel.date_of(d), lag_spec.max_lag - start))

    days = np.arange(start, d)
    design = day_design(panel, exo_names, lag_spec, days=days)
    Y = panel[PRICE][days]
    if not np.all(np.isfinite(Y)):
        raise LeakageError("prices of the calibration window before {} are not available".format(panel.date_of(d)))

    forest = fit_forest(design.X, Y, params, seed=seed)
    logger.debug("RF window {} before {} fitted".format(window_days, panel.date_of(d)))
    return RfModel(forest=forest, window_days=int(window_days), exo_names=tuple(exo_names),
        columns=design.columns, lag_spec=lag_spec)

def forecast_rf(model: RfModel, panel: HourlyPanel, day: DayLike, name: str = "rf") -> DayAheadForecast:
    d = panel.day_index(day)
    design = day_design(panel, model.exo_names, model.lag_spec, days=[d])
    return DayAheadForecast(model=name, day=panel.date_of(d), prices=model.predict(design.X[0]))
