__all__ = ["LarxModel", "fit_larx", "forecast_larx"]

from typing import Sequence, Tuple
from dataclasses import dataclass
import logging

import numpy as np

from .lasso import LassoFit, lasso_fit_many, cross_validate_lambda
from ..dataset.base import HourlyPanel, HOURS, PRICE, FUNDAMENTALS, DayLike
from ..dataset.features import larx_design
from ..errors import InsufficientHistory, LeakageError
from ..metric.forecast import DayAheadForecast

logger = logging.getLogger("mcpcast.linear")

@dataclass(frozen=True)
class LarxModel:
    """Per hour lasso autoregressions on the hour's fundamentals and the previous day's prices"""
    fits: Tuple[LassoFit, ...]
    window_days: int
    exo_names: Tuple[str, ...]
    columns: Tuple[Tuple[str, ...], ...]

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([fit.lam for fit in self.fits])


def fit_larx(panel: HourlyPanel, day: DayLike, window_days: int,
        exo_names: Sequence[str] = FUNDAMENTALS, folds: int = 5, n_grid: int = 20,
        tol: float = 1e-5, max_iter: int = 10000) -> LarxModel:
    """Calibrates 24 LARX regressions on the `window_days` days before `day`

    Args:
        panel (HourlyPanel): market panel
        day (DayLike): first delivery day the model forecasts
        window_days (int): calibration window length
        exo_names (Sequence[str], optional): fundamentals entering at (d, h). Defaults to the six fundamentals.

    Returns:
        LarxModel: calibrated model
    """
    assert window_days >= 2, "calibration window must span at least 2 days not {}".format(window_days)
    d = panel.day_index(day)
    start = d - window_days
    if start < 1:
        raise InsufficientHistory("a {} day LARX window before {} starts before the panel".format(
            window_days, panel.date_of(d)))
    if d > panel.n_days:
        raise InsufficientHistory("window before {} ends after the panel ({})".format(
            panel.date_of(d), panel.dates[-1]))

    days = np.arange(start, d)
    prices = panel[PRICE][days]
    if not np.all(np.isfinite(prices)):
        raise LeakageError("prices of the calibration window before {} are not available".format(panel.date_of(d)))

    fits = []
    columns = []
    for hour in range(HOURS):
        X, names = larx_design(panel, exo_names, hour, days)
        lam = cross_validate_lambda(X, prices[:, hour], k=folds, n_grid=n_grid, tol=tol, max_iter=max_iter)
        fits.extend(lasso_fit_many(X, prices[:, hour], lam, tol=tol, max_iter=max_iter))
        columns.append(names)

    logger.debug("LARX window {} before {}: penalties {}".format(
        window_days, panel.date_of(d), np.round([fit.lam for fit in fits], 4).tolist()))
    return LarxModel(fits=tuple(fits), window_days=int(window_days),
        exo_names=tuple(exo_names), columns=tuple(columns))

def forecast_larx(model: LarxModel, panel: HourlyPanel, day: DayLike, name: str = "larx") -> DayAheadForecast:
    d = panel.day_index(day)
    prices = np.empty(HOURS)
    for hour, fit in enumerate(model.fits):
        X, _ = larx_design(panel, model.exo_names, hour, [d])
        prices[hour] = fit.predict(X)[0]
    return DayAheadForecast(model=name, day=panel.date_of(d), prices=prices)
