__all__ = [
    "LearModel", "fit_lear", "forecast_lear",
    "fit_ens_lear", "forecast_ens_lear",
    "save_lear", "load_lear", "DEFAULT_WINDOWS"
]

from typing import IO, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
import io
import logging

import numpy as np
import pandas as pd

from .lasso import LassoFit, lasso_fit_many, cross_validate_lambdas
from ..dataset.base import HourlyPanel, HOURS, PRICE, FUNDAMENTALS, DayLike
from ..dataset.features import LagSpec, day_design, feature_layout
from ..errors import InsufficientHistory, LeakageError, InvalidConfig
from ..metric.forecast import DayAheadForecast

logger = logging.getLogger("mcpcast.linear")

# calibration windows of the four ensemble members, in days
DEFAULT_WINDOWS = (39, 52, 78, 104)

INTERCEPT = "(intercept)"

@dataclass(frozen=True)
class LearModel:
    """24 hourly lasso fits sharing one calibration window and one regressor layout"""
    fits: Tuple[LassoFit, ...]
    window_days: int
    exo_names: Tuple[str, ...]
    lag_spec: LagSpec
    columns: Tuple[str, ...]
    train_start: np.datetime64
    train_stop: np.datetime64

    def __post_init__(self):
        assert len(self.fits) == HOURS, "LEAR needs {} hourly fits not {}".format(HOURS, len(self.fits))
        for fit in self.fits:
            assert fit.coef.size == len(self.columns), \
                "fit has {} coefficients for {} columns".format(fit.coef.size, len(self.columns))

    @property
    def coef(self) -> np.ndarray:
        """(24, p) coefficient matrix"""
        return np.stack([fit.coef for fit in self.fits])

    @property
    def intercepts(self) -> np.ndarray:
        return np.array([fit.intercept for fit in self.fits])

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([fit.lam for fit in self.fits])

    def predict(self, x: np.ndarray) -> np.ndarray:
        """prices of the 24 hours for one daily regressor row"""
        return self.coef @ np.asarray(x, dtype=np.float64) + self.intercepts


def fit_lear(panel: HourlyPanel, day: DayLike, window_days: int, exo_names: Sequence[str],
        lag_spec: Optional[LagSpec] = None, folds: int = 5, n_grid: int = 20,
        tol: float = 1e-5, max_iter: int = 10000) -> LearModel:
    """Calibrates the 24 hourly LEAR regressions on the `window_days` days before `day`

    The 24 hours share their regressor rows, so all of them are solved together;
    each hour still gets its own penalty from cross validation.

    Args:
        panel (HourlyPanel): market panel, prices before `day` must be known
        day (DayLike): first delivery day the model forecasts
        window_days (int): calibration window length
        exo_names (Sequence[str]): exogenous series, `mcp` enters like any other series
        lag_spec (LagSpec, optional): regressor layout. Defaults to LagSpec().
        folds (int, optional): cross validation folds. Defaults to 5.
        n_grid (int, optional): penalty grid size. Defaults to 20.
        tol (float, optional): descent tolerance relative to the price std. Defaults to 1e-5.
        max_iter (int, optional): sweep limit. Defaults to 10000.

    Returns:
        LearModel: calibrated model
    """
    lag_spec = LagSpec() if lag_spec is None else lag_spec
    assert window_days >= 2, "calibration window must span at least 2 days not {}".format(window_days)
    d = panel.day_index(day)
    start = d - window_days
    if start < lag_spec.max_lag:
        raise InsufficientHistory("a {} day window before {} needs {} more days of history".format(
            window_days, panel.date_of(d), lag_spec.max_lag - start))
    if d > panel.n_days:
        raise InsufficientHistory("window before {} ends after the panel ({})".format(
            panel.date_of(d), panel.dates[-1]))

    days = np.arange(start, d)
    design = day_design(panel, exo_names, lag_spec, days=days)
    Y = panel[PRICE][days]
    if not np.all(np.isfinite(Y)):
        raise LeakageError("prices of the calibration window before {} are not available".format(panel.date_of(d)))

    lams = cross_validate_lambdas(design.X, Y, k=folds, n_grid=n_grid, tol=tol, max_iter=max_iter)
    fits = lasso_fit_many(design.X, Y, lams, tol=tol, max_iter=max_iter)

    logger.debug("LEAR window {} before {}: {} nonzero coefficients on average".format(
        window_days, panel.date_of(d), np.mean([fit.n_nonzero for fit in fits])))

    return LearModel(fits=tuple(fits), window_days=int(window_days), exo_names=tuple(exo_names),
        lag_spec=lag_spec, columns=design.columns,
        train_start=panel.date_of(start), train_stop=panel.date_of(d))

def forecast_lear(model: LearModel, panel: HourlyPanel, day: DayLike, name: str = "lear") -> DayAheadForecast:
    """Forecasts the 24 prices of `day` from regressors known at its bid deadline"""
    d = panel.day_index(day)
    design = day_design(panel, model.exo_names, model.lag_spec, days=[d])
    return DayAheadForecast(model=name, day=panel.date_of(d), prices=model.predict(design.X[0]))

def fit_ens_lear(panel: HourlyPanel, day: DayLike, windows: Sequence[int] = DEFAULT_WINDOWS,
        exo_names: Sequence[str] = FUNDAMENTALS, **kwargs) -> List[LearModel]:
    """one LEAR per calibration window in days, all ending the day before `day`"""
    longest = max(windows)
    if panel.day_index(day) - longest < (kwargs.get("lag_spec") or LagSpec()).max_lag:
        raise InsufficientHistory("longest ensemble window of {} days does not fit before {}".format(
            longest, panel.date_of(panel.day_index(day))))
    return [fit_lear(panel, day, window, exo_names, **kwargs) for window in windows]

def forecast_ens_lear(models: Sequence[LearModel], panel: HourlyPanel, day: DayLike,
        name: str = "ens_lear") -> DayAheadForecast:
    """arithmetic mean of the member forecasts"""
    # imported here, the report module pulls in scipy
    from ..metric.report import ensemble_average

    members = [forecast_lear(model, panel, day).prices for model in models]
    d = panel.day_index(day)
    return DayAheadForecast(model=name, day=panel.date_of(d), prices=ensemble_average(members))

def _join(values: Sequence) -> str:
    return ";".join(str(v) for v in values)

def _split(text: str, cast=str) -> Tuple:
    return tuple(cast(v) for v in text.split(";") if v != "")

def save_lear(model: LearModel, stream: Union[str, IO]):
    """Writes the audit text format.

    `#` header lines carry the layout, window and per-hour penalties, followed by
    an `hour,column,coefficient` table with one intercept row per hour and one row
    per nonzero coefficient.
    """
    header = [
        "# mcpcast-lear 1",
        "# window_days: {}".format(model.window_days),
        "# train: {} {}".format(model.train_start, model.train_stop),
        "# exo_names: {}".format(_join(model.exo_names)),
        "# price_lags: {}".format(_join(model.lag_spec.price_lags)),
        "# exo_lags: {}".format(_join(model.lag_spec.exo_lags)),
        "# weekday: {}".format(int(model.lag_spec.weekday)),
        "# lambda: {}".format(_join(repr(float(lam)) for lam in model.lambdas)),
    ]
    rows = []
    for hour, fit in enumerate(model.fits):
        rows.append((hour, INTERCEPT, repr(float(fit.intercept))))
        for j in np.flatnonzero(fit.coef):
            rows.append((hour, model.columns[j], repr(float(fit.coef[j]))))
    frame = pd.DataFrame(rows, columns=["hour", "column", "coefficient"])
    body = frame.to_csv(index=False, lineterminator="\n")
    text = "\n".join(header) + "\n" + body

    if isinstance(stream, str):
        with open(stream, "w", encoding="utf-8") as foo:
            foo.write(text)
    else:
        stream.write(text)

def load_lear(stream: Union[str, IO]) -> LearModel:
    """Reads a model written by `save_lear`"""
    if isinstance(stream, str):
        with open(stream, "r", encoding="utf-8") as foo:
            text = foo.read()
    else:
        text = stream.read()

    lines = text.splitlines()
    header = {}
    for line in lines:
        if not line.startswith("#"):
            break
        key, _, value = line[1:].partition(":")
        header[key.strip()] = value.strip()
    if "window_days" not in header or "lambda" not in header:
        raise InvalidConfig("not a LEAR model file, header lines are missing")

    lag_spec = LagSpec(price_lags=_split(header["price_lags"], int),
        exo_lags=_split(header["exo_lags"], int), weekday=bool(int(header["weekday"])))
    exo_names = _split(header["exo_names"])
    columns, _ = feature_layout(exo_names, lag_spec)
    lambdas = _split(header["lambda"], float)
    train_start, train_stop = header["train"].split()

    body = "\n".join(line for line in lines if not line.startswith("#"))
    frame = pd.read_csv(io.StringIO(body), dtype={"hour": int, "column": str, "coefficient": str})
    coef = np.zeros((HOURS, len(columns)))
    intercepts = np.zeros(HOURS)
    position = {name: j for j, name in enumerate(columns)}
    for hour, column, value in zip(frame["hour"], frame["column"], frame["coefficient"]):
        if column == INTERCEPT:
            intercepts[hour] = float(value)
        elif column in position:
            coef[hour, position[column]] = float(value)
        else:
            raise InvalidConfig("column `{}` of hour {} is not part of the layout".format(column, hour))

    fits = tuple(LassoFit(coef=coef[h], intercept=float(intercepts[h]), lam=float(lambdas[h]))
        for h in range(HOURS))
    return LearModel(fits=fits, window_days=int(header["window_days"]), exo_names=exo_names,
        lag_spec=lag_spec, columns=columns,
        train_start=np.datetime64(train_start, "D"), train_stop=np.datetime64(train_stop, "D"))
