__all__ = [
    "LagSpec", "Block", "DayDesign", "FeatureMatrix", "WEEKDAYS",
    "feature_layout", "day_design", "build_feature_matrix",
    "larx_layout", "larx_design", "naive_forecast"
]

from typing import List, Optional, Sequence, Tuple
from dataclasses import dataclass
import logging

import numpy as np

from .base import HourlyPanel, HOURS, PRICE, DayLike
from ..errors import (
    InsufficientHistory,
    LeakageError,
    MissingRegressor,
    TooShortPanel
)

logger = logging.getLogger("mcpcast.dataset")

WEEKDAYS = ("mon", "tue", "wed", "thu", "fri", "sat", "sun")

@dataclass(frozen=True)
class LagSpec:
    """Lag layout of the daily regressor row.

    Prices enter at days d - lag for every `price_lags` entry, exogenous series at
    days d - lag for every `exo_lags` entry (0 is the delivery day itself, known
    day-ahead), each block holding all 24 hours.
    """
    price_lags: Tuple[int, ...] = (1, 2, 3, 7)
    exo_lags: Tuple[int, ...] = (0, 1, 7)
    weekday: bool = True

    def __post_init__(self):
        assert all(lag >= 1 for lag in self.price_lags), "price lags must be at least 1 day"
        assert all(lag >= 0 for lag in self.exo_lags), "exogenous lags must be non negative"

    @property
    def max_lag(self) -> int:
        return max(tuple(self.price_lags) + tuple(self.exo_lags) + (0,))


@dataclass(frozen=True)
class Block:
    """named contiguous column range of a design matrix"""
    name: str
    start: int
    stop: int

    @property
    def slice(self) -> slice:
        return slice(self.start, self.stop)


@dataclass(frozen=True)
class DayDesign:
    X: np.ndarray
    columns: Tuple[str, ...]
    blocks: Tuple[Block, ...]
    days: np.ndarray


@dataclass(frozen=True)
class FeatureMatrix:
    """One row per (day, hour) target with named regressor columns"""
    X: np.ndarray
    y: np.ndarray
    columns: Tuple[str, ...]
    blocks: Tuple[Block, ...]
    days: np.ndarray
    hours: np.ndarray

    @property
    def shape(self) -> Tuple[int, int]:
        return self.X.shape

    def column_index(self, name: str) -> int:
        return self.columns.index(name)

    def block(self, name: str) -> Block:
        for block in self.blocks:
            if block.name == name:
                return block
        raise KeyError("block `{}` not found".format(name))


def _lag_name(series: str, lag: int) -> str:
    return "{}_d".format(series) if lag == 0 else "{}_d-{}".format(series, lag)

def feature_layout(exo_names: Sequence[str], lag_spec: Optional[LagSpec] = None) -> Tuple[Tuple[str, ...], Tuple[Block, ...]]:
    """Column names and blocks of the daily regressor row

    >>> columns, blocks = feature_layout(["load", "wind"])
    >>> len(columns)
    247
    >>> [b.name for b in blocks][:5]
    ['price_d-1', 'price_d-2', 'price_d-3', 'price_d-7', 'load_d']
    """
    lag_spec = LagSpec() if lag_spec is None else lag_spec
    columns: List[str] = []
    blocks: List[Block] = []

    def add_block(name: str, names: List[str]):
        blocks.append(Block(name, len(columns), len(columns) + len(names)))
        columns.extend(names)

    for lag in lag_spec.price_lags:
        name = _lag_name(PRICE, lag)
        add_block(name, ["{}_h{:02d}".format(name, h) for h in range(HOURS)])

    for series in exo_names:
        for lag in lag_spec.exo_lags:
            name = _lag_name(series, lag)
            add_block(name, ["{}_h{:02d}".format(name, h) for h in range(HOURS)])

    if lag_spec.weekday:
        add_block("dow", ["dow_{}".format(day) for day in WEEKDAYS])

    return tuple(columns), tuple(blocks)

def _check_finite(X: np.ndarray, columns: Sequence[str], days: np.ndarray, panel: HourlyPanel):
    bad = ~np.isfinite(X)
    if np.any(bad):
        row, col = np.argwhere(bad)[0]
        raise LeakageError("regressor `{}` for {} is not available at the bid deadline".format(
            columns[col], panel.date_of(days[row])))

def day_design(panel: HourlyPanel, exo_names: Sequence[str], lag_spec: Optional[LagSpec] = None,
        days: Optional[Sequence[DayLike]] = None) -> DayDesign:
    """Builds one regressor row per delivery day; the row is shared by all 24 hourly models

    Args:
        panel (HourlyPanel): source panel
        exo_names (Sequence[str]): exogenous series, in column order
        lag_spec (LagSpec, optional): lag layout. Defaults to LagSpec().
        days (Sequence, optional): delivery days. Defaults to every day with full lag history.

    Returns:
        DayDesign: design matrix with column names and blocks
    """
    lag_spec = LagSpec() if lag_spec is None else lag_spec
    columns, blocks = feature_layout(exo_names, lag_spec)

    if days is None:
        days = np.arange(lag_spec.max_lag, panel.n_days)
    else:
        days = np.array([panel.day_index(day) for day in days], dtype=np.int64)

    if days.size > 0 and days.min() < lag_spec.max_lag:
        raise InsufficientHistory("day {} needs {} days of history".format(
            panel.date_of(days.min()), lag_spec.max_lag))

    lags = list(lag_spec.price_lags) + (list(lag_spec.exo_lags) if exo_names else [])
    last_needed = days.max() - min(lags, default=0) if days.size > 0 else -1
    if last_needed >= panel.n_days:
        raise MissingRegressor("regressors for {} are beyond the end of the panel ({})".format(
            panel.date_of(days.max()), panel.dates[-1]))

    parts = []
    price = panel[PRICE]
    for lag in lag_spec.price_lags:
        parts.append(price[days - lag])
    for series in exo_names:
        values = panel[series]
        for lag in lag_spec.exo_lags:
            parts.append(values[days - lag])
    if lag_spec.weekday:
        weekday = panel.weekdays()[0] + days
        parts.append(np.eye(len(WEEKDAYS))[weekday % 7])

    X = np.concatenate(parts, axis=1) if parts else np.zeros((days.size, 0))
    _check_finite(X, columns, days, panel)
    return DayDesign(X=X, columns=columns, blocks=blocks, days=days)

def build_feature_matrix(panel: HourlyPanel, exo_names: Sequence[str], lag_spec: Optional[LagSpec] = None,
        hour: Optional[int] = None) -> FeatureMatrix:
    """Builds the (day, hour) regression problem

    Args:
        panel (HourlyPanel): source panel
        exo_names (Sequence[str]): exogenous series, mcp enters here like any other series
        lag_spec (LagSpec, optional): lag layout. Defaults to LagSpec().
        hour (int, optional): target hour, if None rows for all 24 hours are stacked day by day

    Returns:
        FeatureMatrix: regressors and price targets of every eligible day
    """
    lag_spec = LagSpec() if lag_spec is None else lag_spec
    assert hour is None or 0 <= hour < HOURS, "hour must be in [0, 24) not {}".format(hour)
    if panel.n_days <= lag_spec.max_lag:
        raise TooShortPanel("panel of {} days is too short for a {} day lag burn-in".format(
            panel.n_days, lag_spec.max_lag))

    design = day_design(panel, exo_names, lag_spec)
    targets = panel[PRICE][design.days]

    if hour is None:
        X = np.repeat(design.X, HOURS, axis=0)
        y = targets.reshape(-1)
        days = np.repeat(design.days, HOURS)
        hours = np.tile(np.arange(HOURS), design.days.size)
    else:
        X = design.X
        y = targets[:, hour].copy()
        days = design.days.copy()
        hours = np.full(design.days.size, hour)

    if not np.all(np.isfinite(y)):
        raise LeakageError("target prices of the requested days are not available")

    return FeatureMatrix(X=X, y=y, columns=design.columns, blocks=design.blocks, days=days, hours=hours)

def larx_layout(exo_names: Sequence[str], hour: int) -> Tuple[str, ...]:
    """
    >>> larx_layout(["load"], 5)[:2]
    ('load_d_h05', 'price_d-1_h00')
    """
    return tuple("{}_d_h{:02d}".format(series, hour) for series in exo_names) + \
        tuple("price_d-1_h{:02d}".format(h) for h in range(HOURS))

def larx_design(panel: HourlyPanel, exo_names: Sequence[str], hour: int,
        days: Sequence[DayLike]) -> Tuple[np.ndarray, Tuple[str, ...]]:
    """Regressors of the hour `hour` autoregression with exogenous inputs: every
    exogenous series at (d, hour) followed by the 24 prices of d - 1.

    Returns:
        Tuple[np.ndarray, Tuple[str, ...]]: (n_days, |exo| + 24) matrix and its column names
    """
    assert 0 <= hour < HOURS, "hour must be in [0, 24) not {}".format(hour)
    days = np.array([panel.day_index(day) for day in days], dtype=np.int64)
    columns = larx_layout(exo_names, hour)
    if days.size == 0:
        return np.zeros((0, len(columns))), columns

    if days.min() < 1:
        raise InsufficientHistory("day {} has no previous day".format(panel.date_of(days.min())))
    if days.max() >= panel.n_days:
        raise MissingRegressor("regressors for {} are beyond the end of the panel ({})".format(
            panel.date_of(days.max()), panel.dates[-1]))

    parts = [panel[series][days, hour][:, None] for series in exo_names]
    parts.append(panel[PRICE][days - 1])
    X = np.concatenate(parts, axis=1)
    _check_finite(X, columns, days, panel)
    return X, columns

def naive_forecast(panel: HourlyPanel, day: DayLike) -> np.ndarray:
    """Same hour one week earlier

    >>> panel = HourlyPanel(np.arange(8).astype("datetime64[D]"), {"price": np.arange(8 * 24) % 24})
    >>> naive_forecast(panel, 7)[:3]
    array([0., 1., 2.])
    """
    d = panel.day_index(day)
    if d - 7 < 0 or d - 7 >= panel.n_days:
        raise InsufficientHistory("naive forecast of {} needs the price of {}".format(
            panel.date_of(d), panel.date_of(d - 7)))
    values = panel[PRICE][d - 7].copy()
    if not np.all(np.isfinite(values)):
        raise LeakageError("price of {} is not available".format(panel.date_of(d - 7)))
    return values
