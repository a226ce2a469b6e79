__all__ = [
    "ARMS", "arm_exo", "model_id", "Forecaster", "build_forecaster", "__FORECASTERS__"
]

from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
import dataclasses
import logging
import math

import numpy as np

from . import api
from .dataset.base import HourlyPanel, HOURS, MCP, FUNDAMENTALS, DayLike
from .dataset.features import LagSpec, naive_forecast
from .dataset.split import SplitSpec
from .errors import ConfigError, InsufficientHistory, LeakageError
from .forest import ForestParams, fit_rf, forecast_rf
from .linear import (
    DEFAULT_WINDOWS,
    fit_lear,
    forecast_lear,
    fit_ens_lear,
    forecast_ens_lear,
    fit_larx,
    forecast_larx
)
from .module import PriceForecaster
from .neural import (
    SearchSpace,
    fit_dnn,
    forecast_dnn,
    fit_ens_dnn,
    forecast_ens_dnn,
    lstm_arrays,
    train
)
from .utils.random import derive_seed

logger = logging.getLogger("mcpcast.backtest")

ARMS = ("fundamentals", "mcp-only", "fundamentals+mcp")

def arm_exo(arm: str, fundamentals: Sequence[str] = FUNDAMENTALS) -> Tuple[str, ...]:
    """Exogenous series of a regressor arm

    >>> arm_exo("fundamentals+mcp", ["load", "wind"])
    ('load', 'wind', 'mcp')
    """
    assert arm in ARMS, "arm must be one of {} not {}".format(ARMS, arm)
    if arm == "fundamentals":
        return tuple(fundamentals)
    if arm == "mcp-only":
        return (MCP,)
    return tuple(fundamentals) + (MCP,)

def model_id(name: str, arm: str) -> str:
    """Report id of a model trained on a regressor arm

    >>> model_id("lear", "fundamentals"), model_id("lear", "mcp-only"), model_id("lear", "fundamentals+mcp")
    ('lear', 'esm-lear', 'esm-lear+')
    >>> model_id("naive", "mcp-only")
    'naive'
    """
    assert arm in ARMS, "arm must be one of {} not {}".format(ARMS, arm)
    if name in ("naive", "esm") or arm == "fundamentals":
        return name
    if arm == "mcp-only":
        return "esm-" + name
    return "esm-" + name + "+"

def _lag_spec(config: Optional[Mapping]) -> LagSpec:
    if config is None:
        return LagSpec()
    if isinstance(config, LagSpec):
        return config
    return LagSpec(**{key: tuple(value) if isinstance(value, list) else value for key, value in config.items()})


class Forecaster():
    """Uniform fit/predict adapter used by the backtest.

    `fit(panel, day)` calibrates on information available before `day`;
    `predict(panel, day)` returns its 24 prices. The backtest refits every
    `refit_every` days.
    """
    name: str = ""
    refit_every: int = 1
    exogenous: bool = True

    def __init__(self, exo_names: Sequence[str] = (), seed: int = 0, refit_every: Optional[int] = None):
        self.exo_names = tuple(exo_names)
        self.seed = int(seed)
        if refit_every is not None:
            assert refit_every >= 1, "refit cadence must be at least 1 day not {}".format(refit_every)
            self.refit_every = int(refit_every)
        self.fitted = False

    def fit(self, panel: HourlyPanel, day: DayLike):
        self.fitted = True

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self) -> str:
        return "{}(exo={}, refit_every={})".format(type(self).__name__, list(self.exo_names), self.refit_every)


class Naive(Forecaster):
    """same hour one week earlier"""
    name = "naive"
    exogenous = False

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        return naive_forecast(panel, day)


class Esm(Forecaster):
    """the simulated market clearing price itself"""
    name = "esm"
    exogenous = False

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        d = panel.day_index(day)
        values = panel[MCP][d].copy()
        if not np.all(np.isfinite(values)):
            raise LeakageError("market clearing price of {} is not available".format(panel.date_of(d)))
        return values


class Larx(Forecaster):
    name = "larx"

    def __init__(self, window_days: int = 364, folds: int = 5, n_grid: int = 20, **kwargs):
        super().__init__(**kwargs)
        self.window_days = int(window_days)
        self.folds = folds
        self.n_grid = n_grid
        self.model = None

    def fit(self, panel: HourlyPanel, day: DayLike):
        self.model = fit_larx(panel, day, self.window_days, self.exo_names, folds=self.folds, n_grid=self.n_grid)
        super().fit(panel, day)

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        return forecast_larx(self.model, panel, day).prices


class Lear(Forecaster):
    name = "lear"

    def __init__(self, window_days: int = 364, lag_spec: Optional[Mapping] = None, folds: int = 5,
            n_grid: int = 20, **kwargs):
        super().__init__(**kwargs)
        self.window_days = int(window_days)
        self.lag_spec = _lag_spec(lag_spec)
        self.folds = folds
        self.n_grid = n_grid
        self.model = None

    def fit(self, panel: HourlyPanel, day: DayLike):
        self.model = fit_lear(panel, day, self.window_days, self.exo_names, lag_spec=self.lag_spec,
            folds=self.folds, n_grid=self.n_grid)
        super().fit(panel, day)

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        return forecast_lear(self.model, panel, day).prices


class EnsLear(Forecaster):
    name = "ens_lear"

    def __init__(self, windows: Sequence[int] = DEFAULT_WINDOWS, lag_spec: Optional[Mapping] = None,
            folds: int = 5, n_grid: int = 20, **kwargs):
        super().__init__(**kwargs)
        self.windows = tuple(int(w) for w in windows)
        self.lag_spec = _lag_spec(lag_spec)
        self.folds = folds
        self.n_grid = n_grid
        self.models = []

    def fit(self, panel: HourlyPanel, day: DayLike):
        self.models = fit_ens_lear(panel, day, self.windows, self.exo_names, lag_spec=self.lag_spec,
            folds=self.folds, n_grid=self.n_grid)
        super().fit(panel, day)

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        return forecast_ens_lear(self.models, panel, day).prices


class Dnn(Forecaster):
    """Searches the hyperparameters once, then recalibrates the weights with them fixed"""
    name = "dnn"
    n_members = 1

    def __init__(self, window_days: int = 364, validation_days: int = 56, space: Optional[Mapping] = None,
            feature_flags: bool = True, budget: int = 4, epochs: int = 100, patience: int = 10,
            batch_size: int = 32, lag_spec: Optional[Mapping] = None, **kwargs):
        super().__init__(**kwargs)
        self.window_days = int(window_days)
        self.validation_days = int(validation_days)
        self.lag_spec = _lag_spec(lag_spec)
        self.space = SearchSpace.from_dict(space) if space is not None else SearchSpace()
        if feature_flags and not self.space.flags:
            self.space = dataclasses.replace(self.space, flags=SearchSpace.for_exo(self.exo_names, self.lag_spec).flags)
        self.budget = int(budget)
        self.epochs = int(epochs)
        self.patience = int(patience)
        self.batch_size = int(batch_size)
        self.members = []

    def _split(self, panel: HourlyPanel, day: DayLike) -> SplitSpec:
        d = panel.day_index(day)
        val_start = d - self.validation_days
        train_start = max(val_start - self.window_days, self.lag_spec.max_lag)
        if val_start - train_start < 1:
            raise InsufficientHistory("no training days before the {} validation days preceding {}".format(
                self.validation_days, panel.date_of(d)))
        return SplitSpec(train=(train_start, val_start), validation=(val_start, d), test=(d, d + 1))

    def _seeds(self) -> List[int]:
        return [derive_seed(self.seed, k) for k in range(self.n_members)]

    def fit(self, panel: HourlyPanel, day: DayLike):
        split = self._split(panel, day)
        if not self.members:
            self.members = fit_ens_dnn(panel, split, self.space, self.exo_names, seeds=self._seeds(),
                budget=self.budget, lag_spec=self.lag_spec, epochs=self.epochs, patience=self.patience,
                batch_size=self.batch_size)
        else:
            self.members = [
                fit_dnn(panel, split.days("train"), split.days("validation"), member.spec, self.exo_names,
                    self.lag_spec, epochs=self.epochs, patience=self.patience, batch_size=self.batch_size)
                for member in self.members]
        super().fit(panel, day)

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        if len(self.members) == 1:
            return forecast_dnn(self.members[0], panel, day).prices
        return forecast_ens_dnn(self.members, panel, day).prices


class EnsDnn(Dnn):
    name = "ens_dnn"
    n_members = 4


class Lstm(Forecaster):
    name = "lstm"
    refit_every = 7

    def __init__(self, config: Union[str, Dict] = "default", window_days: int = 364, validation_days: int = 56,
            learning_rate: float = 1e-3, l1: float = 0.0, preprocessing: str = "zscore", epochs: int = 100,
            patience: int = 10, batch_size: int = 32, **kwargs):
        super().__init__(**kwargs)
        self.config = config
        self.window_days = int(window_days)
        self.validation_days = int(validation_days)
        self.hparams = {"learning_rate": float(learning_rate), "l1": float(l1)}
        self.preprocessing = preprocessing
        self.epochs = int(epochs)
        self.patience = int(patience)
        self.batch_size = int(batch_size)
        self.model = None

    @property
    def sequence_length(self) -> int:
        config = self.config if isinstance(self.config, dict) else api.get_arch_config("lstm", self.config)
        return int(config["sequence_length"])

    def fit(self, panel: HourlyPanel, day: DayLike):
        d = panel.day_index(day)
        seq = self.sequence_length
        val_start = d - self.validation_days
        train_start = max(val_start - self.window_days, math.ceil(seq / HOURS))
        if val_start - train_start < 1:
            raise InsufficientHistory("no LSTM training days before the {} validation days preceding {}".format(
                self.validation_days, panel.date_of(d)))

        train_set = lstm_arrays(panel, self.exo_names, range(train_start, val_start), seq)
        validation_set = lstm_arrays(panel, self.exo_names, range(val_start, d), seq)
        model = PriceForecaster.build("lstm", self.config, preprocess={"inputs": self.preprocessing},
            hparams=self.hparams, seed=self.seed, in_features=train_set[0].shape[1])
        self.model, _ = train(model, train_set, validation_set, epochs=self.epochs, patience=self.patience,
            batch_size=self.batch_size, seed=self.seed)
        super().fit(panel, day)

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        X, _ = lstm_arrays(panel, self.exo_names, [panel.day_index(day)], self.sequence_length, with_targets=False)
        return self.model.predict(X[0])


class Rf(Forecaster):
    name = "rf"
    refit_every = 7

    def __init__(self, window_days: int = 364, n_trees: int = 100, max_depth: Optional[int] = None,
            min_samples_leaf: int = 1, max_features: Union[None, int, str] = "third", **kwargs):
        super().__init__(**kwargs)
        self.window_days = int(window_days)
        self.params = ForestParams(n_trees=n_trees, max_depth=max_depth, min_samples_leaf=min_samples_leaf,
            max_features=max_features)
        self.model = None

    def fit(self, panel: HourlyPanel, day: DayLike):
        self.model = fit_rf(panel, day, self.window_days, self.exo_names, params=self.params, seed=self.seed)
        super().fit(panel, day)

    def predict(self, panel: HourlyPanel, day: DayLike) -> np.ndarray:
        return forecast_rf(self.model, panel, day).prices


__FORECASTERS__ = {
    "naive": Naive,
    "esm": Esm,
    "larx": Larx,
    "lear": Lear,
    "ens_lear": EnsLear,
    "dnn": Dnn,
    "ens_dnn": EnsDnn,
    "lstm": Lstm,
    "rf": Rf
}

def build_forecaster(name: str, arm: str = "fundamentals", fundamentals: Sequence[str] = FUNDAMENTALS,
        seed: int = 0, **settings) -> Forecaster:
    """Builds a forecaster for a regressor arm

    Args:
        name (str): one of `mcpcast.list_forecasters()`
        arm (str, optional): fundamentals, mcp-only or fundamentals+mcp. Defaults to "fundamentals".
        fundamentals (Sequence[str], optional): fundamental series of the panel. Defaults to FUNDAMENTALS.
        seed (int, optional): training seed. Defaults to 0.

    Returns:
        Forecaster: unfitted forecaster
    """
    if name not in __FORECASTERS__:
        raise ConfigError("unknown model `{}`, choose one of {}".format(name, list(__FORECASTERS__)))
    if arm not in ARMS:
        raise ConfigError("unknown arm `{}`, choose one of {}".format(arm, list(ARMS)))
    cls = __FORECASTERS__[name]
    exo_names = arm_exo(arm, fundamentals) if cls.exogenous else ()
    try:
        return cls(exo_names=exo_names, seed=seed, **settings)
    except (TypeError, AssertionError, ValueError) as e:
        raise ConfigError("invalid settings for model `{}`: {}".format(name, e)) from e
