__all__ = [
    "Choice", "LogUniform", "NetworkSpec", "SearchSpace", "SearchResult", "DnnMember",
    "random_search", "fit_dnn", "forecast_dnn", "fit_ens_dnn", "forecast_ens_dnn"
]

from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union
from dataclasses import dataclass, field, asdict
import itertools
import logging
import math

import numpy as np

from .data import dnn_arrays, feature_flag_names, select_columns
from .training import train
from ..dataset.base import HourlyPanel, DayLike
from ..dataset.features import LagSpec
from ..dataset.split import SplitSpec
from ..errors import EmptySpace, NonFiniteLoss
from ..metric.forecast import DayAheadForecast
from ..metric.report import ensemble_average
from ..module import PriceForecaster
from ..utils.random import derive_seed

logger = logging.getLogger("mcpcast.neural")

@dataclass(frozen=True)
class Choice:
    """finite set of values sampled uniformly"""
    values: Tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def size(self) -> int:
        return len(self.values)

    def sample(self, rng: np.random.Generator):
        return self.values[int(rng.integers(len(self.values)))]


@dataclass(frozen=True)
class LogUniform:
    """continuous range sampled uniformly on a log scale"""
    low: float
    high: float

    @property
    def size(self) -> Optional[int]:
        return 1 if self.low == self.high else None

    @property
    def values(self) -> Tuple:
        assert self.size == 1, "a continuous range cannot be enumerated"
        return (self.low,)

    def sample(self, rng: np.random.Generator) -> float:
        return float(math.exp(rng.uniform(math.log(self.low), math.log(self.high))))


Dimension = Union[Choice, LogUniform]

@dataclass(frozen=True)
class NetworkSpec:
    """One point of the search space: architecture, training and regressor choices.

    `features` lists the enabled regressor blocks; an empty tuple enables every block.
    """
    hidden: Tuple[int, ...] = (128, 64)
    activation: str = "relu"
    learning_rate: float = 1e-3
    dropout: float = 0.0
    l1: float = 0.0
    preprocessing: str = "zscore"
    batch_norm: bool = False
    seed: int = 0
    features: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "hidden", tuple(int(h) for h in self.hidden))
        object.__setattr__(self, "features", tuple(self.features))
        assert all(h >= 1 for h in self.hidden), "hidden sizes must be positive not {}".format(self.hidden)
        assert len(self.hidden) <= 3, "at most 3 hidden layers are supported"
        assert 0 <= self.dropout < 1, "dropout must be in [0, 1) not {}".format(self.dropout)
        assert self.learning_rate > 0, "learning rate must be positive not {}".format(self.learning_rate)
        assert self.l1 >= 0, "l1 coefficient must be non negative not {}".format(self.l1)

    def arch_config(self) -> Dict:
        return {
            "hidden": list(self.hidden),
            "activation": self.activation,
            "dropout": self.dropout,
            "batch_norm": self.batch_norm
        }

    def hparams(self) -> Dict:
        return {"learning_rate": self.learning_rate, "l1": self.l1}

    def to_dict(self) -> Dict:
        return asdict(self)


def _default_flags() -> Dict[str, Dimension]:
    return {}

@dataclass(frozen=True)
class SearchSpace:
    """Hyperparameter ranges of the DNN; `flags` maps a regressor block name to the
    on/off values it may take"""
    hidden: Dimension = Choice(((64,), (128, 64), (128, 96, 64)))
    activation: Dimension = Choice(("relu", "tanh", "sigmoid"))
    learning_rate: Dimension = LogUniform(1e-4, 1e-2)
    dropout: Dimension = Choice((0.0, 0.1, 0.2))
    l1: Dimension = Choice((0.0, 1e-5, 1e-4, 1e-3))
    preprocessing: Dimension = Choice(("zscore", "minmax", "none"))
    batch_norm: Dimension = Choice((False,))
    seed: Dimension = Choice((0, 1, 2, 3))
    flags: Mapping[str, Dimension] = field(default_factory=_default_flags)

    SCALARS = ("hidden", "activation", "learning_rate", "dropout", "l1", "preprocessing", "batch_norm", "seed")

    @classmethod
    def for_exo(cls, exo_names: Sequence[str], lag_spec: Optional[LagSpec] = None, **kwargs) -> "SearchSpace":
        """space with one binary flag per regressor block of the given exogenous series"""
        flags = {name: Choice((True, False)) for name in feature_flag_names(exo_names, lag_spec)}
        return cls(flags=flags, **kwargs)

    @classmethod
    def from_dict(cls, config: Mapping) -> "SearchSpace":
        """builds a space from plain lists (Choice) and `{low, high}` mappings (LogUniform)"""
        def dim(value):
            if isinstance(value, Mapping):
                return LogUniform(float(value["low"]), float(value["high"]))
            return Choice(tuple(tuple(v) if isinstance(v, list) else v for v in value))

        kwargs = {name: dim(value) for name, value in config.items() if name not in ("flags", "exo_names")}
        if "flags" in config:
            kwargs["flags"] = {name: dim(value) for name, value in config["flags"].items()}
        return cls(**kwargs)

    def dimensions(self) -> List[Tuple[str, Dimension]]:
        dims = [(name, getattr(self, name)) for name in self.SCALARS]
        dims += [("flag:" + name, dim) for name, dim in self.flags.items()]
        for name, dim in dims:
            if isinstance(dim, Choice) and dim.size == 0:
                raise EmptySpace("dimension `{}` has no values".format(name))
            if isinstance(dim, LogUniform) and not 0 < dim.low <= dim.high:
                raise EmptySpace("dimension `{}` has an empty range [{}, {}]".format(name, dim.low, dim.high))
        return dims

    @property
    def size(self) -> Optional[int]:
        """number of distinct configurations, None when a dimension is continuous"""
        total = 1
        for _, dim in self.dimensions():
            if dim.size is None:
                return None
            total *= dim.size
        return total

    def _spec(self, values: Mapping[str, Any]) -> NetworkSpec:
        scalars = {name: values[name] for name in self.SCALARS}
        if self.flags:
            features = tuple(name for name in self.flags if values["flag:" + name])
            if not features:
                # a network needs at least one input block
                features = ("price_d-1",)
        else:
            features = ()
        return NetworkSpec(features=features, **scalars)

    def sample(self, rng: np.random.Generator) -> NetworkSpec:
        return self._spec({name: dim.sample(rng) for name, dim in self.dimensions()})

    def enumerate(self) -> List[NetworkSpec]:
        dims = self.dimensions()
        assert self.size is not None, "continuous spaces cannot be enumerated"
        names = [name for name, _ in dims]
        return [self._spec(dict(zip(names, combo))) for combo in itertools.product(*[dim.values for _, dim in dims])]


@dataclass
class SearchResult:
    best: NetworkSpec
    loss: float
    index: int
    trials: List[Tuple[NetworkSpec, float]]
    payload: Any = None


def random_search(space: SearchSpace, budget: int, seed: int,
        objective: Callable[[NetworkSpec], Union[float, Tuple[float, Any]]]) -> SearchResult:
    """Seeded random search returning the configuration with the lowest objective

    When the space is finite and `budget` covers it, every configuration is evaluated
    once in a seeded order. Ties keep the earlier evaluation.

    Args:
        space (SearchSpace): hyperparameter ranges
        budget (int): number of evaluations
        seed (int): sampling seed
        objective (Callable): validation loss of a configuration, optionally with a payload such as the trained model

    Returns:
        SearchResult: best configuration, its loss and sample index, all trials and the best payload
    """
    assert budget >= 1, "budget must be at least 1 not {}".format(budget)
    rng = np.random.default_rng(seed)
    size = space.size

    if size is not None and budget >= size:
        every = space.enumerate()
        candidates = [every[k] for k in rng.permutation(size)]
    else:
        candidates = [space.sample(rng) for _ in range(budget)]

    trials = []
    best_idx, best_loss, best_payload = 0, math.inf, None
    for idx, candidate in enumerate(candidates):
        outcome = objective(candidate)
        loss, payload = outcome if isinstance(outcome, tuple) else (outcome, None)
        loss = float(loss) if math.isfinite(float(loss)) else math.inf
        trials.append((candidate, loss))
        if idx == 0 or loss < best_loss:
            best_idx, best_loss, best_payload = idx, loss, payload
        logger.debug("search trial {}: loss {:.6g}".format(idx, loss))

    return SearchResult(best=candidates[best_idx], loss=best_loss, index=best_idx,
        trials=trials, payload=best_payload)


@dataclass
class DnnMember:
    """trained network with the regressor columns it consumes"""
    spec: NetworkSpec
    model: PriceForecaster
    exo_names: Tuple[str, ...]
    columns: np.ndarray
    lag_spec: LagSpec
    validation_loss: float = math.inf


def _fit_days(split_range: range, lag_spec: LagSpec) -> np.ndarray:
    return np.arange(max(split_range.start, lag_spec.max_lag), split_range.stop)

def fit_dnn(panel: HourlyPanel, train_days: Sequence[DayLike], validation_days: Sequence[DayLike],
        spec: NetworkSpec, exo_names: Sequence[str], lag_spec: Optional[LagSpec] = None,
        epochs: int = 200, patience: int = 20, batch_size: int = 32) -> DnnMember:
    """Trains one DNN with fixed hyperparameters on the given days"""
    lag_spec = LagSpec() if lag_spec is None else lag_spec
    if spec.features:
        columns = select_columns(exo_names, {name: True for name in spec.features}, lag_spec)
    else:
        columns = select_columns(exo_names, {name: True for name in feature_flag_names(exo_names, lag_spec)}, lag_spec)

    train_set = dnn_arrays(panel, exo_names, train_days, columns, lag_spec)
    validation_set = dnn_arrays(panel, exo_names, validation_days, columns, lag_spec)

    model = PriceForecaster.build("dnn", spec.arch_config(), preprocess={"inputs": spec.preprocessing},
        hparams=spec.hparams(), seed=spec.seed, in_features=int(columns.size))
    model, history = train(model, train_set, validation_set, epochs=epochs, patience=patience,
        batch_size=batch_size, seed=spec.seed)
    best = min((entry["validation"] for entry in history), default=math.inf)
    return DnnMember(spec=spec, model=model, exo_names=tuple(exo_names), columns=columns,
        lag_spec=lag_spec, validation_loss=best)

def forecast_dnn(member: DnnMember, panel: HourlyPanel, day: DayLike, name: str = "dnn") -> DayAheadForecast:
    d = panel.day_index(day)
    X, _ = dnn_arrays(panel, member.exo_names, [d], member.columns, member.lag_spec, with_targets=False)
    return DayAheadForecast(model=name, day=panel.date_of(d), prices=member.model.predict(X[0]))

def fit_ens_dnn(panel: HourlyPanel, split: SplitSpec, space: SearchSpace, exo_names: Sequence[str],
        seeds: Sequence[int] = (0, 1, 2, 3), budget: int = 8, lag_spec: Optional[LagSpec] = None,
        epochs: int = 200, patience: int = 20, batch_size: int = 32) -> List[DnnMember]:
    """One random search per seed, each keeping its best trained network

    Args:
        panel (HourlyPanel): market panel
        split (SplitSpec): training days feed the gradient steps, validation days the early stopping and the search objective
        space (SearchSpace): hyperparameter ranges
        exo_names (Sequence[str]): exogenous series
        seeds (Sequence[int], optional): one search per seed. Defaults to (0, 1, 2, 3).
        budget (int, optional): trials per search. Defaults to 8.

    Returns:
        List[DnnMember]: ensemble members in seed order
    """
    lag_spec = LagSpec() if lag_spec is None else lag_spec
    if len(set(seeds)) != len(seeds):
        logger.warning("ensemble seeds {} are not distinct, members will repeat".format(list(seeds)))

    train_days = _fit_days(split.days("train"), lag_spec)
    validation_days = np.asarray(split.days("validation"))

    members = []
    for seed in seeds:
        def objective(spec: NetworkSpec):
            try:
                member = fit_dnn(panel, train_days, validation_days, spec, exo_names, lag_spec,
                    epochs=epochs, patience=patience, batch_size=batch_size)
            except NonFiniteLoss as e:
                logger.debug("search candidate diverged: {}".format(e))
                return math.inf, None
            return member.validation_loss, member

        result = random_search(space, budget, derive_seed(seed, 0), objective)
        if result.payload is None:
            raise NonFiniteLoss(epochs, float("nan"))
        members.append(result.payload)
        logger.info("ensemble member seed {}: validation loss {:.6g}".format(seed, result.loss))
    return members

def forecast_ens_dnn(members: Sequence[DnnMember], panel: HourlyPanel, day: DayLike,
        name: str = "ens_dnn") -> DayAheadForecast:
    d = panel.day_index(day)
    prices = ensemble_average([forecast_dnn(member, panel, d).prices for member in members])
    return DayAheadForecast(model=name, day=panel.date_of(d), prices=prices)
