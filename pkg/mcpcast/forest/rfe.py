__all__ = ["RfeStep", "RfeTrace", "rfe_rf", "series_rows", "write_rfe_trace"]

from typing import IO, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
import logging

import numpy as np
import pandas as pd

from .tree import ForestParams, fit_forest, feature_importance
from ..dataset.base import HourlyPanel, PRICE, DayLike
from ..errors import EmptyData, LeakageError

logger = logging.getLogger("mcpcast.forest")

@dataclass(frozen=True)
class RfeStep:
    step: int
    dropped: str
    n_features: int
    validation_mae: float


@dataclass(frozen=True)
class RfeTrace:
    """Elimination order with the held out score of the feature set each step started from"""
    steps: Tuple[RfeStep, ...]
    survivor: str

    @property
    def ranking(self) -> Tuple[str, ...]:
        """features from most to least important, the reverse of the elimination order"""
        return (self.survivor,) + tuple(step.dropped for step in reversed(self.steps))


def rfe_rf(X: np.ndarray, y: np.ndarray, feature_names: Sequence[str], params: Optional[ForestParams] = None,
        seed: int = 0, validation_fraction: float = 0.2) -> RfeTrace:
    """Recursive feature elimination driven by forest importances

    The last `validation_fraction` of the rows is held out. At every step a forest is
    fitted on the surviving features, scored by its held out MAE, and the least important
    feature is dropped, until a single feature is left.

    Args:
        X (np.ndarray): n x p inputs in time order
        y (np.ndarray): n targets
        feature_names (Sequence[str]): p names
        params (ForestParams, optional): forest settings. Defaults to ForestParams().
        seed (int, optional): forest seed, reused at every step. Defaults to 0.
        validation_fraction (float, optional): held out share of the rows. Defaults to 0.2.

    Returns:
        RfeTrace: elimination steps and the surviving feature
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    names = list(feature_names)
    assert X.ndim == 2 and X.shape[1] == len(names), \
        "{} names for a design of shape {}".format(len(names), X.shape)
    assert len(names) >= 2, "feature elimination needs at least 2 features not {}".format(len(names))
    assert 0 < validation_fraction < 1, "validation fraction must be in (0, 1) not {}".format(validation_fraction)

    n_val = max(1, int(round(X.shape[0] * validation_fraction)))
    n_train = X.shape[0] - n_val
    if n_train < 1:
        raise EmptyData("{} rows leave no training rows after holding out {}".format(X.shape[0], n_val))

    active = list(range(len(names)))
    steps: List[RfeStep] = []
    while len(active) > 1:
        forest = fit_forest(X[:n_train, active], y[:n_train], params, seed=seed)
        mae = float(np.mean(np.abs(forest.predict(X[n_train:, active]) - y[n_train:])))
        ranked = feature_importance(forest, [names[j] for j in active])
        dropped = ranked[-1][0]
        steps.append(RfeStep(step=len(steps) + 1, dropped=dropped, n_features=len(active), validation_mae=mae))
        active = [j for j in active if names[j] != dropped]
        logger.debug("elimination step {}: dropped `{}`, validation MAE {:.4f}".format(len(steps), dropped, mae))

    return RfeTrace(steps=tuple(steps), survivor=names[active[0]])

def series_rows(panel: HourlyPanel, names: Sequence[str], days: Sequence[DayLike]) -> Tuple[np.ndarray, np.ndarray]:
    """hourly rows of the named series with the price of the same hour as target

    >>> panel = HourlyPanel(np.arange(2).astype("datetime64[D]"), {"price": np.arange(48), "load": np.ones(48)})
    >>> X, y = series_rows(panel, ["load"], [1])
    >>> X.shape, y[0]
    ((24, 1), 24.0)
    """
    days = np.array([panel.day_index(day) for day in days], dtype=np.int64)
    X = np.stack([panel[name][days].reshape(-1) for name in names], axis=1)
    y = panel[PRICE][days].reshape(-1)
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise LeakageError("series rows of the requested days contain missing values")
    return X, y

def write_rfe_trace(trace: RfeTrace, stream: Union[str, IO]):
    frame = pd.DataFrame({
        "step": [step.step for step in trace.steps],
        "dropped_feature": [step.dropped for step in trace.steps],
        "n_features": [step.n_features for step in trace.steps],
        "validation_mae": [step.validation_mae for step in trace.steps]
    })
    frame.to_csv(stream, index=False, float_format="%.6f", lineterminator="\n")
