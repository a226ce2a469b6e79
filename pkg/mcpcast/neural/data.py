__all__ = ["feature_flag_names", "select_columns", "dnn_arrays", "lstm_arrays", "make_loader"]

from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
import torch
from torch.utils.data import DataLoader, TensorDataset

from ..dataset.base import HourlyPanel, HOURS, PRICE, DayLike
from ..dataset.features import LagSpec, WEEKDAYS, feature_layout, day_design
from ..errors import InsufficientHistory, LeakageError, MissingRegressor

def feature_flag_names(exo_names: Sequence[str], lag_spec: Optional[LagSpec] = None) -> Tuple[str, ...]:
    """one binary flag per regressor block, 11 flags for two exogenous series

    >>> len(feature_flag_names(["load", "wind"]))
    11
    """
    _, blocks = feature_layout(exo_names, lag_spec)
    return tuple(block.name for block in blocks)

def select_columns(exo_names: Sequence[str], flags: Mapping[str, bool],
        lag_spec: Optional[LagSpec] = None) -> np.ndarray:
    """column indices of the daily regressor row switched on by `flags`"""
    _, blocks = feature_layout(exo_names, lag_spec)
    picked = [np.arange(block.start, block.stop) for block in blocks if flags.get(block.name, False)]
    return np.concatenate(picked) if picked else np.zeros(0, dtype=np.int64)

def _targets(panel: HourlyPanel, days: np.ndarray, with_targets: bool) -> Optional[np.ndarray]:
    if not with_targets:
        return None
    Y = panel[PRICE][days]
    if not np.all(np.isfinite(Y)):
        raise LeakageError("target prices of the requested days are not available")
    return Y

def dnn_arrays(panel: HourlyPanel, exo_names: Sequence[str], days: Sequence[DayLike],
        columns: Optional[np.ndarray] = None, lag_spec: Optional[LagSpec] = None,
        with_targets: bool = True) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Daily regressor rows restricted to `columns` and the 24 prices of each day

    Returns:
        Tuple[np.ndarray, Optional[np.ndarray]]: (n, |columns|) inputs and (n, 24) targets
    """
    design = day_design(panel, exo_names, lag_spec, days=days)
    X = design.X if columns is None else design.X[:, columns]
    return X, _targets(panel, design.days, with_targets)

def lstm_arrays(panel: HourlyPanel, exo_names: Sequence[str], days: Sequence[DayLike],
        sequence_length: int = 168, with_targets: bool = True) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Rows of the past `sequence_length` hourly prices before each day, oldest first,
    followed by the 24 day-ahead values of every exogenous series and weekday dummies

    Returns:
        Tuple[np.ndarray, Optional[np.ndarray]]: (n, sequence_length + 24 |exo| + 7) inputs and (n, 24) targets
    """
    days = np.array([panel.day_index(day) for day in days], dtype=np.int64)
    n_exo = HOURS * len(exo_names) + len(WEEKDAYS)
    if days.size == 0:
        return np.zeros((0, sequence_length + n_exo)), (np.zeros((0, HOURS)) if with_targets else None)

    first_hour = days.min() * HOURS - sequence_length
    if first_hour < 0:
        raise InsufficientHistory("a {} hour sequence before {} starts before the panel".format(
            sequence_length, panel.date_of(days.min())))
    if days.max() >= panel.n_days:
        raise MissingRegressor("regressors for {} are beyond the end of the panel ({})".format(
            panel.date_of(days.max()), panel.dates[-1]))

    hourly = panel.hourly(PRICE)
    offsets = np.arange(-sequence_length, 0)
    sequences = hourly[days[:, None] * HOURS + offsets[None, :]]
    parts = [sequences] + [panel[name][days] for name in exo_names]
    weekday = (panel.weekdays()[0] + days) % 7
    parts.append(np.eye(len(WEEKDAYS))[weekday])
    X = np.concatenate(parts, axis=1)
    if not np.all(np.isfinite(X)):
        raise LeakageError("lstm regressors of {} reach past the bid deadline".format(
            panel.date_of(days[np.argmax(~np.all(np.isfinite(X), axis=1))])))
    return X, _targets(panel, days, with_targets)

def make_loader(X: np.ndarray, Y: np.ndarray, batch_size: int = 32, shuffle: bool = False,
        seed: int = 0) -> DataLoader:
    """float64 loader, shuffling follows a generator seeded with `seed`"""
    dataset = TensorDataset(torch.as_tensor(np.asarray(X, dtype=np.float64)),
        torch.as_tensor(np.asarray(Y, dtype=np.float64)))
    generator = torch.Generator().manual_seed(int(seed))
    return DataLoader(dataset, batch_size=max(1, min(batch_size, len(dataset))),
        shuffle=shuffle, generator=generator, num_workers=0)
