__all__ = ["SplitSpec"]

from typing import Tuple
from dataclasses import dataclass

from ..errors import InvalidConfig

DayRange = Tuple[int, int]

@dataclass(frozen=True)
class SplitSpec:
    """Train, validation and test day ranges as half open [start, stop) day indices"""
    train: DayRange
    validation: DayRange
    test: DayRange

    def __post_init__(self):
        for name in ("train", "validation", "test"):
            start, stop = getattr(self, name)
            if not 0 <= start <= stop:
                raise InvalidConfig("{} range [{}, {}) is not valid".format(name, start, stop))
        if self.train[1] > self.validation[0] or self.validation[1] > self.test[0]:
            raise InvalidConfig("ranges must be disjoint and ordered train < validation < test, found {}".format(self))

    @classmethod
    def from_panel(cls, n_days: int, test_days: int, validation_weeks: float = 42,
            scale: float = 1.0) -> "SplitSpec":
        """Splits `n_days` so that the last `test_days` are the test range and the
        `validation_weeks * 7 * scale` days before them are the validation range.

        >>> SplitSpec.from_panel(400, 60, validation_weeks=42, scale=0.25)
        SplitSpec(train=(0, 266), validation=(266, 340), test=(340, 400))
        """
        val_days = int(round(validation_weeks * 7 * scale))
        train_stop = n_days - test_days - val_days
        if test_days < 1 or val_days < 1 or train_stop < 1:
            raise InvalidConfig("cannot split {} days into {} validation and {} test days".format(
                n_days, val_days, test_days))
        return cls(
            train=(0, train_stop),
            validation=(train_stop, train_stop + val_days),
            test=(train_stop + val_days, n_days))

    def days(self, name: str) -> range:
        start, stop = getattr(self, name)
        return range(start, stop)
