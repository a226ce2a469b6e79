__all__ = ["DayAheadForecast"]

from dataclasses import dataclass

import numpy as np

from ..dataset.base import HOURS

@dataclass(frozen=True)
class DayAheadForecast:
    """24 hourly price predictions of one model for one delivery day"""
    model: str
    day: np.datetime64
    prices: np.ndarray

    def __post_init__(self):
        prices = np.array(self.prices, dtype=np.float64).reshape(-1)
        assert prices.size == HOURS, "forecast of {} for {} has {} values not {}".format(
            self.model, self.day, prices.size, HOURS)
        assert np.all(np.isfinite(prices)), "forecast of {} for {} is not finite".format(self.model, self.day)
        prices.setflags(write=False)
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "day", np.datetime64(self.day, "D"))

    def renamed(self, model: str) -> "DayAheadForecast":
        return DayAheadForecast(model=model, day=self.day, prices=self.prices)
