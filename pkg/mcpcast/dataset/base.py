__all__ = ["HourlyPanel", "PRICE", "MCP", "FUNDAMENTALS", "HOURS"]

from typing import Dict, Iterable, List, Tuple, Union
import datetime
import logging

import numpy as np

from ..errors import NonContiguousHours, UnknownSeries

logger = logging.getLogger("mcpcast.dataset")

HOURS = 24
PRICE = "price"
MCP = "mcp"
FUNDAMENTALS = ("load", "wind", "solar", "gas", "coal", "co2")

DayLike = Union[int, np.integer, str, datetime.date, np.datetime64]

class HourlyPanel():
    """Aligned hourly series, stored per day as read-only (n_days, 24) arrays.

    Days are consecutive calendar days of exactly 24 hours. Series are looked up
    by name, `panel["price"][d, h]` is the price of hour h on day index d.

    Args:
        dates (Iterable): first timestamp of every day, anything `np.datetime64` accepts
        series (Dict[str, np.ndarray]): named series as (n_days, 24) or flat (n_days*24,) arrays
    """

    def __init__(self, dates: Iterable, series: Dict[str, np.ndarray]):
        dates = np.asarray(list(dates) if not isinstance(dates, np.ndarray) else dates,
            dtype="datetime64[D]")
        assert dates.ndim == 1 and dates.size > 0, "panel must contain at least one day"

        steps = np.diff(dates).astype(np.int64)
        if np.any(steps != 1):
            bad = int(np.argmax(steps != 1))
            raise NonContiguousHours("days {} and {} are not consecutive".format(
                dates[bad], dates[bad + 1]))

        n_days = dates.size
        store = {}
        for name, values in series.items():
            values = np.array(values, dtype=np.float64)
            if values.ndim == 1:
                assert values.size == n_days * HOURS, \
                    "series `{}` has {} values, expected {}".format(name, values.size, n_days * HOURS)
                values = values.reshape(n_days, HOURS)
            assert values.shape == (n_days, HOURS), \
                "series `{}` must have shape {} not {}".format(name, (n_days, HOURS), values.shape)
            values.setflags(write=False)
            store[name] = values

        dates.setflags(write=False)
        self._dates = dates
        self._series = store

    @property
    def dates(self) -> np.ndarray:
        return self._dates

    @property
    def n_days(self) -> int:
        return int(self._dates.size)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self._series.keys())

    def __len__(self) -> int:
        return self.n_days * HOURS

    def __contains__(self, name: str) -> bool:
        return name in self._series

    def __getitem__(self, name: str) -> np.ndarray:
        if name not in self._series:
            raise UnknownSeries(name, self.names)
        return self._series[name]

    def hourly(self, name: str) -> np.ndarray:
        """returns the named series flattened to hourly resolution"""
        return self[name].reshape(-1)

    def day_index(self, day: DayLike) -> int:
        """Converts a date or day index to a day index, it may point outside of the panel

        >>> panel = HourlyPanel(["2021-01-04", "2021-01-05"], {"price": np.zeros(48)})
        >>> panel.day_index("2021-01-05")
        1
        >>> panel.day_index(1)
        1
        """
        if isinstance(day, (int, np.integer)):
            return int(day)
        day = np.datetime64(day, "D")
        return int((day - self._dates[0]).astype(np.int64))

    def date_of(self, index: int) -> np.datetime64:
        return self._dates[0] + np.timedelta64(int(index), "D")

    def weekdays(self) -> np.ndarray:
        """weekday of every day, Monday is 0

        >>> HourlyPanel(["2021-01-04"], {"price": np.zeros(24)}).weekdays()
        array([0])
        """
        # 1970-01-01 was a Thursday
        return (self._dates.astype(np.int64) + 3) % 7

    def timestamps(self) -> List[str]:
        """timestamps as `YYYY-MM-DDTHH` strings"""
        return ["{}T{:02d}".format(date, hour) for date in self._dates for hour in range(HOURS)]

    def select_days(self, start: int, stop: int) -> "HourlyPanel":
        assert 0 <= start < stop <= self.n_days, \
            "invalid day range [{}, {}) for a panel of {} days".format(start, stop, self.n_days)
        return HourlyPanel(self._dates[start:stop],
            {name: values[start:stop] for name, values in self._series.items()})

    def with_series(self, name: str, values: np.ndarray) -> "HourlyPanel":
        """returns a new panel with the given series added or replaced"""
        series = dict(self._series)
        series[name] = values
        return HourlyPanel(self._dates, series)

    def masked_at(self, day: DayLike) -> "HourlyPanel":
        """View of the panel as known at the bid deadline of `day`.

        Prices of `day` and later are unknown, day-ahead exogenous series are known
        up to and including `day`. Masked values are NaN.
        """
        d = self.day_index(day)
        series = {}
        for name, values in self._series.items():
            first_hidden = d if name == PRICE else d + 1
            masked = values.copy()
            masked[max(first_hidden, 0):] = np.nan
            series[name] = masked
        return HourlyPanel(self._dates, series)

    def __repr__(self) -> str:
        return "HourlyPanel(days={}, start={}, series={})".format(
            self.n_days, self._dates[0], list(self.names))
