__all__ = ["DEFAULT_SCHEMA", "OPTIONAL_COLUMNS", "load_panel", "write_panel", "write_series"]

from typing import Dict, IO, Optional, Sequence, Union
import io
import logging

import numpy as np
import pandas as pd

from .base import HourlyPanel, HOURS, PRICE, MCP, FUNDAMENTALS
from ..errors import MissingColumn, NonContiguousHours, UnparseableValue

logger = logging.getLogger("mcpcast.dataset")

TIMESTAMP = "timestamp"

# canonical name -> column name in the file
DEFAULT_SCHEMA = {name: name for name in (TIMESTAMP, PRICE) + FUNDAMENTALS}
OPTIONAL_COLUMNS = (MCP,)

Source = Union[str, bytes, IO]

def _read_frame(source: Source) -> pd.DataFrame:
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    # everything as text so unparseable cells can be located
    return pd.read_csv(source, dtype=str, keep_default_na=False, encoding="utf-8")

def _parse_column(raw: np.ndarray, column: str, row_offset: int = 2) -> np.ndarray:
    try:
        values = np.array(raw, dtype=np.float64)
    except ValueError:
        values = None

    if values is None:
        values = np.empty(raw.size, dtype=np.float64)
        for idx, cell in enumerate(raw):
            try:
                values[idx] = float(cell)
            except ValueError:
                raise UnparseableValue(idx + row_offset, column, cell) from None

    bad = ~np.isfinite(values)
    if np.any(bad):
        idx = int(np.argmax(bad))
        raise UnparseableValue(idx + row_offset, column, raw[idx], reason="non finite value")
    return values

def _parse_timestamps(raw: np.ndarray, column: str):
    dates = np.empty(raw.size, dtype="datetime64[D]")
    hours = np.empty(raw.size, dtype=np.int64)
    for idx, cell in enumerate(raw):
        date, sep, hour = cell.strip().partition("T")
        try:
            assert sep == "T" and len(hour) == 2
            dates[idx] = np.datetime64(date, "D")
            hours[idx] = int(hour)
            assert 0 <= hours[idx] < HOURS
        except (AssertionError, ValueError):
            raise UnparseableValue(idx + 2, column, cell, reason="expected YYYY-MM-DDTHH, found") from None
    return dates, hours

def load_panel(csv_source: Source, schema: Optional[Dict[str, str]] = None,
        required: Optional[Sequence[str]] = None) -> HourlyPanel:
    """Loads and validates an hourly panel from csv

    Args:
        csv_source (Union[str, bytes, IO]): file path, raw bytes or stream
        schema (Dict[str, str], optional): canonical name to file column name map. Defaults to DEFAULT_SCHEMA.
        required (Sequence[str], optional): canonical names that must exist. Defaults to all schema names.

    Returns:
        HourlyPanel: validated panel, rows sorted by timestamp

    Row numbers in error messages are 1-based file lines, the header is line 1.
    """
    schema = dict(DEFAULT_SCHEMA if schema is None else schema)
    for name in OPTIONAL_COLUMNS:
        schema.setdefault(name, name)
    if required is None:
        required = [name for name in schema if name not in OPTIONAL_COLUMNS]
    required = list(required)
    if TIMESTAMP not in required:
        required.append(TIMESTAMP)

    frame = _read_frame(csv_source)
    if len(frame) == 0:
        raise NonContiguousHours("panel file contains no rows")

    for name in required:
        if schema.get(name, name) not in frame.columns:
            raise MissingColumn(schema.get(name, name))

    ts_column = schema[TIMESTAMP]
    dates, hours = _parse_timestamps(frame[ts_column].to_numpy(), ts_column)

    keys = dates.astype(np.int64) * HOURS + hours
    order = np.argsort(keys, kind="stable")
    keys = keys[order]

    duplicated = np.flatnonzero(np.diff(keys) == 0)
    if duplicated.size > 0:
        row = int(order[duplicated[0] + 1])
        raise UnparseableValue(row + 2, ts_column, frame[ts_column].iloc[row], reason="duplicate timestamp")

    expected = np.arange(keys[0] - keys[0] % HOURS, keys[-1] - keys[-1] % HOURS + HOURS)
    if keys.size != expected.size or np.any(keys != expected):
        missing = np.setdiff1d(expected, keys)
        first = int(missing[0])
        raise NonContiguousHours("hour {} of {} is missing".format(
            first % HOURS, np.datetime64(first // HOURS, "D")))

    series = {}
    for name, column in schema.items():
        if name == TIMESTAMP or column not in frame.columns:
            continue
        values = _parse_column(frame[column].to_numpy(), column)
        series[name] = values[order]

    day_starts = np.unique(keys // HOURS).astype("datetime64[D]")
    panel = HourlyPanel(day_starts, series)
    logger.info("loaded panel with {} days and series {}".format(panel.n_days, list(panel.names)))
    return panel

def _format(values: np.ndarray):
    # repr is the shortest string that parses back to the same double
    return [repr(float(v)) for v in values]

def write_panel(panel: HourlyPanel, stream: Union[str, IO], names: Optional[Sequence[str]] = None):
    """Writes the panel in the csv schema `load_panel` reads, values round-trip exactly

    Args:
        panel (HourlyPanel): panel to write
        stream (Union[str, IO]): file path or text stream
        names (Sequence[str], optional): series to write. Defaults to all series of the panel.
    """
    names = list(panel.names) if names is None else list(names)
    frame = pd.DataFrame({TIMESTAMP: panel.timestamps()})
    for name in names:
        frame[name] = _format(panel.hourly(name))
    frame.to_csv(stream, index=False, lineterminator="\n")

def write_series(panel: HourlyPanel, name: str, stream: Union[str, IO]):
    """writes a single series as `timestamp,<name>`, mergeable into a panel file"""
    write_panel(panel, stream, names=[name])
