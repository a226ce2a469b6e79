"""Exception hierarchy of mcpcast.

Contract violations on public functions are guarded with plain `assert`
statements; the classes below are the domain failures a caller is expected
to catch. Every message names the offending row, column, day or model.
"""

__all__ = [
    "McpcastError",
    "DataError", "MissingColumn", "NonContiguousHours", "UnparseableValue",
    "TooShortPanel", "UnknownSeries", "InsufficientHistory", "MissingRegressor",
    "LeakageError", "InvalidConfig",
    "SolverError", "Infeasible", "Unbounded", "IterationLimit",
    "InconsistentWindow", "InvalidFleet",
    "TooFewRows",
    "DimensionMismatch", "NonFiniteLoss", "EmptySpace",
    "EmptyData",
    "LengthMismatch", "TooFewDays",
    "MisalignedDays", "PlanInfeasible",
    "ConfigError", "BacktestError"
]

from typing import Optional


class McpcastError(Exception):
    """Base class of every error raised by mcpcast"""


# data

class DataError(McpcastError):
    pass

class MissingColumn(DataError):
    def __init__(self, column: str):
        super().__init__("required column `{}` is missing".format(column))
        self.column = column

class NonContiguousHours(DataError):
    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message if row is None else "row {}: {}".format(row, message))
        self.row = row

class UnparseableValue(DataError):
    def __init__(self, row: int, column: str, value: str, reason: str = "cannot parse"):
        super().__init__("row {} column `{}`: {} {!r}".format(row, column, reason, value))
        self.row = row
        self.column = column
        self.value = value

class TooShortPanel(DataError):
    pass

class UnknownSeries(DataError):
    def __init__(self, name: str, available=()):
        super().__init__("series `{}` not found, available: {}".format(name, ", ".join(available)))
        self.name = name

class InsufficientHistory(DataError):
    pass

class MissingRegressor(DataError):
    pass

class LeakageError(DataError):
    """a regressor timestamped after the bid deadline reached a forecast"""

class InvalidConfig(DataError):
    pass


# lp

class SolverError(McpcastError):
    pass

class Infeasible(SolverError):
    pass

class Unbounded(SolverError):
    pass

class IterationLimit(SolverError):
    def __init__(self, limit: int):
        super().__init__("simplex stopped after {} iterations".format(limit))
        self.limit = limit


# dispatch

class InconsistentWindow(McpcastError):
    pass

class InvalidFleet(McpcastError):
    pass


# linear

class TooFewRows(McpcastError):
    pass


# neural

class DimensionMismatch(McpcastError):
    pass

class NonFiniteLoss(McpcastError):
    def __init__(self, epoch: int, loss: float):
        super().__init__("loss became {} at epoch {}".format(loss, epoch))
        self.epoch = epoch
        self.loss = loss

class EmptySpace(McpcastError):
    pass


# forest

class EmptyData(McpcastError):
    pass


# evaluate

class LengthMismatch(McpcastError):
    pass

class TooFewDays(McpcastError):
    pass


# storage

class MisalignedDays(McpcastError):
    pass

class PlanInfeasible(McpcastError):
    pass


# cli

class ConfigError(McpcastError):
    pass

class BacktestError(McpcastError):
    def __init__(self, model: str, arm: str, day: str, cause: Exception):
        super().__init__("model `{}` arm `{}` failed on {}: {}".format(model, arm, day, cause))
        self.model = model
        self.arm = arm
        self.day = day
        self.cause = cause
