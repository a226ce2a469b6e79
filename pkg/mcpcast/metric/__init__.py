__all__ = [
    "DayAheadForecast",
    "MetricsReport",
    "GWMatrix",
    "PriceMAE",
    "metrics",
    "ensemble_average",
    "gw_matrix",
    "write_metrics",
    "write_gw_matrix",
    "gw_matrix_json",
    "dump_gw_matrix_json",
    "describe_prices"
]

from .forecast import DayAheadForecast
from .report import (
    MetricsReport,
    GWMatrix,
    metrics,
    ensemble_average,
    gw_matrix,
    write_metrics,
    write_gw_matrix,
    gw_matrix_json,
    dump_gw_matrix_json
)
from .describe import describe_prices
from .mae import PriceMAE
