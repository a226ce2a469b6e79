from .base import HourlyPanel, HOURS, PRICE, MCP, FUNDAMENTALS
from .tabular import load_panel, write_panel, write_series, DEFAULT_SCHEMA
from .split import SplitSpec
from .features import (
    LagSpec,
    FeatureMatrix,
    feature_layout,
    day_design,
    build_feature_matrix,
    larx_layout,
    larx_design,
    naive_forecast
)
from .synthetic import SynthConfig, synth_market, seasonal_component
