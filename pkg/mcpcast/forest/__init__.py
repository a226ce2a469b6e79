from .tree import (
    TreeParams,
    ForestParams,
    RegressionTree,
    Forest,
    fit_tree,
    fit_forest,
    feature_importance,
    oob_error
)
from .rfe import RfeStep, RfeTrace, rfe_rf, series_rows, write_rfe_trace
from .model import RF_LAGS, RfModel, fit_rf, forecast_rf
