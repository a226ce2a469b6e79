from .functional import forward, backprop_grad, lstm_step, as_tensor
from .data import feature_flag_names, select_columns, dnn_arrays, lstm_arrays, make_loader
from .callbacks import BestValidation
from .training import train, build_trainer
from .search import (
    Choice,
    LogUniform,
    NetworkSpec,
    SearchSpace,
    SearchResult,
    DnnMember,
    random_search,
    fit_dnn,
    forecast_dnn,
    fit_ens_dnn,
    forecast_ens_dnn
)
