from .lasso import (
    LassoFit,
    LassoPath,
    soft_threshold,
    lambda_max,
    lambda_grid,
    lasso_fit,
    lasso_fit_many,
    lasso_path,
    cross_validate_lambda,
    cross_validate_lambdas
)
from .lear import (
    LearModel,
    fit_lear,
    forecast_lear,
    fit_ens_lear,
    forecast_ens_lear,
    save_lear,
    load_lear,
    DEFAULT_WINDOWS
)
from .larx import LarxModel, fit_larx, forecast_larx
