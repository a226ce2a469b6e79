from .errors import mae, rmse, smape, rmae, daily_abs_errors
from .gw import GWResult, gw_test, loss_differential, newey_west_variance
