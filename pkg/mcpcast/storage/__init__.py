from .spec import StorageSpec, StoragePlan, LOSS_ON_CHARGE, LOSS_ON_DISCHARGE
from .planning import plan_day, realized_profit, verify_plan, wasted_energy, build_day_problem
from .backtest import StorageResult, backtest_storage, write_storage_report, PERFECT
