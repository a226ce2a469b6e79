__all__ = ["main", "get_arguments"]

from typing import List, Optional
import argparse
import logging
import os
import sys

import numpy as np
import yaml

from .backtest import RunConfig, run_backtest, write_forecasts, read_forecasts
from .dataset.base import PRICE, FUNDAMENTALS
from .dataset.features import naive_forecast
from .dataset.synthetic import SynthConfig, synth_market
from .dataset.tabular import load_panel, write_panel
from .dispatch.clearing import rolling_mcp, write_mcp
from .dispatch.fleet import load_fleet
from .errors import McpcastError, ConfigError, InvalidConfig
from .forecaster import ARMS, arm_exo
from .forest import ForestParams, rfe_rf, series_rows, write_rfe_trace
from .linear import fit_lear, forecast_lear, save_lear, load_lear
from .metric import metrics, gw_matrix, write_metrics, write_gw_matrix, dump_gw_matrix_json
from .storage import StorageSpec, backtest_storage, write_storage_report
from .utils.cache import get_model_dir, get_report_dir

logger = logging.getLogger("mcpcast.cli")

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2

def _load_yaml(path: Optional[str]) -> dict:
    if path is None:
        return {}
    if not os.path.isfile(path):
        raise ConfigError("could not find the config file given {}".format(path))
    with open(path, "r") as foo:
        try:
            config = yaml.load(foo, Loader=yaml.FullLoader)
        except yaml.YAMLError as e:
            raise ConfigError("config file {} is not valid yaml: {}".format(path, e)) from e
    return config or {}

def _out_dir(path: Optional[str], default=get_report_dir) -> str:
    if path is None:
        return default()
    os.makedirs(path, exist_ok=True)
    return path

def _actuals(panel, dates: np.ndarray):
    days = [panel.day_index(day) for day in dates]
    return np.stack([panel[PRICE][d] for d in days]), np.stack([naive_forecast(panel, d) for d in days])

def cmd_synth(args) -> int:
    config = SynthConfig.from_dict(_load_yaml(args.config))
    panel, fleet = synth_market(config, args.seed)
    out = _out_dir(args.out)
    write_panel(panel, os.path.join(out, "panel.csv"))
    with open(os.path.join(out, "fleet.yaml"), "w") as foo:
        yaml.dump(fleet.to_dict(), foo, sort_keys=False)
    logger.info("synthetic market of {} days written to {}".format(panel.n_days, out))
    return EXIT_OK

def cmd_simulate_esm(args) -> int:
    panel = load_panel(args.data, required=["timestamp", "load"])
    fleet = load_fleet(args.fleet)
    mcp = rolling_mcp(fleet, panel, window_hours=args.window_hours, keep_hours=args.keep_hours)
    out = _out_dir(args.out)
    write_mcp(panel.dates, mcp, os.path.join(out, "mcp.csv"))
    logger.info("clearing prices of {} days written to {}".format(panel.n_days, out))
    return EXIT_OK

def cmd_fit(args) -> int:
    panel = load_panel(args.data)
    model = fit_lear(panel, args.day, args.window_days, arm_exo(args.arm, _fundamentals(args, panel)))
    out = _out_dir(args.out, default=get_model_dir)
    save_lear(model, os.path.join(out, "lear.txt"))
    return EXIT_OK

def cmd_forecast(args) -> int:
    panel = load_panel(args.data)
    model = load_lear(args.model_file)
    days = [panel.day_index(day) for day in args.days]
    preds = np.stack([forecast_lear(model, panel, d).prices for d in days])
    out = _out_dir(args.out)
    write_forecasts(np.array([panel.date_of(d) for d in days]), {args.name: preds}, os.path.join(out, "forecasts.csv"))
    return EXIT_OK

def cmd_evaluate(args) -> int:
    panel = load_panel(args.data)
    dates, forecasts = read_forecasts(args.forecasts)
    actual, naive = _actuals(panel, dates)
    reports = [metrics(pred, actual, naive, model=model) for model, pred in forecasts.items()]
    write_metrics(reports, os.path.join(_out_dir(args.out), "metrics.csv"))
    return EXIT_OK

def cmd_gw(args) -> int:
    panel = load_panel(args.data)
    dates, forecasts = read_forecasts(args.forecasts)
    actual, _ = _actuals(panel, dates)
    matrix = gw_matrix({model: pred - actual for model, pred in forecasts.items()})
    out = _out_dir(args.out)
    write_gw_matrix(matrix, os.path.join(out, "gw_pvalues.csv"))
    dump_gw_matrix_json(matrix, os.path.join(out, "gw_pvalues.json"))
    return EXIT_OK

def cmd_storage(args) -> int:
    panel = load_panel(args.data)
    dates, forecasts = read_forecasts(args.forecasts)
    actual, _ = _actuals(panel, dates)
    results = []
    for name in args.storage:
        spec = StorageSpec.from_archetype(name, cap=args.cap)
        results += backtest_storage(forecasts, actual, spec, include_perfect=True)
    write_storage_report(results, os.path.join(_out_dir(args.out), "storage.csv"))
    return EXIT_OK

def cmd_rfe(args) -> int:
    panel = load_panel(args.data)
    series = args.series if args.series else list(_fundamentals(args, panel))
    X, y = series_rows(panel, series, range(panel.n_days))
    trace = rfe_rf(X, y, series, ForestParams(n_trees=args.n_trees), seed=args.seed,
        validation_fraction=args.validation_fraction)
    write_rfe_trace(trace, os.path.join(_out_dir(args.out), "rfe_trace.csv"))
    logger.info("feature ranking: {}".format(", ".join(trace.ranking)))
    return EXIT_OK

def cmd_backtest(args) -> int:
    config = RunConfig.from_yaml(args.config)
    if args.seed is not None:
        config.seed = args.seed
    if args.arm is not None:
        config.arms = [args.arm]
    if args.models is not None:
        wanted = [name.strip() for name in args.models.split(",") if name.strip()]
        known = {spec["name"]: spec for spec in config.models}
        config = RunConfig.from_dict(dict(config.to_dict(),
            models=[known.get(name, {"name": name}) for name in wanted]))
    report = run_backtest(config, output=args.out)
    for row in report.metrics:
        logger.info("{:>16s}  MAE {:8.3f}  RMSE {:8.3f}  sMAPE {:7.2f}  rMAE {:6.3f}".format(
            row.model, row.mae, row.rmse, row.smape, row.rmae))
    return EXIT_OK

def _fundamentals(args, panel):
    names = getattr(args, "fundamentals", None)
    return tuple(names) if names else tuple(name for name in FUNDAMENTALS if name in panel)

def get_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    ap = argparse.ArgumentParser(prog="mcpcast",
        description="day-ahead electricity price forecasting with simulated market clearing prices")
    ap.add_argument("--log-level", type=str, default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="logging level")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic market panel and its fleet")
    p.add_argument("--config", "-c", type=str, default=None, help="synthetic market yaml")
    p.add_argument("--seed", "-s", type=int, default=0)
    p.add_argument("--out", "-o", type=str, required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("simulate-esm", help="clear the dispatch model over a panel")
    p.add_argument("--data", "-d", type=str, required=True, help="panel csv")
    p.add_argument("--fleet", "-f", type=str, required=True, help="fleet yaml")
    p.add_argument("--window-hours", type=int, default=36)
    p.add_argument("--keep-hours", type=int, default=24)
    p.add_argument("--out", "-o", type=str, required=True, help="output directory")
    p.set_defaults(func=cmd_simulate_esm)

    p = sub.add_parser("fit", help="calibrate a LEAR model and write its coefficients")
    p.add_argument("--data", "-d", type=str, required=True, help="panel csv")
    p.add_argument("--day", type=str, required=True, help="first forecast day, YYYY-MM-DD")
    p.add_argument("--window-days", type=int, default=364)
    p.add_argument("--arm", type=str, choices=ARMS, default="fundamentals")
    p.add_argument("--fundamentals", nargs="*", default=None)
    p.add_argument("--out", "-o", type=str, default=None, help="output directory, defaults to the mcpcast cache")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("forecast", help="forecast days with a saved LEAR model")
    p.add_argument("--data", "-d", type=str, required=True, help="panel csv")
    p.add_argument("--model-file", "-m", type=str, required=True, help="file written by `fit`")
    p.add_argument("--days", nargs="+", required=True, help="delivery days, YYYY-MM-DD")
    p.add_argument("--name", type=str, default="lear", help="model id in the forecast file")
    p.add_argument("--out", "-o", type=str, default=None, help="output directory, defaults to the mcpcast cache")
    p.set_defaults(func=cmd_forecast)

    for name, func, text in (("evaluate", cmd_evaluate, "error metrics of a forecast file"),
            ("gw", cmd_gw, "pairwise GW test p-values of a forecast file")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--data", "-d", type=str, required=True, help="panel csv with realized prices")
        p.add_argument("--forecasts", "-f", type=str, required=True, help="long format forecast csv")
        p.add_argument("--out", "-o", type=str, default=None, help="output directory, defaults to the mcpcast cache")
        p.set_defaults(func=func)

    p = sub.add_parser("storage", help="storage arbitrage value of a forecast file")
    p.add_argument("--data", "-d", type=str, required=True, help="panel csv with realized prices")
    p.add_argument("--forecasts", "-f", type=str, required=True, help="long format forecast csv")
    p.add_argument("--storage", nargs="+", default=["storage_1", "storage_2", "storage_3"])
    p.add_argument("--cap", type=float, default=1.0, help="rated power in MW")
    p.add_argument("--out", "-o", type=str, default=None, help="output directory, defaults to the mcpcast cache")
    p.set_defaults(func=cmd_storage)

    p = sub.add_parser("rfe", help="rank fundamentals by recursive forest feature elimination")
    p.add_argument("--data", "-d", type=str, required=True, help="panel csv")
    p.add_argument("--series", nargs="*", default=None)
    p.add_argument("--fundamentals", nargs="*", default=None)
    p.add_argument("--n-trees", type=int, default=50)
    p.add_argument("--validation-fraction", type=float, default=0.2)
    p.add_argument("--seed", "-s", type=int, default=0)
    p.add_argument("--out", "-o", type=str, default=None, help="output directory, defaults to the mcpcast cache")
    p.set_defaults(func=cmd_rfe)

    p = sub.add_parser("backtest", help="run a full experiment from a run config")
    p.add_argument("--config", "-c", type=str, required=True, help="run yaml")
    p.add_argument("--seed", "-s", type=int, default=None, help="overrides the config seed")
    p.add_argument("--out", "-o", type=str, default=None, help="overrides the config output directory")
    p.add_argument("--arm", type=str, choices=ARMS, default=None, help="run a single regressor arm")
    p.add_argument("--models", type=str, default=None, help="comma separated model names")
    p.set_defaults(func=cmd_backtest)

    return ap.parse_args(argv)

def main(argv: Optional[List[str]] = None) -> int:
    args = get_arguments(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, InvalidConfig) as e:
        logger.error("configuration error: {}".format(e))
        return EXIT_CONFIG
    except McpcastError as e:
        logger.error(str(e))
        return EXIT_RUNTIME

if __name__ == "__main__":
    # mcpcast backtest --config config_zoo/backtest_smoke.yaml --out reports
    sys.exit(main())
