__all__ = [
    "RunConfig", "BacktestReport", "load_run_panel", "run_backtest",
    "write_forecasts", "read_forecasts", "MANIFEST_PACKAGES"
]

from typing import Dict, IO, List, Mapping, Optional, Sequence, Tuple, Union
from dataclasses import dataclass, field, asdict
import hashlib
import json
import logging
import os

import numpy as np
import pandas as pd
import yaml
from tqdm import tqdm

from .dataset.base import HourlyPanel, HOURS, PRICE, MCP, FUNDAMENTALS
from .dataset.features import naive_forecast
from .dataset.synthetic import SynthConfig, synth_market
from .dataset.tabular import load_panel
from .dispatch.clearing import rolling_mcp
from .dispatch.fleet import load_fleet
from .errors import McpcastError, ConfigError, BacktestError
from .forecaster import ARMS, __FORECASTERS__, build_forecaster, model_id
from .forest import ForestParams, rfe_rf, series_rows, write_rfe_trace, RfeTrace
from .metric import (
    MetricsReport,
    GWMatrix,
    metrics,
    gw_matrix,
    write_metrics,
    write_gw_matrix,
    dump_gw_matrix_json
)
from .metric.functional.gw import MIN_DAYS
from .storage import StorageSpec, StorageResult, backtest_storage, write_storage_report
from .version import __version__

logger = logging.getLogger("mcpcast.backtest")

MANIFEST_PACKAGES = ("numpy", "pandas", "scipy", "sklearn", "torch", "pytorch_lightning")

@dataclass
class RunConfig:
    """End to end experiment description.

    The market comes either from a panel csv (`data`, with an optional `fleet` to
    simulate the clearing price when the file has no `mcp` column) or from the
    synthetic generator (`synth`). Relative paths are resolved against the
    directory of the config file.
    """
    seed: int
    models: List[Dict]
    arms: List[str] = field(default_factory=lambda: ["fundamentals"])
    test_days: int = 28
    data: Optional[str] = None
    fleet: Optional[str] = None
    synth: Optional[Dict] = None
    schema: Optional[Dict[str, str]] = None
    fundamentals: Optional[List[str]] = None
    storage: List[Union[str, Dict]] = field(default_factory=list)
    rfe: Optional[Dict] = None
    audit: bool = True
    progress: bool = False
    output: str = "reports"

    def __post_init__(self):
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("`seed` must be an explicit integer, given {!r}".format(self.seed))
        if (self.data is None) == (self.synth is None):
            raise ConfigError("exactly one of `data` and `synth` must be given")
        if self.data is not None and not os.path.isfile(self.data):
            raise ConfigError("panel file `{}` does not exist".format(self.data))
        if self.fleet is not None and not os.path.isfile(self.fleet):
            raise ConfigError("fleet file `{}` does not exist".format(self.fleet))
        if not self.arms or any(arm not in ARMS for arm in self.arms):
            raise ConfigError("arms must be a non empty subset of {}, given {}".format(list(ARMS), self.arms))
        if not self.models:
            raise ConfigError("at least one model is required")
        self.models = [{"name": m} if isinstance(m, str) else dict(m) for m in self.models]
        for spec in self.models:
            if spec.get("name") not in __FORECASTERS__:
                raise ConfigError("unknown model `{}`, choose one of {}".format(spec.get("name"), list(__FORECASTERS__)))
        if self.test_days < 1:
            raise ConfigError("`test_days` must be at least 1 not {}".format(self.test_days))

    @classmethod
    def from_dict(cls, config: Mapping, base_dir: str = ".") -> "RunConfig":
        config = dict(config)
        known = set(cls.__dataclass_fields__)
        unknown = set(config) - known
        if unknown:
            raise ConfigError("unknown run configuration keys: {}".format(", ".join(sorted(unknown))))
        if "seed" not in config:
            raise ConfigError("run configuration must fix `seed`")
        if "models" not in config:
            raise ConfigError("run configuration must list `models`")
        for key in ("data", "fleet"):
            if config.get(key) is not None and not os.path.isabs(config[key]):
                config[key] = os.path.join(base_dir, config[key])
        return cls(**config)

    @classmethod
    def from_yaml(cls, yaml_file_path: str) -> "RunConfig":
        if not os.path.isfile(yaml_file_path):
            raise ConfigError("could not find the config file given {}".format(yaml_file_path))
        with open(yaml_file_path, "r") as foo:
            try:
                config = yaml.load(foo, Loader=yaml.FullLoader)
            except yaml.YAMLError as e:
                raise ConfigError("config file {} is not valid yaml: {}".format(yaml_file_path, e)) from e
        if not isinstance(config, dict):
            raise ConfigError("config file {} must hold a mapping".format(yaml_file_path))
        return cls.from_dict(config, base_dir=os.path.dirname(os.path.abspath(yaml_file_path)))

    def to_dict(self) -> Dict:
        return asdict(self)

    def storage_specs(self) -> List[StorageSpec]:
        specs = []
        for entry in self.storage:
            try:
                if isinstance(entry, str):
                    specs.append(StorageSpec.from_archetype(entry))
                else:
                    entry = dict(entry)
                    name = entry.pop("name", "storage")
                    if "ecr" not in entry and "eta" not in entry:
                        specs.append(StorageSpec.from_archetype(name, **entry))
                    else:
                        specs.append(StorageSpec(name=name, **entry))
            except (McpcastError, TypeError) as e:
                raise ConfigError("invalid storage entry {}: {}".format(entry, e)) from e
        return specs


@dataclass
class BacktestReport:
    dates: np.ndarray
    actual: np.ndarray
    forecasts: Dict[str, np.ndarray]
    metrics: List[MetricsReport]
    gw: Optional[GWMatrix]
    storage: List[StorageResult]
    rfe: Optional[RfeTrace]
    files: List[str]


def load_run_panel(config: RunConfig) -> HourlyPanel:
    """market panel of a run, with the simulated clearing price merged when needed"""
    if config.synth is not None:
        try:
            synth = SynthConfig.from_dict(config.synth)
        except McpcastError as e:
            raise ConfigError("invalid `synth` section: {}".format(e)) from e
        panel, _ = synth_market(synth, config.seed)
        return panel

    panel = load_panel(config.data, schema=config.schema)
    if MCP not in panel and config.fleet is not None:
        fleet = load_fleet(config.fleet)
        panel = panel.with_series(MCP, rolling_mcp(fleet, panel))
        logger.info("simulated the clearing price of {} days".format(panel.n_days))
    return panel

def _fundamentals(config: RunConfig, panel: HourlyPanel) -> Tuple[str, ...]:
    if config.fundamentals is not None:
        missing = [name for name in config.fundamentals if name not in panel]
        if missing:
            raise ConfigError("fundamentals {} are not in the panel".format(missing))
        return tuple(config.fundamentals)
    return tuple(name for name in FUNDAMENTALS if name in panel)

def write_forecasts(dates: np.ndarray, forecasts: Mapping[str, np.ndarray], stream: Union[str, IO]):
    """long format csv: model,date,hour,price"""
    frames = []
    for model, values in forecasts.items():
        values = np.asarray(values).reshape(-1, HOURS)
        frames.append(pd.DataFrame({
            "model": model,
            "date": np.repeat(np.asarray(dates[:values.shape[0]]).astype(str), HOURS),
            "hour": np.tile(np.arange(HOURS), values.shape[0]),
            # repr parses back to the same double
            "price": [repr(float(v)) for v in values.reshape(-1)]
        }))
    frame = pd.concat(frames, ignore_index=True) if frames else \
        pd.DataFrame(columns=["model", "date", "hour", "price"])
    frame.to_csv(stream, index=False, lineterminator="\n")

def _manifest(config: RunConfig, files: Sequence[str]) -> Dict:
    canonical = json.dumps(config.to_dict(), sort_keys=True, default=str)
    versions = {"mcpcast": __version__}
    for name in MANIFEST_PACKAGES:
        try:
            versions[name] = __import__(name).__version__
        except ImportError:
            versions[name] = None
    return {
        "config_sha256": hashlib.sha256(canonical.encode("utf-8")).hexdigest(),
        "seed": config.seed,
        "arms": list(config.arms),
        "models": [spec["name"] for spec in config.models],
        "files": sorted(os.path.basename(f) for f in files),
        "versions": versions
    }

def _forecast_model(panel: HourlyPanel, forecaster, ident: str, arm: str, test: np.ndarray,
        audit: bool, progress: bool) -> np.ndarray:
    preds = np.full((test.size, HOURS), np.nan)
    for k, d in enumerate(tqdm(test, desc=ident, disable=not progress)):
        view = panel.masked_at(d) if audit else panel
        try:
            if not forecaster.fitted or k % forecaster.refit_every == 0:
                forecaster.fit(view, d)
            preds[k] = forecaster.predict(view, d)
        except McpcastError as e:
            error = BacktestError(ident, arm, str(panel.date_of(d)), e)
            error.partial = preds[:k]
            raise error from e
    return preds

def run_backtest(config: RunConfig, output: Optional[str] = None, panel: Optional[HourlyPanel] = None) -> BacktestReport:
    """Rolls every model of every arm over the test days and writes the reports

    Each test day is forecast from the panel as known at its bid deadline; models
    recalibrate every `refit_every` days. Metrics, the GW matrix (when the test
    window holds enough days) and the storage values are written to `output`.

    Args:
        config (RunConfig): experiment description
        output (str, optional): report directory. Defaults to `config.output`.
        panel (HourlyPanel, optional): market panel overriding the configured source

    Returns:
        BacktestReport: forecasts, reports and the written files
    """
    output = config.output if output is None else output
    os.makedirs(output, exist_ok=True)
    panel = load_run_panel(config) if panel is None else panel
    fundamentals = _fundamentals(config, panel)
    storage_specs = config.storage_specs()

    if config.test_days + 7 >= panel.n_days:
        raise ConfigError("{} test days do not fit in a panel of {} days".format(config.test_days, panel.n_days))
    test = np.arange(panel.n_days - config.test_days, panel.n_days)
    dates = np.array([panel.date_of(d) for d in test])
    actual = panel[PRICE][test]
    naive = np.stack([naive_forecast(panel, d) for d in test])

    files: List[str] = []
    forecasts: Dict[str, np.ndarray] = {}
    forecasts_path = os.path.join(output, "forecasts.csv")

    for arm in config.arms:
        for spec in config.models:
            settings = {key: value for key, value in spec.items() if key != "name"}
            ident = model_id(spec["name"], arm)
            if ident in forecasts:
                continue
            forecaster = build_forecaster(spec["name"], arm, fundamentals, seed=config.seed, **settings)
            logger.info("forecasting {} test days with `{}` ({})".format(test.size, ident, forecaster))
            try:
                forecasts[ident] = _forecast_model(panel, forecaster, ident, arm, test, config.audit, config.progress)
            except BacktestError as e:
                # flush what is known before failing
                write_forecasts(dates, dict(forecasts, **{ident: e.partial}), forecasts_path)
                raise

    write_forecasts(dates, forecasts, forecasts_path)
    files.append(forecasts_path)

    reports = [metrics(pred, actual, naive, model=ident) for ident, pred in forecasts.items()]
    path = os.path.join(output, "metrics.csv")
    write_metrics(reports, path)
    files.append(path)

    matrix = None
    if len(forecasts) >= 2 and test.size >= MIN_DAYS:
        matrix = gw_matrix({ident: pred - actual for ident, pred in forecasts.items()})
        for name, writer in (("gw_pvalues.csv", write_gw_matrix), ("gw_pvalues.json", dump_gw_matrix_json)):
            path = os.path.join(output, name)
            writer(matrix, path)
            files.append(path)
    elif len(forecasts) >= 2:
        logger.warning("GW test needs {} test days, skipped for {}".format(MIN_DAYS, test.size))

    storage_results: List[StorageResult] = []
    for storage in storage_specs:
        storage_results += backtest_storage(forecasts, actual, storage, include_perfect=True)
    if storage_specs:
        path = os.path.join(output, "storage.csv")
        write_storage_report(storage_results, path)
        files.append(path)

    trace = None
    if config.rfe is not None:
        rfe = dict(config.rfe)
        series = list(rfe.pop("series", fundamentals))
        fraction = float(rfe.pop("validation_fraction", 0.2))
        X, y = series_rows(panel, series, range(0, int(test[0])))
        try:
            params = ForestParams(**rfe)
        except (TypeError, AssertionError) as e:
            raise ConfigError("invalid `rfe` section: {}".format(e)) from e
        trace = rfe_rf(X, y, series, params, seed=config.seed, validation_fraction=fraction)
        path = os.path.join(output, "rfe_trace.csv")
        write_rfe_trace(trace, path)
        files.append(path)

    path = os.path.join(output, "manifest.json")
    files.append(path)
    with open(path, "w", encoding="utf-8") as foo:
        foo.write(json.dumps(_manifest(config, files), indent=2, sort_keys=True) + "\n")

    logger.info("reports written to {}".format(output))
    return BacktestReport(dates=dates, actual=actual, forecasts=forecasts, metrics=reports, gw=matrix,
        storage=storage_results, rfe=trace, files=files)

def read_forecasts(source: Union[str, IO]) -> Tuple[np.ndarray, Dict[str, np.ndarray]]:
    """Reads a long format forecast csv back into (n_days, 24) arrays per model

    Returns:
        Tuple[np.ndarray, Dict[str, np.ndarray]]: sorted days and forecasts per model in file order
    """
    frame = pd.read_csv(source, float_precision="round_trip")
    for column in ("model", "date", "hour", "price"):
        if column not in frame.columns:
            raise ConfigError("forecast file lacks the `{}` column".format(column))
    frame["date"] = pd.to_datetime(frame["date"])
    dates = np.unique(frame["date"].to_numpy().astype("datetime64[D]"))
    forecasts = {}
    for model in pd.unique(frame["model"]):
        rows = frame[frame["model"] == model]
        table = rows.pivot(index="date", columns="hour", values="price")
        table = table.reindex(index=pd.DatetimeIndex(dates), columns=np.arange(HOURS))
        forecasts[str(model)] = table.to_numpy(dtype=np.float64)
    return dates, forecasts
