import os

import pytest
import yaml

import mcpcast as mc
from mcpcast import cli

def _synth(tmp_path, n_days: int = 20) -> str:
    config = tmp_path / "synth.yaml"
    with open(config, "w") as foo:
        yaml.dump({"n_days": n_days}, foo)
    out = str(tmp_path / "market")
    assert cli.main(["synth", "--config", str(config), "--seed", "1", "--out", out]) == cli.EXIT_OK, \
        "synth must succeed"
    return out

def test_synth_writes_panel_and_fleet(tmp_path):
    out = _synth(tmp_path)
    panel = mc.dataset.load_panel(os.path.join(out, "panel.csv"))
    assert panel.n_days == 20 and "mcp" in panel, "synthetic panel must hold 20 days with the clearing price"
    fleet = mc.dispatch.load_fleet(os.path.join(out, "fleet.yaml"))
    assert fleet.n_units >= 1, "fleet must hold at least one unit"

def test_simulate_esm(tmp_path):
    out = _synth(tmp_path, n_days=3)
    code = cli.main(["simulate-esm", "--data", os.path.join(out, "panel.csv"),
        "--fleet", os.path.join(out, "fleet.yaml"), "--out", str(tmp_path / "esm")])
    assert code == cli.EXIT_OK, "simulate-esm must succeed"
    with open(str(tmp_path / "esm" / "mcp.csv")) as foo:
        lines = foo.read().strip().split("\n")
    assert lines[0] == "timestamp,mcp" and len(lines) == 3 * 24 + 1, "one clearing price per hour is expected"

def test_rfe(tmp_path):
    out = _synth(tmp_path)
    code = cli.main(["rfe", "--data", os.path.join(out, "panel.csv"), "--series", "load", "wind", "solar",
        "--n-trees", "5", "--out", str(tmp_path / "rfe")])
    assert code == cli.EXIT_OK, "rfe must succeed"
    with open(str(tmp_path / "rfe" / "rfe_trace.csv")) as foo:
        assert len(foo.read().strip().split("\n")) == 3, "three series need two elimination steps"

def test_missing_config_is_a_config_error(tmp_path):
    code = cli.main(["backtest", "--config", str(tmp_path / "missing.yaml")])
    assert code == cli.EXIT_CONFIG, "a missing config must exit with {} not {}".format(cli.EXIT_CONFIG, code)

def test_config_without_seed_is_a_config_error(tmp_path):
    path = tmp_path / "run.yaml"
    with open(path, "w") as foo:
        yaml.dump({"synth": {"n_days": 40}, "models": ["naive"]}, foo)
    assert cli.main(["backtest", "--config", str(path)]) == cli.EXIT_CONFIG, "a config without seed must be rejected"

def test_runtime_failure_exit_code(tmp_path):
    out = _synth(tmp_path)
    code = cli.main(["fit", "--data", os.path.join(out, "panel.csv"), "--day", "2021-01-06",
        "--window-days", "364", "--out", str(tmp_path / "fit")])
    assert code == cli.EXIT_RUNTIME, "missing history must exit with {} not {}".format(cli.EXIT_RUNTIME, code)

def test_backtest_then_evaluate(tmp_path):
    run = tmp_path / "run.yaml"
    with open(run, "w") as foo:
        yaml.dump({"seed": 0, "synth": {"n_days": 30}, "test_days": 3, "models": ["naive", "esm"],
            "output": str(tmp_path / "reports")}, foo)
    assert cli.main(["backtest", "--config", str(run)]) == cli.EXIT_OK, "backtest must succeed"

    # the synthetic market of seed 0 is the one the backtest ran on
    config = tmp_path / "synth.yaml"
    with open(config, "w") as foo:
        yaml.dump({"n_days": 30}, foo)
    out = str(tmp_path / "market")
    assert cli.main(["synth", "--config", str(config), "--seed", "0", "--out", out]) == cli.EXIT_OK
    code = cli.main(["evaluate", "--data", os.path.join(out, "panel.csv"),
        "--forecasts", str(tmp_path / "reports" / "forecasts.csv"), "--out", str(tmp_path / "eval")])
    assert code == cli.EXIT_OK, "evaluate must succeed"
    with open(str(tmp_path / "eval" / "metrics.csv")) as foo:
        lines = foo.read().strip().split("\n")
    assert [line.split(",")[0] for line in lines[1:]] == ["naive", "esm"], "one metrics row per model"

def test_unknown_command():
    with pytest.raises(SystemExit):
        cli.main(["train"])
