"""CLI behavior: run/validate subcommands, exit codes, CSV output."""

import json
import subprocess
import sys

import pytest

from irsopt import default_config, read_csv
from irsopt.cli import main


def write_config(tmp_path, **overrides):
    cfg = default_config(
        n_elements=5,
        realizations=2,
        sweep="elements",
        sweep_values=(4, 5),
        tau_list=(0.0, 1.0),
        algorithms=("dp", "baseline"),
        seed=3,
        **overrides,
    )
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg.to_dict()))
    return path


def test_validate_ok(tmp_path, capsys):
    path = write_config(tmp_path)
    assert main(["validate", "--config", str(path)]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_missing_file(tmp_path, capsys):
    assert main(["validate", "--config", str(tmp_path / "nope.json")]) == 2
    assert "config error" in capsys.readouterr().err


def test_validate_bad_schema(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"sweep": "frequency"}))
    assert main(["validate", "--config", str(path)]) == 2


def test_run_config_and_default_conflict(capsys):
    assert main(["run", "--config", "x.json", "--default"]) == 2
    assert main(["run"]) == 2


def test_run_writes_csv(tmp_path, capsys):
    config = write_config(tmp_path)
    out = tmp_path / "out.csv"
    assert main(["run", "--config", str(config), "--out", str(out)]) == 0
    records = read_csv(out)
    # 2 sweep values x 2 taus x 2 algorithms
    assert len(records) == 8
    assert {r.algorithm for r in records} == {"dp", "baseline"}


def test_run_overrides(tmp_path):
    config = write_config(tmp_path)
    out = tmp_path / "nu.csv"
    code = main(
        [
            "run", "--config", str(config), "--out", str(out),
            "--sweep", "nu", "--realizations", "1", "--algorithms", "dp", "--seed", "9",
        ]
    )
    assert code == 0
    records = read_csv(out)
    assert {r.sweep_var for r in records} == {"nu"}
    assert {r.algorithm for r in records} == {"dp"}
    assert all(r.realizations == 1 for r in records)


def test_run_runtime_error_exit_code(tmp_path, capsys):
    config = write_config(tmp_path)
    out = tmp_path / "missing_dir" / "out.csv"
    assert main(["run", "--config", str(config), "--out", str(out)]) == 3
    assert "error" in capsys.readouterr().err


def test_console_script_end_to_end(tmp_path):
    config = write_config(tmp_path)
    proc = subprocess.run(
        [sys.executable, "-m", "irsopt.cli", "validate", "--config", str(config)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "ok" in proc.stdout
