"""Reader/render unit tests plus the end-to-end pipeline acceptance check.

The pipeline test drives the experiment runner through its CLI and consumes
only the published CSV format, which is the interface between the packages.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from irsplots import FigureSpec, SchemaError, collect_series, read_rows, render
from irsplots.cli import main
from irsplots.reader import EXPECTED_COLUMNS

HEADER = ",".join(EXPECTED_COLUMNS)

SAMPLE_ROWS = [
    "elements,4.0,0.0,dp,1.5,3.0,2.0,1.0,5",
    "elements,4.0,0.0,baseline,1.2,3.1,4.0,1.0,5",
    "elements,8.0,0.0,dp,1.8,3.5,3.0,1.0,5",
    "elements,8.0,0.0,baseline,1.4,3.6,8.0,1.0,5",
]


def write_csv(path: Path, lines) -> Path:
    path.write_text("\n".join(lines) + "\n")
    return path


# ---------------------------------------------------------------------------
# Reader
# ---------------------------------------------------------------------------


def test_read_rows_roundtrip(tmp_path):
    path = write_csv(tmp_path / "ok.csv", [HEADER, *SAMPLE_ROWS])
    rows = read_rows(path)
    assert len(rows) == 4
    assert rows[0].algorithm == "dp" and rows[0].mean_ee == 1.5
    assert rows[1].realizations == 5


def test_read_rows_names_missing_column(tmp_path):
    path = write_csv(tmp_path / "bad.csv", ["sweep_var,sweep_value,tau,algorithm,mean_se", "x"])
    with pytest.raises(SchemaError, match="mean_ee"):
        read_rows(path)


def test_read_rows_names_unexpected_column(tmp_path):
    path = write_csv(tmp_path / "bad.csv", [HEADER + ",extra_column"])
    with pytest.raises(SchemaError, match="extra_column"):
        read_rows(path)


def test_read_rows_renamed_column_reports_the_missing_one(tmp_path):
    path = write_csv(tmp_path / "bad.csv", [HEADER.replace("mean_se", "median_se")])
    with pytest.raises(SchemaError, match="mean_se"):
        read_rows(path)


def test_read_rows_names_non_numeric_column(tmp_path):
    row = "elements,4.0,0.0,dp,not_a_number,3.0,2.0,1.0,5"
    path = write_csv(tmp_path / "bad.csv", [HEADER, row])
    with pytest.raises(SchemaError, match="mean_ee"):
        read_rows(path)


def test_collect_series_checks_axis(tmp_path):
    path = write_csv(tmp_path / "ok.csv", [HEADER, *SAMPLE_ROWS])
    rows = read_rows(path)
    with pytest.raises(SchemaError, match="sweep_var"):
        collect_series(rows, "power_dbm")


def test_collect_series_sorted_and_deterministic(tmp_path):
    path = write_csv(tmp_path / "ok.csv", [HEADER, *reversed(SAMPLE_ROWS)])
    rows = read_rows(path)
    series = collect_series(rows, "elements")
    assert series[("dp", 0.0)] == [(4.0, 1.5), (8.0, 1.8)]
    assert series == collect_series(read_rows(path), "elements")


# ---------------------------------------------------------------------------
# Render
# ---------------------------------------------------------------------------


def test_render_header_only_csv(tmp_path):
    path = write_csv(tmp_path / "empty.csv", [HEADER])
    out = tmp_path / "empty.png"
    render(FigureSpec(csv_path=str(path), x_axis="elements", output_path=str(out)))
    assert out.exists() and out.stat().st_size > 0


def test_render_writes_figure(tmp_path):
    path = write_csv(tmp_path / "ok.csv", [HEADER, *SAMPLE_ROWS])
    out = tmp_path / "curve.png"
    render(FigureSpec(csv_path=str(path), x_axis="elements", output_path=str(out)))
    assert out.exists() and out.stat().st_size > 1000


def test_figure_spec_rejects_unknown_axis(tmp_path):
    with pytest.raises(SchemaError, match="x_axis"):
        FigureSpec(csv_path="x.csv", x_axis="frequency", output_path="y.png")


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def test_cli_success(tmp_path, capsys):
    path = write_csv(tmp_path / "ok.csv", [HEADER, *SAMPLE_ROWS])
    out = tmp_path / "fig.png"
    assert main(["--csv", str(path), "--x", "elements", "--out", str(out)]) == 0
    assert out.exists()


def test_cli_schema_error(tmp_path, capsys):
    path = write_csv(tmp_path / "bad.csv", ["wrong,header"])
    assert main(["--csv", str(path), "--x", "elements", "--out", str(tmp_path / "f.png")]) == 2
    assert "schema error" in capsys.readouterr().err


def test_cli_missing_file(tmp_path, capsys):
    assert main(["--csv", str(tmp_path / "nope.csv"), "--x", "nu", "--out", str(tmp_path / "f.png")]) == 2


# ---------------------------------------------------------------------------
# Acceptance: the full pipeline against the experiment runner
# ---------------------------------------------------------------------------


def run_harness(tmp_path: Path, name: str, config: dict) -> Path:
    config_path = tmp_path / f"{name}.json"
    config_path.write_text(json.dumps(config))
    out = tmp_path / f"{name}.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "irsopt.cli", "run", "--config", str(config_path), "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return out


def test_acceptance_plot_pipeline(tmp_path):
    """Criterion: three figures; dp == exhaustive point-for-point; dp >= baseline."""
    shared = {
        "realizations": 5,
        "seed": 17,
        "tau_list": [0.0, 0.5, 1.0],
        "algorithms": ["dp", "exhaustive", "baseline"],
        "n_elements": 8,
    }
    sweeps = {
        "elements": {**shared, "sweep": "elements", "sweep_values": [4, 6, 8, 10, 12]},
        "power_dbm": {**shared, "sweep": "power",
                      "sweep_values": [-10, 0, 10, 20, 30, 40]},
        "nu": {**shared, "sweep": "nu", "sweep_values": [0.0, 0.25, 0.5, 0.75, 1.0]},
    }

    figures = []
    for x_axis, config in sweeps.items():
        csv_path = run_harness(tmp_path, x_axis, config)
        out = tmp_path / f"{x_axis}.png"
        assert main(["--csv", str(csv_path), "--x", x_axis, "--out", str(out)]) == 0
        assert out.exists() and out.stat().st_size > 1000
        figures.append(out)

        series = collect_series(read_rows(csv_path), x_axis)
        taus = sorted({tau for _, tau in series})
        for tau in taus:
            # the solver and its oracle agree point for point (the solvers sum
            # amplitudes along independent paths, so equality holds at the
            # oracle-equivalence tolerance rather than bit-exactly)
            dp_curve = series[("dp", tau)]
            oracle_curve = series[("exhaustive", tau)]
            assert [x for x, _ in dp_curve] == [x for x, _ in oracle_curve]
            for (_, dp_ee), (_, oracle_ee) in zip(dp_curve, oracle_curve):
                assert dp_ee == pytest.approx(oracle_ee, rel=1e-12)
            # the optimizer dominates the all-on baseline everywhere
            base_curve = series[("baseline", tau)]
            assert [x for x, _ in dp_curve] == [x for x, _ in base_curve]
            for (_, dp_ee), (_, base_ee) in zip(dp_curve, base_curve):
                assert dp_ee >= base_ee

    assert len(figures) == 3
    print("PASS criterion 9 (plot pipeline): 3 figures; dp == exhaustive; dp >= baseline")
