"""Parse sweep CSVs written by the experiment harness.

The file format is the interface between the two packages: a fixed header,
one row per (sweep value, tau, algorithm) cell, full-precision numbers.
Errors name the offending column so schema drift is easy to diagnose.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

EXPECTED_COLUMNS = (
    "sweep_var",
    "sweep_value",
    "tau",
    "algorithm",
    "mean_ee",
    "mean_se",
    "mean_m_star",
    "feasibility_rate",
    "realizations",
)

_FLOAT_COLUMNS = ("sweep_value", "tau", "mean_ee", "mean_se", "mean_m_star", "feasibility_rate")


class SchemaError(ValueError):
    """The CSV does not match the sweep schema; the message names the column."""


@dataclass(frozen=True)
class SweepRow:
    sweep_var: str
    sweep_value: float
    tau: float
    algorithm: str
    mean_ee: float
    mean_se: float
    mean_m_star: float
    feasibility_rate: float
    realizations: int


def read_rows(path) -> list:
    """Read and validate every row; raises SchemaError with the column name."""
    path = Path(path)
    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header row") from None

        if tuple(header) != EXPECTED_COLUMNS:
            missing = [c for c in EXPECTED_COLUMNS if c not in header]
            unexpected = [c for c in header if c not in EXPECTED_COLUMNS]
            if missing:
                raise SchemaError(f"{path}: missing column {missing[0]!r}")
            if unexpected:
                raise SchemaError(f"{path}: unexpected column {unexpected[0]!r}")
            raise SchemaError(f"{path}: columns out of order, expected {EXPECTED_COLUMNS}")

        rows = []
        for line_no, values in enumerate(reader, start=2):
            if not values:
                continue
            if len(values) != len(EXPECTED_COLUMNS):
                raise SchemaError(f"{path}:{line_no}: expected {len(EXPECTED_COLUMNS)} fields")
            record = dict(zip(EXPECTED_COLUMNS, values))
            parsed = {}
            for column in _FLOAT_COLUMNS:
                try:
                    parsed[column] = float(record[column])
                except ValueError:
                    raise SchemaError(
                        f"{path}:{line_no}: column {column!r} is not numeric: {record[column]!r}"
                    ) from None
            try:
                realizations = int(record["realizations"])
            except ValueError:
                raise SchemaError(
                    f"{path}:{line_no}: column 'realizations' is not an integer: "
                    f"{record['realizations']!r}"
                ) from None
            rows.append(
                SweepRow(
                    sweep_var=record["sweep_var"],
                    algorithm=record["algorithm"],
                    realizations=realizations,
                    **parsed,
                )
            )
    return rows
