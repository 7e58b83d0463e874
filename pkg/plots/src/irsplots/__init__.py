"""Figure generation for IRS-activation sweep CSVs."""

from .reader import EXPECTED_COLUMNS, SchemaError, SweepRow, read_rows
from .render import FigureSpec, collect_series, render

__all__ = [
    "EXPECTED_COLUMNS",
    "FigureSpec",
    "SchemaError",
    "SweepRow",
    "collect_series",
    "read_rows",
    "render",
]

__version__ = "0.1.0"
