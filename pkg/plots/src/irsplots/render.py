"""Render worst-case EE curves from a sweep CSV.

One line per (algorithm, tau) pair: tau picks the color, the algorithm picks
the marker, mirroring the three-curve-family layout of the reference plots.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .reader import SchemaError, SweepRow, read_rows

X_AXES = ("elements", "power_dbm", "nu")

_X_LABELS = {
    "elements": "Number of IRS elements",
    "power_dbm": "Transmit power (dBm)",
    "nu": "Minimum-SNR control parameter",
}
_Y_LABEL = "Worst-case EE (bits/s/Hz/W)"
_MARKERS = {"dp": "o", "exhaustive": "s", "baseline": "^"}
_FALLBACK_MARKERS = ("v", "D", "*", "x")


@dataclass(frozen=True)
class FigureSpec:
    csv_path: str
    x_axis: str
    output_path: str
    title: str = "Worst-case energy efficiency"

    def __post_init__(self):
        if self.x_axis not in X_AXES:
            raise SchemaError(f"x_axis must be one of {X_AXES}, got {self.x_axis!r}")


def collect_series(rows: list, x_axis: str) -> dict:
    """Group rows into {(algorithm, tau): sorted [(x, mean_ee), ...]}."""
    for row in rows:
        if row.sweep_var != x_axis:
            raise SchemaError(
                f"column 'sweep_var' holds {row.sweep_var!r} but the x-axis is {x_axis!r}"
            )
    series: dict = {}
    for row in rows:
        series.setdefault((row.algorithm, row.tau), []).append((row.sweep_value, row.mean_ee))
    return {key: sorted(points) for key, points in sorted(series.items())}


def _marker(algorithm: str, index: int) -> str:
    return _MARKERS.get(algorithm, _FALLBACK_MARKERS[index % len(_FALLBACK_MARKERS)])


def render(spec: FigureSpec) -> None:
    """Write one figure for one sweep CSV; empty input gives empty axes."""
    rows = read_rows(spec.csv_path)
    series = collect_series(rows, spec.x_axis)

    taus = sorted({tau for _, tau in series})
    colors = plt.cm.viridis([0.1 + 0.8 * i / max(1, len(taus) - 1) for i in range(len(taus))])
    color_of = dict(zip(taus, colors))

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for index, ((algorithm, tau), points) in enumerate(series.items()):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        ax.plot(
            xs,
            ys,
            marker=_marker(algorithm, index),
            color=color_of[tau],
            label=f"{algorithm}, tau={tau:g}",
        )
    ax.set_xlabel(_X_LABELS[spec.x_axis])
    ax.set_ylabel(_Y_LABEL)
    ax.set_title(spec.title)
    ax.grid(True, alpha=0.3)
    if series:
        ax.legend()
    fig.tight_layout()
    fig.savefig(Path(spec.output_path))
    plt.close(fig)
