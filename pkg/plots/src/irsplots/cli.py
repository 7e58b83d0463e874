"""Batch figure generator: one sweep CSV in, one image out.

Exit codes: 0 success, 2 schema/argument error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .reader import SchemaError
from .render import X_AXES, FigureSpec, render


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsplot",
        description="Plot worst-case EE curves from an experiment sweep CSV.",
    )
    parser.add_argument("--csv", required=True, help="sweep CSV produced by the experiment runner")
    parser.add_argument("--x", required=True, choices=X_AXES, help="swept axis of the CSV")
    parser.add_argument("--out", required=True, help="output image path (extension picks the format)")
    parser.add_argument("--title", default="Worst-case energy efficiency")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        render(FigureSpec(csv_path=args.csv, x_axis=args.x, output_path=args.out, title=args.title))
        print(f"wrote {args.out}")
        return 0
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
