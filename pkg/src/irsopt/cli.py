"""Command-line interface: run a sweep to CSV, or validate a config.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import ConfigError
from .harness import (
    ExperimentConfig,
    _default_sweep_values,
    run_sweep,
    write_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsopt",
        description="Robust IRS-element activation experiments (worst-case EE sweeps).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a sweep and write the averaged CSV")
    run_p.add_argument("--config", help="path to a JSON experiment config")
    run_p.add_argument("--default", action="store_true", help="use the built-in default setup")
    run_p.add_argument("--seed", type=int, help="override the config seed")
    run_p.add_argument("--out", help="output CSV path (default: <sweep>_sweep.csv)")
    run_p.add_argument("--sweep", choices=("elements", "power", "nu"), help="override the swept axis")
    run_p.add_argument("--algorithms", help="comma-separated subset of dp,exhaustive,baseline")
    run_p.add_argument("--realizations", type=int, help="override the realization count")

    val_p = sub.add_parser("validate", help="check a config without running anything")
    val_p.add_argument("--config", required=True, help="path to a JSON experiment config")
    return parser


def _load_run_config(args: argparse.Namespace) -> ExperimentConfig:
    if args.default and args.config:
        raise ConfigError("pass either --config or --default, not both")
    if not args.default and not args.config:
        raise ConfigError("one of --config or --default is required")
    config = ExperimentConfig() if args.default else ExperimentConfig.from_json(args.config)

    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.realizations is not None:
        overrides["realizations"] = args.realizations
    if args.sweep is not None and args.sweep != config.sweep:
        overrides["sweep"] = args.sweep
        overrides["sweep_values"] = _default_sweep_values(args.sweep)
    if args.algorithms is not None:
        overrides["algorithms"] = tuple(a.strip() for a in args.algorithms.split(",") if a.strip())
    if overrides:
        config = replace(config, **overrides)
    config.validate()
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            ExperimentConfig.from_json(args.config)
            print(f"config ok: {args.config}")
            return EXIT_OK

        config = _load_run_config(args)
        records = run_sweep(config)
        out = args.out or f"{config.sweep}_sweep.csv"
        write_csv(records, out)
        print(f"wrote {len(records)} records to {out}")
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - CLI boundary maps everything to exit 3
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
