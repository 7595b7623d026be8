"""Command-line driver: ``tebdkit run`` and ``tebdkit sweep``.

Exit codes: 0 success, 2 configuration error, 3 resource error.
"""

from __future__ import annotations

import argparse
import sys

from .config import (
    apply_overrides,
    experiment_from_mapping,
    parse_kv_file,
    sweep_from_mapping,
)
from .errors import ConfigError, ResourceError
from .runner import run_experiment, run_gamma_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tebdkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one simulation from a config file")
    run.add_argument("--config", required=True)
    run.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    run.add_argument("--output", default=None)
    run.add_argument("--measure-every", type=int, default=None)

    sweep = sub.add_parser("sweep", help="run a (gamma, chi) sweep from a config file")
    sweep.add_argument("--config", required=True)
    sweep.add_argument("--output", default=None)
    sweep.add_argument("--workers", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        mapping = parse_kv_file(args.config)
        if args.command == "run":
            mapping = apply_overrides(mapping, args.override)
            if args.measure_every is not None:
                mapping["measure_every"] = str(args.measure_every)
            config = experiment_from_mapping(mapping)
            output = args.output or config.output_path
            if not output:
                raise ConfigError("no output path: set output_path or pass --output")
            csv_path, _ = run_experiment(config, output)
            print(csv_path)
        else:
            sweep = sweep_from_mapping(mapping)
            output = args.output or sweep.base.output_path
            if not output:
                raise ConfigError("no output path: set output_path or pass --output")
            print(run_gamma_sweep(sweep, output, workers=args.workers))
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
