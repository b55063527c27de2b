"""``pots-sim`` command line.

Exit status: 0 on success, 1 for invalid input or configuration, 2 when a
simulation or output step fails.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .engine import default_workers
from .experiment import BOTH_SCHEMES, load_config, preset, preset_names, run_grid
from .model import AllocationScheme, ValidationError
from .output import emit_csv, emit_plotdata

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _team_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes:
        raise argparse.ArgumentTypeError("no team sizes given")
    return sizes


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pots-sim", description="Proof of Team Sprint reward fairness simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment grid and write CSV outputs")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", type=Path, help="JSON grid config")
    source.add_argument("--preset", help="named paper scenario (see 'pots-sim presets')")
    run.add_argument("--seed", type=_seed, help="master seed (u64), overrides the config")
    run.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    run.add_argument("--rounds", type=_positive)
    run.add_argument("--runs", type=_positive)
    run.add_argument("--team-sizes", type=_team_sizes, help="e.g. 1,2,4,8")
    run.add_argument("--scheme", choices=("equal", "proportional", "both"))
    run.add_argument("--format", choices=("csv", "plotdata", "both"), default="both")
    run.add_argument("--workers", type=_positive,
                     help="worker threads (default: $POTS_SIM_THREADS or 1)")

    sub.add_parser("presets", help="list preset names")
    return parser


def _run(args) -> int:
    grid = load_config(args.config, validate=False) if args.config else preset(args.preset)
    schemes = None
    if args.scheme == "both":
        schemes = BOTH_SCHEMES
    elif args.scheme:
        schemes = (AllocationScheme.parse(args.scheme),)
    grid = grid.with_overrides(
        master_seed=args.seed,
        rounds=args.rounds,
        runs=args.runs,
        team_sizes=args.team_sizes,
        schemes=schemes,
    )
    grid.validate()
    workers = args.workers if args.workers else default_workers()

    reports = run_grid(grid, workers=workers)
    if args.format in ("csv", "both"):
        print(emit_csv(reports, args.out / "results.csv"))
    if args.format in ("plotdata", "both"):
        for path in emit_plotdata(reports, args.out / "plotdata"):
            print(path)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        print("\n".join(preset_names()))
        return EXIT_OK
    try:
        return _run(args)
    except ValidationError as exc:
        print(f"pots-sim: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:
        print(f"pots-sim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
