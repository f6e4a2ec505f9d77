"""Command-line front end.

Subcommands: sweep (run a configured parameter sweep), optimal-time (search
the best interaction time for one parameter point), figure (emit a figure
dataset), oracle-check (run the verification battery) and version.

Exit codes: 0 success, 1 validation error, 2 numerical or oracle failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import __version__
from .chi import InteractionKind, PARAMETRIC_TAU_CAP
from .errors import ConfigError, CvPurifyError, DomainError
from .checks import oracle_check
from .figures import FIGURES, emit_figure_data
from .sweep import SweepConfig, find_optimal_time, run_sweep, write_sweep

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvpurify",
        description="Entanglement purification of two optical modes via "
        "atomic-ensemble nodes: sweeps, optimal times, figure data "
        "and oracle cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep described by a JSON config")
    p_sweep.add_argument("--config", required=True, help="path to the sweep config")

    p_opt = sub.add_parser("optimal-time", help="maximize F11 over interaction time")
    p_opt.add_argument(
        "--kind",
        required=True,
        choices=[k.value for k in InteractionKind],
    )
    p_opt.add_argument("--swap", action="store_true", help="measure the optical modes")
    p_opt.add_argument("--lambda", dest="lam", type=float, required=True)
    p_opt.add_argument("--nth", type=float, default=0.0)
    p_opt.add_argument("--window-lo", type=float, default=None)
    p_opt.add_argument("--window-hi", type=float, default=None)
    p_opt.add_argument("--p-min", type=float, default=1e-6)

    p_fig = sub.add_parser("figure", help="emit a figure dataset and plot script")
    p_fig.add_argument("figure", choices=list(FIGURES))
    p_fig.add_argument("--out", required=True, help="output directory")

    p_check = sub.add_parser("oracle-check", help="run the oracle verification battery")
    p_check.add_argument("--grid", choices=["small", "full"], default="small")

    sub.add_parser("version", help="print the tool version")
    return parser


def _cmd_sweep(args) -> int:
    config = SweepConfig.from_file(args.config)
    rows = run_sweep(config)
    paths = write_sweep(config, rows)
    print(f"wrote {len(rows)} rows to {paths[0]} (manifest: {paths[1]})")
    return EXIT_OK


def _cmd_optimal_time(args) -> int:
    kind = InteractionKind(args.kind)
    if args.window_lo is None or args.window_hi is None:
        if kind is InteractionKind.PARAMETRIC:
            lo, hi = 0.05, min(2.0, PARAMETRIC_TAU_CAP)
        else:
            lo, hi = 0.1, 2.0 * math.pi - 0.1
        lo = args.window_lo if args.window_lo is not None else lo
        hi = args.window_hi if args.window_hi is not None else hi
    else:
        lo, hi = args.window_lo, args.window_hi
    if kind is InteractionKind.PARAMETRIC and hi > PARAMETRIC_TAU_CAP:
        raise DomainError(
            f"window upper edge {hi} exceeds the parametric cap {PARAMETRIC_TAU_CAP}"
        )
    best = find_optimal_time(
        kind, args.swap, args.lam, args.nth, (lo, hi), p_min=args.p_min
    )
    print(
        json.dumps(
            {
                "kind": kind.value,
                "swap": args.swap,
                "lambda": args.lam,
                "n_th": args.nth,
                "window": [lo, hi],
                "p_min": args.p_min,
                "tau_star": best.tau_star,
                "f11_star": best.f11_star,
                "p11_star": best.p11_star,
            },
            indent=2,
        )
    )
    return EXIT_OK


def _cmd_figure(args) -> int:
    paths = emit_figure_data(args.figure, args.out)
    for path in paths:
        print(path)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    report = oracle_check(grid=args.grid)
    print(report.to_json())
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "optimal-time":
            return _cmd_optimal_time(args)
        if args.command == "figure":
            return _cmd_figure(args)
        if args.command == "oracle-check":
            return _cmd_oracle_check(args)
        if args.command == "version":
            print(__version__)
            return EXIT_OK
        raise AssertionError(f"unhandled command {args.command!r}")
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CvPurifyError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
