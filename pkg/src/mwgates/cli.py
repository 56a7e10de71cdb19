"""Command line interface.

    mwgates run <scenario> [--config FILE] [--set key=value ...]
                [--out PATH] [--seed N]
    mwgates fit <quadratic|abs-sinusoid> --in CSV [--xcol NAME] [--ycol NAME]
    mwgates list-scenarios

Exit codes: 0 success, 2 usage error, 3 invalid parameter, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .config import (
    SCENARIOS,
    InvalidParameterError,
    UnknownKeyError,
    parse_set_override,
    resolve_config,
)
from .fitting import DegenerateFitError, fit_abs_sinusoid, fit_quadratic
from .scenarios import read_columns, read_csv, run_scenario, write_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVALID_PARAMETER = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mwgates", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run a scenario and write its CSV dataset")
    run.add_argument("scenario")
    run.add_argument("--config", help="JSON config file (a previously emitted header works)")
    run.add_argument("--set", dest="sets", action="append", default=[],
                     metavar="KEY=VALUE", help="dotted-path override, repeatable")
    run.add_argument("--out", help="output CSV path (default <scenario>.csv)")
    run.add_argument("--seed", type=int, default=None, help="random seed for shot noise")

    fit = sub.add_parser("fit", help="fit a model to a scenario CSV")
    fit.add_argument("model", choices=["quadratic", "abs-sinusoid"])
    fit.add_argument("--in", dest="infile", required=True)
    fit.add_argument("--xcol", default=None, help="x column (default: first column)")
    fit.add_argument("--ycol", default=None, help="y column (default: second column)")

    sub.add_parser("list-scenarios", help="print the valid scenario names")
    return parser


def _cmd_run(args) -> int:
    if args.scenario not in SCENARIOS:
        print(
            f"error: unknown scenario {args.scenario!r}; valid scenarios: "
            + ", ".join(SCENARIOS),
            file=sys.stderr,
        )
        return EXIT_USAGE
    overrides = []
    if args.config:
        try:
            with open(args.config) as fh:
                overrides.append(json.load(fh))
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
        except json.JSONDecodeError as exc:
            print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
            return EXIT_INVALID_PARAMETER
    try:
        for expr in args.sets:
            overrides.append(parse_set_override(expr))
        cfg = resolve_config(args.scenario, overrides, seed=args.seed)
        result = run_scenario(cfg)
    except (UnknownKeyError, InvalidParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_PARAMETER
    out = args.out or f"{args.scenario}.csv"
    try:
        write_csv(result, out)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {out} ({len(result.rows)} rows)")
    return EXIT_OK


def _cmd_fit(args) -> int:
    try:
        _, columns, _ = read_csv(args.infile)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_PARAMETER
    xcol = args.xcol or columns[0]
    ycol = args.ycol or (columns[1] if len(columns) > 1 else None)
    if ycol is None:
        print("error: input file has a single column; need x and y", file=sys.stderr)
        return EXIT_INVALID_PARAMETER
    try:
        x, y = read_columns(args.infile, (xcol, ycol))
        if args.model == "quadratic":
            fit = fit_quadratic(x, y)
        else:
            fit = fit_abs_sinusoid(x, y)
    except (DegenerateFitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_PARAMETER
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps(fit.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "fit":
        return _cmd_fit(args)
    if args.command == "list-scenarios":
        for name in SCENARIOS:
            print(name)
        return EXIT_OK
    parser.print_help()
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
