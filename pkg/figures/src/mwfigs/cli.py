"""Command line interface.

    mwfigs render <scenario> --in data.csv --out image.svg
    mwfigs render-all <dir> [--format svg]

``render-all`` renders every ``<dir>/<scenario>.csv`` it finds. Exit codes:
0 success, 2 usage error, 3 schema/validation error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .plots import SCHEMAS, PlotSpec, SchemaError, render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mwfigs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    one = sub.add_parser("render", help="render one scenario CSV")
    one.add_argument("scenario")
    one.add_argument("--in", dest="infile", required=True)
    one.add_argument("--out", required=True)

    allcmd = sub.add_parser("render-all", help="render every scenario CSV in a directory")
    allcmd.add_argument("directory")
    allcmd.add_argument("--format", default="svg", choices=["svg", "pdf", "png"])
    return parser


def _cmd_render(args) -> int:
    if args.scenario not in SCHEMAS:
        print(
            f"error: unknown scenario {args.scenario!r}; known: {', '.join(SCHEMAS)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    try:
        spec = PlotSpec(args.scenario, Path(args.infile), Path(args.out))
        render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_render_all(args) -> int:
    directory = Path(args.directory)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return EXIT_IO
    found = 0
    for scenario in SCHEMAS:
        csv_path = directory / f"{scenario}.csv"
        if not csv_path.exists():
            continue
        found += 1
        out_path = directory / f"{scenario}.{args.format}"
        try:
            render(PlotSpec(scenario, csv_path, out_path))
        except SchemaError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_SCHEMA
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"wrote {out_path}")
    if found == 0:
        print(f"error: no scenario CSVs found in {directory}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "render":
        return _cmd_render(args)
    if args.command == "render-all":
        return _cmd_render_all(args)
    parser.print_help()
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
