"""Command-line figure rendering for solver CSV outputs.

Exit codes: 0 success, 1 usage or I/O error, 2 schema mismatch.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .csvdata import SchemaError
from .render import KINDS, PlotSpec, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="womplot",
                     description="Render solver CSVs to static figures")
    parser.add_argument("--version", action="version",
                        version=f"womplot {__version__}")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--in", dest="input_csv", required=True)
    parser.add_argument("--in2", dest="input2",
                        help="second trajectory CSV for an overlay")
    parser.add_argument("--out", required=True, help="output .png or .svg")
    parser.add_argument("--title", default="")
    parser.add_argument("--x-label", default="")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.input2 and args.kind != "trajectory":
            raise _UsageError("--in2 applies to --kind trajectory only")
        spec = PlotSpec(input_csv=args.input_csv, kind=args.kind,
                        output=args.out, title=args.title,
                        x_label=args.x_label, input2=args.input2)
        render(spec)
        print(f"wrote {args.out}")
        return 0
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
