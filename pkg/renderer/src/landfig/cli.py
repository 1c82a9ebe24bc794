"""Command-line front end: one CSV in, one image out."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .figures import KINDS, FigureSpec, SchemaMismatch, render

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SCHEMA = 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="landfig",
        description="Render a figure from a CSV written by the solver CLI.",
    )
    parser.add_argument("csv", help="input table (sweep or path CSV)")
    parser.add_argument("--kind", required=True, choices=KINDS,
                        help="figure kind")
    parser.add_argument("--out", required=True,
                        help="output image path (.png or .svg)")
    parser.add_argument("--title", default="", help="optional figure title")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    args = parser.parse_args(argv)

    if not os.path.isfile(args.csv):
        print(f"error: no such file: {args.csv}", file=sys.stderr)
        return EXIT_INPUT
    spec = FigureSpec(input_csv=args.csv, kind=args.kind,
                      output=args.out, title=args.title)
    try:
        report = render(spec)
    except SchemaMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    parts = [f"wrote {report.output} ({report.points} points)"]
    if report.crossing is not None:
        parts.append(f"sign flip at epsilon = {report.crossing:.6g}")
    if report.fixed_point is not None:
        parts.append(f"fixed point near phi = {report.fixed_point[0]:.6g}")
    if report.branches:
        parts.append("branches: " + ", ".join(report.branches))
    print("; ".join(parts))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
