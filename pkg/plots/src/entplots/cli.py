"""Command line front end: entscale-plots --kind ... --input ... --output ..."""
from __future__ import annotations

import argparse
import sys

from .reader import PlotInputError
from .render import PLOT_KINDS, PlotSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entscale-plots",
        description="Regenerate figures from entscale result tables.",
    )
    parser.add_argument("--kind", choices=PLOT_KINDS, required=True)
    parser.add_argument(
        "--input", action="append", required=True, help="result table (repeatable)"
    )
    parser.add_argument("--output", required=True, help="image file (.png, .svg, .pdf)")
    parser.add_argument(
        "--no-reference", action="store_true", help="suppress analytic reference lines"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        inputs=tuple(args.input),
        kind=args.kind,
        output=args.output,
        reference_lines=not args.no_reference,
    )
    try:
        path = render(spec)
    except (PlotInputError, OSError) as exc:
        print(f"cannot render: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
