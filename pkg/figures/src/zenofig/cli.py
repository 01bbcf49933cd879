"""Plot script: zenofig-plot --csv sweep.csv --style fig2a --out fig.png."""

from __future__ import annotations

import argparse
import sys

from .render import MissingColumnError, PlotSpec, render
from .styles import STYLE_PRESETS, preset


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zenofig-plot",
        description="Render decay-rate ratio overlays from zenoscan sweep "
                    "CSV output.")
    parser.add_argument("--csv", action="append", required=True,
                        help="sweep CSV path (repeat to overlay)")
    parser.add_argument("--style", default="fig2a",
                        choices=sorted(STYLE_PRESETS),
                        help="figure preset")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--label", action="append", default=None,
                        help="legend prefix per --csv (repeat)")
    parser.add_argument("--methods", default=None,
                        help="comma list overriding the preset's methods")
    parser.add_argument("--title", default="")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    methods, y_range = preset(args.style)
    if args.methods is not None:
        methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    try:
        spec = PlotSpec(csv_paths=tuple(args.csv), methods=tuple(methods),
                        out_path=args.out,
                        labels=tuple(args.label) if args.label else (),
                        y_range=y_range, title=args.title)
        render(spec)
    except (MissingColumnError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
