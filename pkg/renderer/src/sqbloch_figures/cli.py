"""Render CLI: `render --figure N --input data.csv [--input more.csv] --output fig.png`

Figure 2 consumes a trajectory CSV, figures 3-7 sweep CSVs, figure 8 a
matched-phase comparison CSV. Exit 0 on success, 1 on schema or i/o errors
(the message names the offending column or file).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import FigureSpec, RenderError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqbloch-render", description=__doc__)
    parser.add_argument("--figure", type=int, required=True, choices=range(2, 9))
    parser.add_argument(
        "--input", action="append", required=True, metavar="CSV", dest="inputs"
    )
    parser.add_argument("--output", required=True, metavar="IMAGE")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = FigureSpec(
            figure_id=args.figure,
            inputs=tuple(Path(p) for p in args.inputs),
            output=Path(args.output),
        )
        path = render(spec)
    except RenderError as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
