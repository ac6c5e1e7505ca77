"""figures <kind> --in <csv...> --out <img>

Exit codes: 0 success, 2 bad arguments or input schema.
"""

import argparse
import sys

from .recipes import KINDS, FigureRecipe, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figures",
        description="Render publication-style figures from slepianlis CSV files.",
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV", help="input CSV file(s)")
    parser.add_argument("--out", required=True, metavar="IMG",
                        help="output image path (format from the extension)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(FigureRecipe(kind=args.kind, inputs=tuple(args.inputs), output=args.out))
    except (SchemaError, OSError, ValueError) as exc:
        print(f"figures {args.kind}: {exc}", file=sys.stderr)
        return 2
    return 0


def entry_point(argv=None) -> None:
    sys.exit(main(argv))


if __name__ == "__main__":
    entry_point()
