"""Command line entry point: ``convexorder {compare,suite,threshold,sample-g}``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .catalog import InvalidParameter, make_weight, parse_spec
from .convex_order import levin_stechkin_compare
from .harness import (
    NoBracket,
    find_threshold,
    render_report,
    run_theorem_suite,
    sample_g,
)
from .quadrature import random_convex, stieltjes_numeric


def _output(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_compare(args) -> int:
    a, b = parse_spec(args.spec_a), parse_spec(args.spec_b)
    Fa, Fb = make_weight(a), make_weight(b)
    v = levin_stechkin_compare(Fa, Fb)
    text = render_report(v, args.format)
    if args.samples and args.format == "text":
        gaps = []
        for i in range(args.samples):
            f = random_convex(args.seed + i, 1 + i % 8)
            gaps.append(stieltjes_numeric(f, Fb, args.tol).value
                        - stieltjes_numeric(f, Fa, args.tol).value)
        text += (f"numeric gap over {args.samples} random convex functions:"
                 f" min {min(gaps):.15g}, max {max(gaps):.15g}\n")
    _output(text, args.output)
    return 0


def cmd_suite(args) -> int:
    result = run_theorem_suite()
    _output(render_report(result, args.format), args.output)
    return 0 if result.all_passed else 1


def cmd_threshold(args) -> int:
    family = lambda p: parse_spec(args.family, p)  # noqa: E731
    target = lambda p: parse_spec(args.target, p)  # noqa: E731
    tol = Fraction(args.tol).limit_denominator(10**18) if args.tol else Fraction(1, 10**10)
    bracket = find_threshold(family, target, args.direction.upper(),
                             Fraction(args.lo), Fraction(args.hi), tol,
                             f"{args.family} {args.direction} {args.target}")
    _output(render_report(bracket, args.format), args.output)
    return 0


def cmd_sample_g(args) -> int:
    curve = sample_g(parse_spec(args.spec_a), parse_spec(args.spec_b), args.points)
    fmt = "csv" if args.format == "text" else args.format
    _output(render_report(curve, fmt), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexorder",
        description="Exact convex-order decisions between quadrature-type functionals.",
    )
    parser.add_argument("--format", choices=["text", "csv", "json"], default="text")
    parser.add_argument("--tol", type=float, default=None,
                        help="numeric tolerance (quadrature) or bracket width (threshold)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--output", default=None, help="write the report here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="decide the order of two functionals")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--samples", type=int, default=0,
                   help="also report numeric gaps on this many random convex functions")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("suite", help="check every catalogued claim")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("threshold", help="find the sharp parameter of a family")
    p.add_argument("family", help="spec template using p, e.g. 'T:a=p'")
    p.add_argument("target", help="spec or template, e.g. 'mid' or 'eval:alpha=p'")
    p.add_argument("direction", choices=["LE", "GE", "le", "ge"])
    p.add_argument("lo")
    p.add_argument("hi")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("sample-g", help="primitive gap G(x) on a grid, as CSV")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--points", type=int, default=1024)
    p.set_defaults(func=cmd_sample_g)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is None:
        args.tol = 1e-12 if args.command != "threshold" else None
    try:
        return args.func(args)
    except (InvalidParameter, NoBracket, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
