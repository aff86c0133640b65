"""Quadrature and differentiation functionals on ``[0, 1]`` and their weights.

Every functional ``L`` here is a Stieltjes integral ``L(f) = \\int f dF`` for
an exact :class:`CumulativeFunction` ``F`` built by :func:`make_weight`.
:func:`functional_value_exact` evaluates the same functional from closed-form
antiderivatives (``F' = f``, ``Phi' = F``) without going through the weight,
so the two routes can be checked against each other.

Specs print to and parse from a compact grammar::

    uniform  mid  trap  davg  simpson  quarter
    T:a=6    eval:alpha=1/3   ends:alpha=1/3   S1:alpha=1/4   S2:alpha=2/5
    mix:3/4*davg+1/4*trap
"""
from __future__ import annotations

import ast
import enum
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .bvfunction import CumulativeFunction, cf_linear_combination
from .polynomial import Number, Poly, _frac, poly_antiderivative, poly_eval

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class InvalidParameter(ValueError):
    pass


class Kind(enum.Enum):
    UNIFORM = "uniform"
    MIDPOINT = "mid"
    TRAPEZOID = "trap"
    DOUBLE_AVERAGE = "davg"
    SIMPSON_LIKE = "simpson"
    COMPOSITE_QUARTER = "quarter"
    T = "T"
    EVAL_AT = "eval"
    ENDPOINTS = "ends"
    S1 = "S1"
    S2 = "S2"
    MIXTURE = "mix"


_PARAM_NAME = {Kind.T: "a", Kind.EVAL_AT: "alpha", Kind.ENDPOINTS: "alpha",
               Kind.S1: "alpha", Kind.S2: "alpha"}


@dataclass(frozen=True)
class FunctionalSpec:
    kind: Kind
    param: Optional[Fraction] = None
    terms: tuple[tuple[Fraction, "FunctionalSpec"], ...] = ()

    def __post_init__(self):
        if self.param is not None:
            object.__setattr__(self, "param", _frac(self.param))
        k, p = self.kind, self.param
        if k in _PARAM_NAME and p is None:
            raise InvalidParameter(f"{k.value} needs parameter {_PARAM_NAME[k]}")
        if k in (Kind.EVAL_AT, Kind.ENDPOINTS, Kind.S2) and not 0 <= p <= 1:
            raise InvalidParameter(f"alpha={p} outside [0, 1]")
        if k is Kind.S1 and not 0 < p < 1:
            raise InvalidParameter(f"S1 needs alpha in (0, 1), got {p}")
        if k is Kind.MIXTURE:
            if not self.terms:
                raise InvalidParameter("empty mixture")
            if sum(c for c, _ in self.terms) != 1:
                raise InvalidParameter("mixture coefficients must sum to 1")

    # -- constructors ---------------------------------------------------
    @classmethod
    def uniform(cls):
        return cls(Kind.UNIFORM)

    @classmethod
    def midpoint(cls):
        return cls(Kind.MIDPOINT)

    @classmethod
    def trapezoid(cls):
        return cls(Kind.TRAPEZOID)

    @classmethod
    def double_average(cls):
        return cls(Kind.DOUBLE_AVERAGE)

    @classmethod
    def simpson_like(cls):
        return cls(Kind.SIMPSON_LIKE)

    @classmethod
    def composite_quarter(cls):
        return cls(Kind.COMPOSITE_QUARTER)

    @classmethod
    def T(cls, a: Number):
        return cls(Kind.T, _frac(a))

    @classmethod
    def eval_at(cls, alpha: Number):
        return cls(Kind.EVAL_AT, _frac(alpha))

    @classmethod
    def endpoints(cls, alpha: Number):
        return cls(Kind.ENDPOINTS, _frac(alpha))

    @classmethod
    def S1(cls, alpha: Number):
        return cls(Kind.S1, _frac(alpha))

    @classmethod
    def S2(cls, alpha: Number):
        return cls(Kind.S2, _frac(alpha))

    @classmethod
    def mixture(cls, terms):
        flat = []
        for c, s in terms:
            c = _frac(c)
            if s.kind is Kind.MIXTURE:
                flat.extend((c * c2, s2) for c2, s2 in s.terms)
            else:
                flat.append((c, s))
        return cls(Kind.MIXTURE, None, tuple(flat))

    def __str__(self):
        if self.kind is Kind.MIXTURE:
            return "mix:" + "+".join(f"{_coef_str(c)}*{s}" for c, s in self.terms)
        if self.kind in _PARAM_NAME:
            return f"{self.kind.value}:{_PARAM_NAME[self.kind]}={_coef_str(self.param)}"
        return self.kind.value


def _coef_str(c: Fraction) -> str:
    s = str(c)
    return f"({s})" if c < 0 else s


# -- weights ----------------------------------------------------------------
def _step(at: Fraction) -> CumulativeFunction:
    """Unit point mass at ``at``."""
    if at == 0:
        return CumulativeFunction.from_pieces([0, 1], [[1]])
    if at == 1:
        return CumulativeFunction.from_pieces([0, 1], [[]], value_at_one=1)
    return CumulativeFunction.from_pieces([0, at, 1], [[], [1]])


def t_weight(a: Number) -> CumulativeFunction:
    a = _frac(a)
    return CumulativeFunction.from_pieces(
        [0, HALF, 1],
        [Poly([0, 1 - a / 2, a]), Poly([-a / 2, 1 + 3 * a / 2, -a])],
    )


def two_quadratic_weight(alpha: Number, a: Number, c: Number | None = None) -> CumulativeFunction:
    """Two quadratic pieces split at ``alpha``: ``a t^2 + (1-alpha) t`` then
    ``c t^2 + (1 - c alpha - c) t + c alpha``.

    ``c`` defaults to ``(-alpha/(1-alpha))**3``.  Any mismatch of the pieces at
    ``alpha`` becomes an atom there.  No regime classification is attached.
    """
    alpha, a = _frac(alpha), _frac(a)
    if not 0 < alpha < 1:
        raise InvalidParameter("alpha must lie in (0, 1)")
    c = (-alpha / (1 - alpha)) ** 3 if c is None else _frac(c)
    return CumulativeFunction.from_pieces(
        [0, alpha, 1],
        [Poly([0, 1 - alpha, a]), Poly([c * alpha, 1 - c * alpha - c, c])],
    )


@lru_cache(maxsize=4096)
def make_weight(spec: FunctionalSpec) -> CumulativeFunction:
    """The cumulative weight ``F`` with ``L(f) = \\int f dF`` on ``[0, 1]``."""
    k, p = spec.kind, spec.param
    if k is Kind.UNIFORM:
        return CumulativeFunction.from_pieces([0, 1], [[0, 1]])
    if k is Kind.MIDPOINT:
        return _step(HALF)
    if k is Kind.TRAPEZOID:
        return CumulativeFunction.from_pieces([0, 1], [[HALF]], value_at_one=1)
    if k is Kind.DOUBLE_AVERAGE:
        return CumulativeFunction.from_pieces([0, HALF, 1], [[0, 0, 2], [-1, 4, -2]])
    if k is Kind.SIMPSON_LIKE:
        return CumulativeFunction.from_pieces(
            [0, HALF, 1], [[Fraction(1, 6)], [Fraction(5, 6)]], value_at_one=1
        )
    if k is Kind.COMPOSITE_QUARTER:
        return CumulativeFunction.from_pieces(
            [0, QUARTER, HALF, 3 * QUARTER, 1],
            [[0, 0, 4], [-HALF, 4, -4], [Fraction(3, 2), -4, 4], [-3, 8, -4]],
        )
    if k is Kind.T:
        return t_weight(p)
    if k is Kind.EVAL_AT:
        return _step(1 - p)
    if k is Kind.ENDPOINTS:
        return CumulativeFunction.from_pieces([0, 1], [[p]], value_at_one=1)
    if k is Kind.S1:
        r = p / (1 - p)
        return CumulativeFunction.from_pieces(
            [0, 1 - p, 1], [Poly([0, r]), Poly([(2 * p - 1) / p, 1 / r])]
        )
    if k is Kind.S2:
        return CumulativeFunction.from_pieces([0, 1], [Poly([0, 6 * p - 2, 3 - 6 * p])])
    if k is Kind.MIXTURE:
        return cf_linear_combination([(c, make_weight(s)) for c, s in spec.terms])
    raise InvalidParameter(f"unknown kind {k}")


# -- closed-form functional values ---------------------------------------------
def functional_value_exact(spec: FunctionalSpec, f: Poly) -> Fraction:
    """Evaluate the functional on ``[0, 1]`` from antiderivatives of ``f``."""
    F = poly_antiderivative(f)
    Phi = poly_antiderivative(F)
    k, p = spec.kind, spec.param

    def second_diff() -> Fraction:
        return Phi(0) - 2 * Phi(HALF) + Phi(1)

    if k is Kind.UNIFORM:
        return F(1) - F(0)
    if k is Kind.MIDPOINT:
        return f(HALF)
    if k is Kind.TRAPEZOID:
        return (f(0) + f(1)) / 2
    if k is Kind.DOUBLE_AVERAGE:
        return 4 * second_diff()
    if k is Kind.SIMPSON_LIKE:
        return f(0) / 6 + 2 * f(HALF) / 3 + f(1) / 6
    if k is Kind.COMPOSITE_QUARTER:
        return (8 * Phi(0) - 16 * Phi(QUARTER) + 16 * Phi(HALF)
                - 16 * Phi(3 * QUARTER) + 8 * Phi(1))
    if k is Kind.T:
        return (1 - p / 2) * (F(1) - F(0)) + 2 * p * second_diff()
    if k is Kind.EVAL_AT:
        return f(1 - p)
    if k is Kind.ENDPOINTS:
        return p * f(0) + (1 - p) * f(1)
    if k is Kind.S1:
        return (-p / (1 - p) * F(0)
                + (2 * p - 1) / (p * (1 - p)) * F(1 - p)
                + (1 - p) / p * F(1))
    if k is Kind.S2:
        return (4 - 6 * p) * F(1) + (2 - 6 * p) * F(0) - (6 - 12 * p) * (Phi(1) - Phi(0))
    if k is Kind.MIXTURE:
        return sum((c * functional_value_exact(s, f) for c, s in spec.terms), Fraction(0))
    raise InvalidParameter(f"unknown kind {k}")


# -- parsing -------------------------------------------------------------------
_ALIASES = {
    "uniform": Kind.UNIFORM, "mean": Kind.UNIFORM,
    "mid": Kind.MIDPOINT, "midpoint": Kind.MIDPOINT,
    "trap": Kind.TRAPEZOID, "trapezoid": Kind.TRAPEZOID,
    "davg": Kind.DOUBLE_AVERAGE, "double-average": Kind.DOUBLE_AVERAGE,
    "simpson": Kind.SIMPSON_LIKE,
    "quarter": Kind.COMPOSITE_QUARTER, "composite": Kind.COMPOSITE_QUARTER,
    "T": Kind.T, "eval": Kind.EVAL_AT, "ends": Kind.ENDPOINTS,
    "S1": Kind.S1, "S2": Kind.S2, "mix": Kind.MIXTURE,
}
_NAME_START = re.compile(r"^(%s)(:|$)" % "|".join(sorted(map(re.escape, _ALIASES), key=len, reverse=True)))

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub,
           ast.Mult: operator.mul, ast.Div: operator.truediv}


def eval_fraction(expr: str, p: Optional[Fraction] = None) -> Fraction:
    """Evaluate ``+ - * /`` arithmetic over exact fractions; ``p`` may appear as a name."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name) and node.id == "p":
            if p is None:
                raise InvalidParameter("parameter 'p' used but not bound")
            return p
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise InvalidParameter(f"unsupported expression: {expr!r}")

    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError as exc:
        raise InvalidParameter(f"cannot parse {expr!r}") from exc
    return ev(tree)


def _split_top(text: str, sep: str) -> list[int]:
    depth, out = 0, []
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append(i)
    return out


def _parts(text: str, sep: str) -> list[str]:
    cuts = [-1] + _split_top(text, sep) + [len(text)]
    return [text[a + 1:b] for a, b in zip(cuts, cuts[1:])]


def parse_spec(text: str, p: Optional[Number] = None) -> FunctionalSpec:
    """Parse the compact spec grammar; ``p`` binds the name ``p`` in expressions."""
    p = None if p is None else _frac(p)
    text = text.strip()
    name, _, rest = text.partition(":")
    name = name.strip()
    if name not in _ALIASES:
        raise InvalidParameter(f"unknown functional {name!r}")
    kind = _ALIASES[name]
    if kind is Kind.MIXTURE:
        terms = []
        for term in _parts(rest, "+"):
            term = term.strip()
            coef, spec_text = Fraction(1), term
            for cut in _split_top(term, "*"):
                if _NAME_START.match(term[cut + 1:].strip()):
                    coef = eval_fraction(term[:cut], p)
                    spec_text = term[cut + 1:]
                    break
            terms.append((coef, parse_spec(spec_text, p)))
        return FunctionalSpec.mixture(terms)
    if kind in _PARAM_NAME:
        key, eq, val = rest.partition("=")
        if not eq or key.strip() != _PARAM_NAME[kind]:
            raise InvalidParameter(f"{name} expects '{_PARAM_NAME[kind]}=<value>'")
        return FunctionalSpec(kind, eval_fraction(val, p))
    if rest:
        raise InvalidParameter(f"{name} takes no parameters")
    return FunctionalSpec(kind)
