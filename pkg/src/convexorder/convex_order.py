"""Convex-order decisions between two cumulative weights.

For weights ``F1, F2`` on ``[0, 1]`` with ``F1(0) = F2(0) = 0`` the functional
``f -> \\int f dF1`` is dominated by ``f -> \\int f dF2`` for every continuous
convex ``f`` exactly when

* ``F1(1) = F2(1)``,
* ``\\int_0^1 F1 = \\int_0^1 F2``, and
* ``G(x) = \\int_0^x (F2 - F1) >= 0`` on ``(0, 1)``.

All three checks are carried out in exact rational arithmetic.  When ``G``
changes sign, hinge functions ``t -> max(t - c, 0)`` placed where ``G > 0``
and ``G < 0`` separate the two functionals in opposite directions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bvfunction import (
    CumulativeFunction,
    PiecewiseFunction,
    Side,
    cf_eval,
    cf_integrate_hinge,
    cf_moment,
    cf_primitive,
    crossing_points,
    is_cdf,
)
from .polynomial import Number, Sign, _frac, sign_on_interval, sign_regions


class NotNormalized(ValueError):
    """The two weights already differ on affine functions."""


class PreconditionFailed(ValueError):
    pass


class NotIncomparable(ValueError):
    pass


class Relation(enum.Enum):
    LESS_OR_EQUAL = "LessOrEqual"
    GREATER_OR_EQUAL = "GreaterOrEqual"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"
    NOT_NORMALIZED = "NotNormalized"

    def flipped(self) -> "Relation":
        if self is Relation.LESS_OR_EQUAL:
            return Relation.GREATER_OR_EQUAL
        if self is Relation.GREATER_OR_EQUAL:
            return Relation.LESS_OR_EQUAL
        return self


@dataclass(frozen=True)
class Verdict:
    relation: Relation
    endpoint_check: bool
    mean_check: bool
    gap_sign: Optional[Sign] = None
    witness_plus: Optional[Fraction] = None
    witness_minus: Optional[Fraction] = None
    first: Optional[CumulativeFunction] = field(default=None, repr=False, compare=False)
    second: Optional[CumulativeFunction] = field(default=None, repr=False, compare=False)

    @property
    def holds_le(self) -> bool:
        """``first <= second`` for all convex functions."""
        return self.relation in (Relation.LESS_OR_EQUAL, Relation.EQUAL)

    @property
    def holds_ge(self) -> bool:
        return self.relation in (Relation.GREATER_OR_EQUAL, Relation.EQUAL)


@dataclass(frozen=True)
class HingeWitness:
    """The convex function ``t -> max(t - knot, 0)``."""

    knot: Fraction

    def __post_init__(self):
        if not 0 < self.knot < 1:
            raise ValueError("hinge knot must lie in (0, 1)")

    def __call__(self, t):
        return max(t - self.knot, 0)


def primitive_gap(F1: CumulativeFunction, F2: CumulativeFunction) -> PiecewiseFunction:
    """``G(x) = \\int_0^x (F2 - F1)``."""
    return cf_primitive(F2 - F1)


def _checks(F1, F2) -> tuple[bool, bool, PiecewiseFunction]:
    G = primitive_gap(F1, F2)
    endpoint = cf_eval(F1, 1, Side.RIGHT) == cf_eval(F2, 1, Side.RIGHT)
    mean = G(1) == 0
    return endpoint, mean, G


def levin_stechkin_compare(F1: CumulativeFunction, F2: CumulativeFunction) -> Verdict:
    """Decide how ``\\int f dF1`` and ``\\int f dF2`` compare over convex ``f``."""
    endpoint, mean, G = _checks(F1, F2)
    if not (endpoint and mean):
        return Verdict(Relation.NOT_NORMALIZED, endpoint, mean, first=F1, second=F2)

    signs = {sign_on_interval(p, a, b) for a, b, p in G.intervals()}
    signs.discard(Sign.IDENTICALLY_ZERO)
    if not signs:
        return Verdict(Relation.EQUAL, True, True, Sign.IDENTICALLY_ZERO, first=F1, second=F2)
    if signs == {Sign.NONNEGATIVE}:
        return Verdict(Relation.LESS_OR_EQUAL, True, True, Sign.NONNEGATIVE, first=F1, second=F2)
    if signs == {Sign.NONPOSITIVE}:
        return Verdict(
            Relation.GREATER_OR_EQUAL, True, True, Sign.NONPOSITIVE, first=F1, second=F2
        )

    plus = minus = None
    for a, b, p in G.intervals():
        for lo, hi, s in sign_regions(p, a, b):
            c = (lo + hi) / 2
            if s > 0 and plus is None:
                plus = c
            elif s < 0 and minus is None:
                minus = c
    return Verdict(
        Relation.INCOMPARABLE,
        True,
        True,
        Sign.MIXED,
        witness_plus=plus,
        witness_minus=minus,
        first=F1,
        second=F2,
    )


class OhlinDirection(enum.Enum):
    FIRST_LE_SECOND = "First<=Second"
    SECOND_LE_FIRST = "Second<=First"


def ohlin_compare(F1: CumulativeFunction, F2: CumulativeFunction) -> Optional[OhlinDirection]:
    """Single-crossing test for two distribution functions with equal means.

    Returns ``None`` unless ``F1 - F2`` changes sign exactly once.
    """
    if not (is_cdf(F1) and is_cdf(F2)):
        raise PreconditionFailed("both weights must be distribution functions")
    if cf_moment(F1, 1) != cf_moment(F2, 1):
        raise PreconditionFailed("means differ")
    xs = crossing_points(F1, F2)
    if len(xs) != 1:
        return None
    if xs[0].before < 0:
        return OhlinDirection.FIRST_LE_SECOND
    return OhlinDirection.SECOND_LE_FIRST


def hinge_gap(F1: CumulativeFunction, F2: CumulativeFunction, c: Number) -> Fraction:
    """``\\int h dF2 - \\int h dF1`` for the hinge ``h(t) = max(t - c, 0)``.

    Computed by direct Stieltjes integration; it coincides with ``G(c)``.
    """
    c = _frac(c)
    if not 0 < c < 1:
        raise ValueError("hinge knot must lie in (0, 1)")
    endpoint, mean, _ = _checks(F1, F2)
    if not (endpoint and mean):
        raise NotNormalized("weights differ on affine functions")
    return cf_integrate_hinge(F2, c) - cf_integrate_hinge(F1, c)


def witness_functions(v: Verdict) -> tuple[HingeWitness, HingeWitness]:
    """Hinges ``(h_plus, h_minus)`` whose gaps have strictly opposite signs."""
    if v.relation is not Relation.INCOMPARABLE:
        raise NotIncomparable(f"verdict is {v.relation.value}")
    hp, hm = HingeWitness(v.witness_plus), HingeWitness(v.witness_minus)
    if v.first is not None and v.second is not None:
        gp = hinge_gap(v.first, v.second, hp.knot)
        gm = hinge_gap(v.first, v.second, hm.knot)
        if not (gp > 0 > gm):
            raise AssertionError("stored witnesses do not separate the weights")
    return hp, hm
