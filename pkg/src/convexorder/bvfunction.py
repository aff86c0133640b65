"""Piecewise-polynomial bounded-variation weights on ``[0, 1]``.

A :class:`CumulativeFunction` ``F`` stores the polynomial values of ``F`` on
the open intervals between breakpoints, plus jump atoms.  ``F(0) = 0`` always;
an atom at 0 means ``F`` jumps immediately to the right of 0.  The Stieltjes
integral ``\\int f dF`` therefore sees every atom, endpoint atoms included.
"""
from __future__ import annotations

import enum
import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .polynomial import (
    Number,
    Poly,
    RootInterval,
    Sign,
    _frac,
    isolate_roots,
    poly_antiderivative,
    poly_eval,
    sign_on_interval,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class OutOfDomain(ValueError):
    """Evaluation point outside ``[0, 1]``."""


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class CumulativeFunction:
    """Piecewise polynomial with atoms.

    ``pieces[i]`` gives ``F`` on ``(breakpoints[i], breakpoints[i+1])``.
    ``atoms`` is a sorted tuple of ``(location, mass)`` with nonzero masses;
    interior atoms sit on breakpoints and match the jumps of the pieces.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]
    atoms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        bps = tuple(_frac(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", tuple(self.pieces))
        atoms = tuple(sorted((_frac(x), _frac(m)) for x, m in self.atoms if m != 0))
        object.__setattr__(self, "atoms", atoms)
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bps) - 1:
            raise ValueError("need one piece per breakpoint interval")
        locs = [x for x, _ in atoms]
        if len(set(locs)) != len(locs):
            raise ValueError("duplicate atom locations")
        amap = dict(atoms)
        for x in locs:
            if x not in bps:
                raise ValueError(f"atom at {x} is not on a breakpoint")
        if poly_eval(self.pieces[0], 0) != amap.get(ZERO, ZERO):
            raise ValueError("right limit at 0 must equal the atom mass at 0")
        for i in range(1, len(bps) - 1):
            b = bps[i]
            jump = poly_eval(self.pieces[i], b) - poly_eval(self.pieces[i - 1], b)
            if jump != amap.get(b, ZERO):
                raise ValueError(f"jump at {b} does not match its atom mass")

    @classmethod
    def from_pieces(
        cls,
        breakpoints: Sequence[Number],
        pieces: Sequence[Poly | Sequence[Number]],
        value_at_one: Number | None = None,
    ) -> "CumulativeFunction":
        """Build from interior pieces, deriving atoms from the jumps.

        ``value_at_one`` is ``F(1)``; by default ``F`` is left-continuous at 1.
        """
        bps = [_frac(b) for b in breakpoints]
        ps = [p if isinstance(p, Poly) else Poly(p) for p in pieces]
        atoms = [(ZERO, poly_eval(ps[0], 0))]
        for i in range(1, len(bps) - 1):
            atoms.append((bps[i], poly_eval(ps[i], bps[i]) - poly_eval(ps[i - 1], bps[i])))
        if value_at_one is not None:
            atoms.append((ONE, _frac(value_at_one) - poly_eval(ps[-1], 1)))
        return cls(tuple(bps), tuple(ps), tuple(atoms)).canonical()

    # -- structure ------------------------------------------------------
    def atom_mass(self, x: Number) -> Fraction:
        return dict(self.atoms).get(_frac(x), ZERO)

    def canonical(self) -> "CumulativeFunction":
        """Merge neighbouring intervals that share a polynomial and carry no atom."""
        bps = [self.breakpoints[0]]
        ps: list[Poly] = []
        amap = dict(self.atoms)
        for i, p in enumerate(self.pieces):
            b = self.breakpoints[i]
            if ps and ps[-1] == p and amap.get(b, ZERO) == 0:
                bps[-1] = self.breakpoints[i + 1]
                continue
            ps.append(p)
            bps.append(self.breakpoints[i + 1])
        if (tuple(bps), tuple(ps)) == (self.breakpoints, self.pieces):
            return self
        return CumulativeFunction(tuple(bps), tuple(ps), self.atoms)

    def refine(self, breakpoints: Iterable[Fraction]) -> "CumulativeFunction":
        """Same function on a finer partition."""
        bps = sorted(set(self.breakpoints) | {_frac(b) for b in breakpoints})
        ps = []
        for a, b in zip(bps, bps[1:]):
            ps.append(self.pieces[self.piece_index((a + b) / 2)])
        return CumulativeFunction(tuple(bps), tuple(ps), self.atoms)

    def piece_index(self, t: Fraction) -> int:
        """Index of the piece whose open interval contains ``t`` (or starts at it)."""
        i = bisect_right(self.breakpoints, t) - 1
        return min(max(i, 0), len(self.pieces) - 1)

    def intervals(self):
        return zip(self.breakpoints, self.breakpoints[1:], self.pieces)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        return cf_linear_combination([(ONE, self), (ONE, other)])

    def __sub__(self, other):
        return cf_linear_combination([(ONE, self), (-ONE, other)])

    def __neg__(self):
        return cf_linear_combination([(-ONE, self)])

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return cf_linear_combination([(_frac(c), self)])

    __rmul__ = __mul__

    def __call__(self, t: Number, side: Side = Side.RIGHT) -> Fraction:
        return cf_eval(self, t, side)

    # -- serialization --------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "breakpoints": [frac_str(b) for b in self.breakpoints],
            "pieces": [[frac_str(c) for c in p.coeffs] for p in self.pieces],
            "atoms": [[frac_str(x), frac_str(m)] for x, m in self.atoms],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CumulativeFunction":
        return cls(
            tuple(Fraction(b) for b in data["breakpoints"]),
            tuple(Poly(Fraction(c) for c in p) for p in data["pieces"]),
            tuple((Fraction(x), Fraction(m)) for x, m in data["atoms"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "CumulativeFunction":
        return cls.from_dict(json.loads(text))


def frac_str(x: Fraction) -> str:
    x = _frac(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PiecewiseFunction:
    """Continuous piecewise polynomial on ``[0, 1]`` (used for primitives)."""

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]

    def __call__(self, t: Number) -> Fraction:
        t = _frac(t)
        if not 0 <= t <= 1:
            raise OutOfDomain(f"{t} outside [0, 1]")
        i = bisect_right(self.breakpoints, t) - 1
        i = min(max(i, 0), len(self.pieces) - 1)
        return poly_eval(self.pieces[i], t)

    def intervals(self):
        return zip(self.breakpoints, self.breakpoints[1:], self.pieces)

    def sample(self, xs: Iterable[Number]) -> list[float]:
        return [float(self(x)) for x in xs]


def cf_eval(F: CumulativeFunction, t: Number, side: Side = Side.RIGHT) -> Fraction:
    """One-sided limit of ``F`` at ``t``; ``F(0-) = 0`` and ``F(1+) = F(1)``."""
    t = _frac(t)
    if not 0 <= t <= 1:
        raise OutOfDomain(f"{t} outside [0, 1]")
    if t == 0 and side is Side.LEFT:
        return ZERO
    if t == 1:
        left = poly_eval(F.pieces[-1], ONE)
        return left + F.atom_mass(ONE) if side is Side.RIGHT else left
    bps = F.breakpoints
    if side is Side.LEFT:
        i = bisect_left(bps, t) - 1
    else:
        i = bisect_right(bps, t) - 1
    return poly_eval(F.pieces[i], t)


def cf_linear_combination(
    terms: Sequence[tuple[Number, CumulativeFunction]],
) -> CumulativeFunction:
    """Pointwise ``sum(c * F)`` with merged breakpoints and atoms."""
    if not terms:
        raise ValueError("need at least one term")
    bps = sorted({b for _, F in terms for b in F.breakpoints})
    refined = [(_frac(c), F.refine(bps)) for c, F in terms]
    pieces = []
    for i in range(len(bps) - 1):
        acc = Poly()
        for c, F in refined:
            acc = acc + F.pieces[i] * c
        pieces.append(acc)
    masses: dict[Fraction, Fraction] = {}
    for c, F in refined:
        for x, m in F.atoms:
            masses[x] = masses.get(x, ZERO) + c * m
    return CumulativeFunction(tuple(bps), tuple(pieces), tuple(masses.items())).canonical()


def cf_primitive(F: CumulativeFunction) -> PiecewiseFunction:
    """``G(x) = \\int_0^x F(t) dt`` as a continuous piecewise polynomial."""
    pieces = []
    offset = ZERO
    for a, b, p in F.intervals():
        A = poly_antiderivative(p)
        g = A + (offset - poly_eval(A, a))
        pieces.append(g)
        offset = poly_eval(g, b)
    return PiecewiseFunction(F.breakpoints, tuple(pieces))


def cf_integrate_poly(F: CumulativeFunction, f: Poly) -> Fraction:
    """Exact Stieltjes integral ``\\int_{[0,1]} f dF`` for polynomial ``f``."""
    total = ZERO
    for a, b, p in F.intervals():
        dp = p.derivative()
        if dp.is_zero():
            continue
        A = poly_antiderivative(f * dp)
        total += poly_eval(A, b) - poly_eval(A, a)
    for x, m in F.atoms:
        total += poly_eval(f, x) * m
    return total


def cf_moment(F: CumulativeFunction, k: int) -> Fraction:
    """``\\int_0^1 t^k dF(t)``."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    return cf_integrate_poly(F, Poly([0] * k + [1]))


def cf_integrate_hinge(F: CumulativeFunction, c: Number) -> Fraction:
    """Exact ``\\int_{[0,1]} max(t - c, 0) dF(t)``."""
    c = _frac(c)
    hinge = Poly([-c, 1])
    total = ZERO
    for a, b, p in F.intervals():
        lo = max(a, c)
        if lo >= b:
            continue
        dp = p.derivative()
        if dp.is_zero():
            continue
        A = poly_antiderivative(hinge * dp)
        total += poly_eval(A, b) - poly_eval(A, lo)
    for x, m in F.atoms:
        if x > c:
            total += (x - c) * m
    return total


@dataclass(frozen=True)
class Crossing:
    """Sign change of ``F1 - F2`` located inside ``[lo, hi]``."""

    lo: Fraction
    hi: Fraction
    before: int
    after: int

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi


def _sign_runs(D: CumulativeFunction):
    """Sign-definite runs of ``D`` on ``(0, 1)`` in order.

    Yields ``(start, end, sign)`` where ``start``/``end`` are the
    ``RootInterval`` boundaries of the run and ``sign`` is -1, 0 or +1.
    """
    for a, b, p in D.intervals():
        if p.is_zero():
            yield RootInterval(a, a), RootInterval(b, b), 0
            continue
        roots = [r for r in isolate_roots(p, a, b)]
        bounds = [RootInterval(a, a)]
        bounds += [r for r in roots if r.lo > a or r.hi > a]
        if bounds[-1].hi != b:
            bounds.append(RootInterval(b, b))
        # drop an exact root sitting on the left end (already the start bound)
        cleaned = [bounds[0]]
        for r in bounds[1:]:
            if r != cleaned[-1]:
                cleaned.append(r)
        for s, e in zip(cleaned, cleaned[1:]):
            mid = (s.hi + e.lo) / 2
            v = poly_eval(p, mid)
            yield s, e, (v > 0) - (v < 0)


def crossing_points(F1: CumulativeFunction, F2: CumulativeFunction) -> list[Crossing]:
    """Ordered sign changes of ``F1 - F2`` on ``(0, 1)``.

    Zeros without a sign change (tangencies) are not crossings.  A crossing
    is reported on the smallest known interval joining the end of the last
    nonzero run to the start of the next one.
    """
    D = F1 - F2
    out = []
    last_sign = 0
    last_end = None
    for start, end, s in _sign_runs(D):
        if s == 0:
            continue
        if last_sign and s != last_sign:
            out.append(Crossing(last_end.lo, start.hi, last_sign, s))
        last_sign, last_end = s, end
    return out


def is_cdf(F: CumulativeFunction) -> bool:
    """Nondecreasing with nonnegative atoms and ``F(1) = 1``."""
    if any(m < 0 for _, m in F.atoms):
        return False
    for a, b, p in F.intervals():
        if sign_on_interval(p.derivative(), a, b) not in (
            Sign.NONNEGATIVE,
            Sign.IDENTICALLY_ZERO,
        ):
            return False
    return cf_eval(F, 1, Side.RIGHT) == 1
