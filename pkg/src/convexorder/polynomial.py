"""Exact univariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` values stored lowest degree
first.  Real roots are isolated with Sturm sequences and refined by rational
bisection, so every sign decision made here is exact.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import lcm, gcd
from typing import Iterable, NamedTuple, Sequence, Union

Number = Union[int, Fraction]


class ZeroPolynomial(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


class Sign(enum.Enum):
    NONNEGATIVE = "Nonnegative"
    NONPOSITIVE = "Nonpositive"
    IDENTICALLY_ZERO = "Zero"
    MIXED = "Mixed"


class RootInterval(NamedTuple):
    """Closed interval ``[lo, hi]`` holding exactly one real root."""

    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi


def _frac(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Poly:
    """Immutable polynomial ``sum(c[i] * t**i)`` with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def identity(cls) -> "Poly":
        return cls([0, 1])

    # -- basic protocol -------------------------------------------------
    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{i}")
        return " + ".join(reversed(terms))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self.coeffs)
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        lead = other.leading
        quot = [Fraction(0)] * max(len(rem) - dd, 1)
        while len(rem) - 1 >= dd and rem:
            shift = len(rem) - 1 - dd
            q = rem[-1] / lead
            quot[shift] = q
            for j, b in enumerate(other.coeffs):
                rem[shift + j] -= q * b
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, t: Number) -> Fraction:
        return poly_eval(self, t)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def antiderivative(self) -> "Poly":
        return poly_antiderivative(self)

    def compose_affine(self, shift: Number, scale: Number) -> "Poly":
        """Return ``t -> self(shift + scale * t)``."""
        lin = Poly([shift, scale])
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def primitive_integer(self) -> list[int]:
        """Integer coefficients of a positive multiple with content 1."""
        if self.is_zero():
            return []
        m = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * m) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints]

    def to_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


def poly_eval(p: Poly, t: Number) -> Fraction:
    """Exact Horner evaluation."""
    t = _frac(t)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * t + c
    return acc


def poly_antiderivative(p: Poly) -> Poly:
    """Antiderivative vanishing at 0."""
    return Poly([0] + [c / (i + 1) for i, c in enumerate(p.coeffs)])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no square-free part")
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm sequence of the square-free part of ``p``."""
    q = squarefree_part(p)
    seq = [q, q.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: Sequence[Poly], t: Fraction) -> int:
    signs = [v > 0 for v in (poly_eval(s, t) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: Poly, lo: Number, hi: Number) -> int:
    """Number of distinct real roots in the half-open interval ``(lo, hi]``."""
    seq = sturm_sequence(p)
    return _variations(seq, _frac(lo)) - _variations(seq, _frac(hi))


def _bisect_simple(q: Poly, lo: Fraction, hi: Fraction) -> RootInterval:
    """Shrink ``[lo, hi]`` around a simple root with a strict sign change.

    The interval is narrowed until at most one rational of the admissible
    denominators fits inside; that candidate is then tested exactly.
    """
    ints = q.primitive_integer()
    lead = abs(ints[-1])
    target = Fraction(1, lead * lead + 1)
    flo = poly_eval(q, lo)
    while hi - lo >= target:
        mid = (lo + hi) / 2
        fm = poly_eval(q, mid)
        if fm == 0:
            return RootInterval(mid, mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo <= cand <= hi and poly_eval(q, cand) == 0:
        return RootInterval(cand, cand)
    return RootInterval(lo, hi)


def isolate_roots(p: Poly, lo: Number, hi: Number) -> list[RootInterval]:
    """Disjoint isolating intervals for the distinct real roots of ``p`` in ``[lo, hi]``.

    Rational roots come back as degenerate intervals ``[r, r]``.
    """
    lo, hi = _frac(lo), _frac(hi)
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    if lo > hi:
        raise ValueError("empty interval")
    q = squarefree_part(p)
    if q.degree <= 0:
        return []
    seq = sturm_sequence(q)
    out: list[RootInterval] = []
    if poly_eval(q, lo) == 0:
        out.append(RootInterval(lo, lo))
    if lo == hi:
        return out

    stack = [(lo, hi, _variations(seq, lo), _variations(seq, hi))]
    found: list[RootInterval] = []
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            if poly_eval(q, b) == 0:
                found.append(RootInterval(b, b))
                continue
            if poly_eval(q, a) != 0:
                found.append(_bisect_simple(q, a, b))
                continue
        m = (a + b) / 2
        vm = _variations(seq, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out.extend(sorted(found))
    return _separate(q, out)


def _separate(q: Poly, roots: list[RootInterval]) -> list[RootInterval]:
    """Pull in right ends until consecutive intervals no longer touch."""
    roots = list(roots)
    for i in range(len(roots) - 1):
        left, right = roots[i], roots[i + 1]
        if left.hi < right.lo:
            continue
        # touching intervals share a non-root endpoint; neither is degenerate
        lo, hi = left
        fhi = poly_eval(q, hi)
        while True:
            mid = (lo + hi) / 2
            fm = poly_eval(q, mid)
            if fm == 0:
                roots[i] = RootInterval(mid, mid)
                break
            if (fm > 0) == (fhi > 0):
                roots[i] = RootInterval(lo, mid)
                break
            lo = mid
    return roots


def refine_root(p: Poly, interval: RootInterval, steps: int = 1) -> RootInterval:
    """Bisect an isolating interval ``steps`` times, keeping the root inside.

    The endpoints of a non-degenerate interval must not be roots.
    """
    lo, hi = interval
    if lo == hi:
        return interval
    q = squarefree_part(p)
    flo, fhi = poly_eval(q, lo), poly_eval(q, hi)
    if flo == 0 or fhi == 0 or (flo > 0) == (fhi > 0):
        raise ValueError("interval endpoints must bracket a simple root")
    for _ in range(steps):
        mid = (lo + hi) / 2
        fm = poly_eval(q, mid)
        if fm == 0:
            return RootInterval(mid, mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return RootInterval(lo, hi)


def sign_on_interval(p: Poly, lo: Number, hi: Number) -> Sign:
    """Exact sign class of ``p`` on ``[lo, hi]``; isolated zeros are ignored."""
    lo, hi = _frac(lo), _frac(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if p.is_zero():
        return Sign.IDENTICALLY_ZERO
    if lo == hi:
        v = poly_eval(p, lo)
        if v == 0:
            return Sign.IDENTICALLY_ZERO
        return Sign.NONNEGATIVE if v > 0 else Sign.NONPOSITIVE
    signs = {poly_eval(p, t) > 0 for t in sample_points(p, lo, hi)}
    if signs == {True}:
        return Sign.NONNEGATIVE
    if signs == {False}:
        return Sign.NONPOSITIVE
    return Sign.MIXED


def sign_regions(p: Poly, lo: Number, hi: Number) -> list[tuple[Fraction, Fraction, int]]:
    """Maximal root-free open subintervals of ``(lo, hi)`` with the sign of ``p`` there.

    Each item is ``(a, b, s)`` where ``s`` is +1 or -1 and ``a``/``b`` are the
    bounding endpoints (isolating-interval ends for irrational roots).
    """
    lo, hi = _frac(lo), _frac(hi)
    if p.is_zero() or lo >= hi:
        return []
    roots = isolate_roots(p, lo, hi)
    bounds = [lo]
    for r in roots:
        bounds.extend([r.lo, r.hi])
    bounds.append(hi)
    out = []
    for a, b in zip(bounds[::2], bounds[1::2]):
        if a < b:
            v = poly_eval(p, (a + b) / 2)
            out.append((a, b, 1 if v > 0 else -1))
    return out


def sample_points(p: Poly, lo: Fraction, hi: Fraction) -> list[Fraction]:
    """One rational point inside every root-free gap of ``[lo, hi]``."""
    return [(a + b) / 2 for a, b, _ in sign_regions(p, lo, hi)]
