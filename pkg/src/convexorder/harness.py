"""Claim suite, regime tables, sharp-threshold search and report output."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .bvfunction import (
    CumulativeFunction,
    cf_moment,
    crossing_points,
    frac_str,
)
from .catalog import FunctionalSpec, make_weight
from .convex_order import (
    Relation,
    Verdict,
    hinge_gap,
    levin_stechkin_compare,
    primitive_gap,
)
from .polynomial import Number, Poly, _frac

S = FunctionalSpec
Family = Callable[[Fraction], FunctionalSpec]
Target = Union[FunctionalSpec, Family]


class NoBracket(ValueError):
    """The predicate has the same value at both ends of the search interval."""


def _fmt_float(x: float) -> str:
    return format(float(x), ".15g")


# -- thresholds -----------------------------------------------------------------
@dataclass(frozen=True)
class ThresholdBracket:
    lo: Fraction
    hi: Fraction
    holds_at_lo: bool
    exact: Optional[Fraction] = None
    description: str = ""

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "lo": frac_str(self.lo),
            "hi": frac_str(self.hi),
            "holds_at_lo": self.holds_at_lo,
            "exact": None if self.exact is None else frac_str(self.exact),
        }


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in ``[lo, hi]`` (Stern-Brocot descent)."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if Fraction(fl) == lo:
        return lo
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part; recurse on reciprocals of fractional parts
    rest = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest


def bisect_flip(
    pred: Callable[[Fraction], bool],
    lo: Number,
    hi: Number,
    tol: Number = Fraction(1, 10**10),
    description: str = "",
) -> ThresholdBracket:
    """Bracket the point where ``pred`` changes value on ``[lo, hi]``.

    After bisection the simplest rational in the bracket is probed from both
    sides; if the predicate flips across it, it is reported as ``exact``.
    """
    lo, hi, tol = _frac(lo), _frac(hi), _frac(tol)
    at_lo, at_hi = pred(lo), pred(hi)
    if at_lo == at_hi:
        raise NoBracket(f"predicate is {at_lo} at both {lo} and {hi}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if pred(mid) == at_lo:
            lo = mid
        else:
            hi = mid
    exact = None
    s = simplest_between(lo, hi)
    eta = (hi - lo) / 2**40
    if pred(s - eta) == at_lo and pred(s + eta) != at_lo:
        exact = s
        if pred(s) == at_lo:
            lo = s
        else:
            hi = s
    return ThresholdBracket(lo, hi, at_lo, exact, description)


def _resolve(target: Target, p: Fraction) -> FunctionalSpec:
    return target(p) if callable(target) else target


def verdict_holds(family_spec: FunctionalSpec, target_spec: FunctionalSpec, direction: str) -> bool:
    """``family <= target`` (``LE``) or ``family >= target`` (``GE``) over all convex f."""
    v = levin_stechkin_compare(make_weight(family_spec), make_weight(target_spec))
    if direction == "LE":
        return v.holds_le
    if direction == "GE":
        return v.holds_ge
    raise ValueError(f"direction must be LE or GE, got {direction!r}")


def find_threshold(
    family: Family,
    target: Target,
    direction: str,
    lo: Number,
    hi: Number,
    tol: Number = Fraction(1, 10**10),
    description: str = "",
) -> ThresholdBracket:
    """Sharp parameter at which ``family(p) <dir> target`` stops holding."""
    return bisect_flip(
        lambda p: verdict_holds(family(p), _resolve(target, p), direction),
        lo, hi, tol, description,
    )


# -- claim suite ----------------------------------------------------------------
@dataclass
class ClaimResult:
    claim_id: str
    expected: str
    computed: str
    passed: bool
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class SuiteResult:
    claims: list[ClaimResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_dict(self) -> dict:
        return {"all_passed": self.all_passed, "claims": [c.to_dict() for c in self.claims]}

    @classmethod
    def from_dict(cls, data: dict) -> "SuiteResult":
        return cls([ClaimResult(**c) for c in data["claims"]])


def counterexample_payload(v: Verdict) -> Optional[dict]:
    if v.relation is not Relation.INCOMPARABLE:
        return None
    out = {}
    for key, c in (("witness_plus", v.witness_plus), ("witness_minus", v.witness_minus)):
        out[key] = {"hinge_knot": frac_str(c), "gap": frac_str(hinge_gap(v.first, v.second, c))}
    return out


def _cmp(a: FunctionalSpec, b: FunctionalSpec) -> Verdict:
    return levin_stechkin_compare(make_weight(a), make_weight(b))


LE, GE, EQ, INC, NN = (Relation.LESS_OR_EQUAL, Relation.GREATER_OR_EQUAL, Relation.EQUAL,
                       Relation.INCOMPARABLE, Relation.NOT_NORMALIZED)

T_GRID = [Fraction(a) for a in (-10, -6, -2, 0, 1, 2, 4, 6, 8)]
ALPHA_CHAIN_GRID = [Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(9, 10)]
S2_GRID = sorted({Fraction(k, 10) for k in range(1, 10)}
                 | {Fraction(1, 4), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4)})
THIRD, TWO_THIRDS = Fraction(1, 3), Fraction(2, 3)
T_TARGETS = {"uniform": S.uniform(), "mid": S.midpoint(), "trap": S.trapezoid()}


def t_family_expectations(a: Fraction) -> dict[str, Relation]:
    """Expected relation of ``T_a`` against the mean, midpoint and trapezoid."""
    mean = EQ if a == 0 else (LE if a > 0 else GE)
    if a <= 2:
        mid = GE
    elif a >= 6:
        mid = LE
    else:
        mid = INC
    trap = LE if a >= -6 else INC
    return {"uniform": mean, "mid": mid, "trap": trap}


def s2_expectations(alpha: Fraction) -> dict[str, Relation]:
    """Expected relations in the non-symmetric family for ``0 < alpha < 1``."""
    eval_s2 = LE if THIRD <= alpha <= TWO_THIRDS else INC
    if alpha == Fraction(1, 2):
        s2_s1 = EQ
    elif alpha <= THIRD or alpha >= TWO_THIRDS:
        s2_s1 = LE
    else:
        s2_s1 = INC
    return {"S2<=ends": LE, "eval<=S2": eval_s2, "S2<=S1": s2_s1}


def mixture(*terms) -> FunctionalSpec:
    return S.mixture(terms)


def lambda_family(lam: Fraction) -> FunctionalSpec:
    return mixture((lam, S.double_average()), (1 - lam, S.trapezoid()))


def gamma_family(gamma: Fraction) -> FunctionalSpec:
    return mixture((gamma, S.uniform()), (1 - gamma, S.midpoint()))


def simpson_family(a: Fraction) -> FunctionalSpec:
    """``a f(x) + (1 - 2a) f((x+y)/2) + a f(y)``."""
    return mixture((2 * a, S.trapezoid()), (1 - 2 * a, S.midpoint()))


def single_quadratic_weight(a: Number) -> CumulativeFunction:
    """``a t^2 + (1 - a) t``: one quadratic normalised to ``F(0)=0, F(1)=1``."""
    a = _frac(a)
    return CumulativeFunction.from_pieces([0, 1], [Poly([0, 1 - a, a])])


def s2_moment_gap(alpha: Fraction) -> Fraction:
    """Second moment of the S2 weight minus that of the evaluation weight."""
    return cf_moment(make_weight(S.S2(alpha)), 2) - cf_moment(make_weight(S.eval_at(alpha)), 2)


def threshold_problems() -> list[tuple[str, Callable[[], ThresholdBracket], Fraction]]:
    """(claim id, search, expected exact value) for every sharp constant."""
    T, mid, trap, davg, uni = S.T, S.midpoint(), S.trapezoid(), S.double_average(), S.uniform()
    return [
        ("thr-T-vs-mid-GE", lambda: find_threshold(T, mid, "GE", 0, 4), Fraction(2)),
        ("thr-T-vs-mid-LE", lambda: find_threshold(T, mid, "LE", 4, 8), Fraction(6)),
        ("thr-T-vs-trap-LE", lambda: find_threshold(T, trap, "LE", -10, 0), Fraction(-6)),
        ("thr-lambda-mixture", lambda: find_threshold(lambda_family, uni, "GE", Fraction(1, 2), 1),
         Fraction(3, 4)),
        ("thr-gamma-mixture", lambda: find_threshold(gamma_family, davg, "GE", 0, 1),
         Fraction(2, 3)),
        ("thr-simpson-family", lambda: find_threshold(simpson_family, davg, "GE", 0, Fraction(1, 2)),
         Fraction(1, 6)),
        ("thr-S2-eval-lower", lambda: find_threshold(S.S2, S.eval_at, "GE", Fraction(1, 10),
                                                     Fraction(1, 2)), THIRD),
        ("thr-S2-eval-upper", lambda: find_threshold(S.S2, S.eval_at, "GE", Fraction(1, 2),
                                                     Fraction(9, 10)), TWO_THIRDS),
        ("thr-S2-S1-lower", lambda: find_threshold(S.S2, S.S1, "LE", Fraction(1, 10),
                                                   Fraction(2, 5)), THIRD),
        ("thr-S2-S1-upper", lambda: find_threshold(S.S2, S.S1, "LE", Fraction(3, 5),
                                                   Fraction(9, 10)), TWO_THIRDS),
    ]


def moment_threshold(tol: Number = Fraction(1, 10**10)) -> ThresholdBracket:
    """Bracket the smaller root of equal second moments, ``(3 - sqrt 3) / 6``."""
    return bisect_flip(lambda a: s2_moment_gap(a) >= 0, Fraction(1, 10), Fraction(1, 2), tol,
                       "second moments of S2 and eval weights coincide")


def run_theorem_suite() -> SuiteResult:
    """Evaluate every verdict, identity, moment and threshold claim."""
    out: list[ClaimResult] = []

    def verdict_claim(cid: str, a: FunctionalSpec, b: FunctionalSpec, expected: Relation):
        v = _cmp(a, b)
        out.append(ClaimResult(cid, expected.value, v.relation.value, v.relation is expected,
                               counterexample_payload(v)))

    uni, mid, trap, davg = S.uniform(), S.midpoint(), S.trapezoid(), S.double_average()
    verdict_claim("chain: mid<=uniform", mid, uni, LE)
    verdict_claim("chain: uniform<=trap", uni, trap, LE)
    verdict_claim("identity: T_2 == davg", S.T(2), davg, EQ)
    verdict_claim("chain: mid<=davg", mid, davg, LE)
    verdict_claim("chain: davg<=uniform", davg, uni, LE)

    for a in T_GRID:
        for name, rel in t_family_expectations(a).items():
            verdict_claim(f"T-family: T_{a} vs {name}", S.T(a), T_TARGETS[name], rel)

    verdict_claim("sharp mix: davg<=2/3 uniform+1/3 mid", davg, gamma_family(TWO_THIRDS), LE)
    verdict_claim("sharp mix: uniform<=3/4 davg+1/4 trap", uni, lambda_family(Fraction(3, 4)), LE)
    verdict_claim("weak mix: uniform<=2/3 davg+1/3 trap", uni, lambda_family(TWO_THIRDS), LE)
    verdict_claim("bound: davg<=simpson", davg, S.simpson_like(), LE)
    verdict_claim("bound: quarter<=uniform", S.composite_quarter(), uni, LE)

    for q in (Fraction(1), Fraction(-1, 2)):
        F = single_quadratic_weight(q)
        for name in ("uniform", "mid", "trap"):
            v = levin_stechkin_compare(F, make_weight(T_TARGETS[name]))
            out.append(ClaimResult(f"unnormalized: quadratic a={q} vs {name}", NN.value,
                                   v.relation.value, v.relation is NN))

    for al in ALPHA_CHAIN_GRID:
        verdict_claim(f"alpha-chain: eval<=S1 alpha={al}", S.eval_at(al), S.S1(al), LE)
        verdict_claim(f"alpha-chain: S1<=ends alpha={al}", S.S1(al), S.endpoints(al), LE)

    for al in S2_GRID:
        exp = s2_expectations(al)
        verdict_claim(f"S2 bands: S2<=ends alpha={al}", S.S2(al), S.endpoints(al), exp["S2<=ends"])
        verdict_claim(f"S2 bands: eval<=S2 alpha={al}", S.eval_at(al), S.S2(al), exp["eval<=S2"])
        verdict_claim(f"S2 bands: S2<=S1 alpha={al}", S.S2(al), S.S1(al), exp["S2<=S1"])

    for al in S2_GRID:
        m9 = cf_moment(make_weight(S.S2(al)), 2)
        m6 = cf_moment(make_weight(S.eval_at(al)), 2)
        exp = f"{frac_str(Fraction(5, 6) - al)},{frac_str((1 - al) ** 2)}"
        got = f"{frac_str(m9)},{frac_str(m6)}"
        out.append(ClaimResult(f"moments: alpha={al}", exp, got, exp == got))

    for num in (21131, 21132, 21133):
        al = Fraction(num, 100000)
        n = len(crossing_points(make_weight(S.S2(al)), make_weight(S.eval_at(al))))
        out.append(ClaimResult(f"crossings: S2 vs eval alpha={al}", "2", str(n), n == 2))

    for cid, search, expected in threshold_problems():
        br = search()
        got = "none" if br.exact is None else str(br.exact)
        out.append(ClaimResult(cid, str(expected), got, br.exact == expected))

    br = moment_threshold()
    # (3 - sqrt 3)/6 is the root of 6a^2 - 6a + 1; it lies in [lo, hi] iff the sign changes
    q = Poly([1, -6, 6])
    inside = q(br.lo) * q(br.hi) <= 0 and br.width <= Fraction(1, 10**9)
    out.append(ClaimResult("thr-moment-(3-sqrt3)/6", "bracket width<=1e-9 around 0.2113248654",
                           f"[{float(br.lo):.12f}, {float(br.hi):.12f}]", inside))
    return SuiteResult(out)


# -- regime tables ---------------------------------------------------------------
@dataclass
class RegimeRow:
    param: Fraction
    target: str
    verdict: Verdict


@dataclass
class RegimeReport:
    family: str
    grid: list[Fraction]
    rows: list[RegimeRow]
    thresholds: list[tuple[str, Fraction, Fraction]]


def regime_report(
    family_name: str,
    family: Family,
    targets: Sequence[FunctionalSpec],
    grid: Sequence[Number],
) -> RegimeReport:
    """Verdict of ``family(p)`` against each target on a grid, with flip brackets."""
    grid = [_frac(p) for p in grid]
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    rows, thresholds = [], []
    for tgt in targets:
        prev = None
        for p in grid:
            v = levin_stechkin_compare(make_weight(family(p)), make_weight(tgt))
            rows.append(RegimeRow(p, str(tgt), v))
            if prev is not None and prev[1].relation is not v.relation:
                thresholds.append((str(tgt), prev[0], p))
            prev = (p, v)
    return RegimeReport(family_name, grid, rows, thresholds)


# -- G sampling ----------------------------------------------------------------------
@dataclass
class GCurve:
    first: str
    second: str
    xs: list[Fraction]
    values: list[Fraction]


def sample_g(a: FunctionalSpec, b: FunctionalSpec, n: int = 1024) -> GCurve:
    """``G(x) = \\int_0^x (F_b - F_a)`` on ``n`` equally spaced points of ``[0, 1]``."""
    G = primitive_gap(make_weight(a), make_weight(b))
    xs = [Fraction(i, n - 1) for i in range(n)]
    return GCurve(str(a), str(b), xs, [G(x) for x in xs])


# -- reports -----------------------------------------------------------------------
def _verdict_dict(v: Verdict) -> dict:
    d = {
        "relation": v.relation.value,
        "endpoint_check": v.endpoint_check,
        "mean_check": v.mean_check,
        "gap_sign": None if v.gap_sign is None else v.gap_sign.value,
    }
    if v.relation is Relation.INCOMPARABLE:
        d["counterexample"] = counterexample_payload(v)
    return d


def render_report(result, fmt: str = "text") -> str:
    """Deterministic text, CSV or JSON rendering of a harness result."""
    if fmt not in ("text", "csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(result, SuiteResult):
        return _render_suite(result, fmt)
    if isinstance(result, RegimeReport):
        return _render_regime(result, fmt)
    if isinstance(result, ThresholdBracket):
        return _render_threshold(result, fmt)
    if isinstance(result, GCurve):
        return _render_g(result, fmt)
    if isinstance(result, Verdict):
        return _render_verdict(result, fmt)
    raise TypeError(f"cannot render {type(result).__name__}")


def emit_report(result, fmt: str, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(render_report(result, fmt))


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _render_suite(r: SuiteResult, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = [["claim_id", "expected", "computed", "passed", "counterexample"]]
        for c in r.claims:
            ce = "" if c.counterexample is None else json.dumps(c.counterexample, sort_keys=True)
            rows.append([c.claim_id, c.expected, c.computed, c.passed, ce])
        return _csv(rows)
    width = max(len(c.claim_id) for c in r.claims)
    lines = []
    for c in r.claims:
        mark = "PASS" if c.passed else "FAIL"
        line = f"{mark}  {c.claim_id:<{width}}  expected={c.expected}  computed={c.computed}"
        if c.counterexample:
            wp, wm = c.counterexample["witness_plus"], c.counterexample["witness_minus"]
            line += (f"  hinges: c+={wp['hinge_knot']} gap={wp['gap']},"
                     f" c-={wm['hinge_knot']} gap={wm['gap']}")
        lines.append(line)
    n_ok = sum(c.passed for c in r.claims)
    lines.append(f"{n_ok}/{len(r.claims)} claims passed")
    return "\n".join(lines) + "\n"


def _render_regime(r: RegimeReport, fmt: str) -> str:
    if fmt == "json":
        data = {
            "family": r.family,
            "grid": [frac_str(p) for p in r.grid],
            "rows": [{"param": frac_str(x.param), "target": x.target, **_verdict_dict(x.verdict)}
                     for x in r.rows],
            "thresholds": [{"target": t, "lo": frac_str(a), "hi": frac_str(b)}
                           for t, a, b in r.thresholds],
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        rows = [["family", "param", "target", "relation", "witness_plus", "witness_minus"]]
        for x in r.rows:
            v = x.verdict
            rows.append([r.family, frac_str(x.param), x.target, v.relation.value,
                         "" if v.witness_plus is None else frac_str(v.witness_plus),
                         "" if v.witness_minus is None else frac_str(v.witness_minus)])
        return _csv(rows)
    lines = [f"family {r.family}"]
    for x in r.rows:
        lines.append(f"  p={x.param!s:>6}  vs {x.target:<10} {x.verdict.relation.value}")
    for t, a, b in r.thresholds:
        lines.append(f"  verdict vs {t} changes in [{a}, {b}]")
    return "\n".join(lines) + "\n"


def _render_threshold(b: ThresholdBracket, fmt: str) -> str:
    d = b.to_dict()
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv([list(d), list(d.values())])
    ex = "not rational on the probe grid" if b.exact is None else str(b.exact)
    return (f"bracket [{b.lo}, {b.hi}] (~[{_fmt_float(b.lo)}, {_fmt_float(b.hi)}]),"
            f" holds at lo: {b.holds_at_lo}, exact: {ex}\n")


def _render_g(g: GCurve, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"first": g.first, "second": g.second,
                           "x": [_fmt_float(x) for x in g.xs],
                           "G": [_fmt_float(v) for v in g.values]}, indent=2) + "\n"
    rows = [["x", "G"]] + [[_fmt_float(x), _fmt_float(v)] for x, v in zip(g.xs, g.values)]
    if fmt == "csv":
        return _csv(rows)
    return "\n".join(f"{a}\t{b}" for a, b in rows) + "\n"


def _render_verdict(v: Verdict, fmt: str) -> str:
    d = _verdict_dict(v)
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv([["relation", "endpoint_check", "mean_check", "gap_sign"],
                     [d["relation"], d["endpoint_check"], d["mean_check"], d["gap_sign"]]])
    line = f"{d['relation']} (endpoints equal: {v.endpoint_check}, means equal: {v.mean_check})"
    if "counterexample" in d:
        wp, wm = d["counterexample"]["witness_plus"], d["counterexample"]["witness_minus"]
        line += (f"\n  hinge max(t-{wp['hinge_knot']},0): gap {wp['gap']}"
                 f"\n  hinge max(t-{wm['hinge_knot']},0): gap {wm['gap']}")
    return line + "\n"
