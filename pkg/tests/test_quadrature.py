import math
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from convexorder.bvfunction import cf_moment
from convexorder.catalog import FunctionalSpec as S, functional_value_exact, make_weight
from convexorder.convex_order import hinge_gap, levin_stechkin_compare, Relation
from convexorder.polynomial import Poly
from convexorder.quadrature import (
    DEFAULT_TOL,
    ToleranceNotMet,
    affine,
    double_average_direct,
    exponential,
    functional_numeric,
    hinge,
    integrate,
    piecewise_linear_convex,
    polynomial,
    power,
    random_convex,
    stieltjes_numeric,
)

from .conftest import specs

TOL = DEFAULT_TOL
E = math.e
polys = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6),
                 min_size=1, max_size=7).map(Poly)


def test_integrate_examples():
    assert integrate(power(2), 0, 1).value == pytest.approx(1 / 3, abs=TOL)
    assert integrate(hinge(0.5), 0, 1).value == pytest.approx(1 / 8, abs=1e-15)
    assert integrate(exponential(), 0, 1).value == pytest.approx(E - 1, abs=TOL)
    r = integrate(exponential(), 0, 1)
    assert 0 <= r.error_estimate <= TOL
    with pytest.raises(ValueError):
        integrate(power(2), 1, 0)


def test_integrate_budget_exhausted():
    wild = piecewise_linear_convex([], [0.0])
    wild = type(wild)(lambda t: math.sin(1e6 * t), "Wild")
    with pytest.raises(ToleranceNotMet):
        integrate(wild, 0, 1, tol=1e-14)


def test_stieltjes_examples():
    assert stieltjes_numeric(power(2), make_weight(S.double_average())).value == pytest.approx(
        7 / 24, abs=TOL)
    assert stieltjes_numeric(exponential(), make_weight(S.trapezoid())).value == pytest.approx(
        (1 + E) / 2, abs=TOL)


@given(specs())
def test_stieltjes_of_identity_is_first_moment(spec):
    F = make_weight(spec)
    assert stieltjes_numeric(affine(1, 0), F).value == pytest.approx(
        float(cf_moment(F, 1)), abs=10 * TOL)


def test_double_average_examples():
    assert double_average_direct(power(2), 0, 1).value == pytest.approx(7 / 24, abs=TOL)
    assert double_average_direct(affine(3, -1), 0, 1).value == pytest.approx(0.5, abs=TOL)
    closed = 4 * (math.sqrt(E) - 1) ** 2
    assert closed == pytest.approx(1.683357148, abs=1e-9)
    for tensor in (False, True):
        assert double_average_direct(exponential(), 0, 1, tensor=tensor).value == pytest.approx(
            closed, abs=10 * TOL)


@pytest.mark.parametrize("f", [exponential(), power(4), hinge(1 / 3), hinge(0.7)],
                         ids=lambda f: f.kind)
def test_tent_and_tensor_agree(f):
    a = double_average_direct(f, -1, 2).value
    b = double_average_direct(f, -1, 2, tensor=True).value
    assert a == pytest.approx(b, abs=10 * TOL)


def test_functional_numeric_examples():
    assert functional_numeric(S.midpoint(), power(2)).value == pytest.approx(0.25, abs=TOL)
    assert functional_numeric(S.T(6), power(2)).value == pytest.approx(5 / 24, abs=TOL)
    assert functional_numeric(S.S1(Fr(1, 4)), power(2)).value == pytest.approx(5 / 8, abs=TOL)


@pytest.mark.parametrize("a", [-6, 0, 2, 6])
@pytest.mark.parametrize("x, y, tol", [(-1.0, 1.0, TOL), (-3.0, 5.0, 1e-9)])
def test_T_secondary_estimate(a, x, y, tol):
    # exp reaches ~150 on [-3, 5], so an absolute 1e-12 would be below float64 resolution
    r = functional_numeric(S.T(a), exponential(), x, y, tol)
    tol = r.diagnostics["antiderivative_tol"]
    assert r.diagnostics["antiderivative_estimate"] == pytest.approx(r.value, abs=10 * tol)


def test_random_convex():
    f0 = random_convex(7, 0)
    assert f0.params["knots"] == ()
    assert f0(0.3) + f0(0.7) == pytest.approx(2 * f0(0.5))
    f, g = random_convex(42, 5), random_convex(42, 5)
    assert f.params == g.params
    assert [f(t / 10) for t in range(11)] == [g(t / 10) for t in range(11)]
    for seed in range(30):
        h = random_convex(seed, 6)
        assert h.is_convex()
        ts = [k / 50 for k in range(51)]
        assert all(h(t) <= (h(t - d) + h(t + d)) / 2 + 1e-12
                   for t in ts for d in (0.01, 0.05) if 0 <= t - d and t + d <= 1)


def test_piecewise_linear_validation():
    with pytest.raises(ValueError):
        piecewise_linear_convex([0.2, 0.1], [0, 1, 2])
    with pytest.raises(ValueError):
        piecewise_linear_convex([0.2], [0])
    assert not piecewise_linear_convex([0.5], [1, 0]).is_convex()


@settings(max_examples=40)
@given(specs(), polys)
def test_numeric_matches_exact(spec, f):
    exact = functional_value_exact(spec, f)
    assert functional_numeric(spec, polynomial(f)).value == pytest.approx(float(exact), abs=10 * TOL)


@settings(max_examples=30)
@given(specs(), st.integers(0, 2**32 - 1))
def test_reparametrization_invariance(spec, seed):
    f = random_convex(seed, 4)
    g = f.compose_affine(3 / 8, 1 / 8)  # g(s) = f((s + 3) / 8) lives on [-3, 5]
    on_general = functional_numeric(spec, g, -3.0, 5.0).value
    on_unit = functional_numeric(spec, f).value
    assert on_general == pytest.approx(on_unit, abs=10 * TOL * max(1.0, abs(on_unit)))


@pytest.mark.parametrize("f", [exponential(), power(4), hinge(1 / 3), hinge(0.5)],
                         ids=lambda f: f.kind)
def test_double_average_is_T2(f):
    lhs = double_average_direct(f, 0, 1).value
    assert lhs == pytest.approx(functional_numeric(S.T(2), f).value, abs=10 * TOL)


@settings(max_examples=30)
@given(specs(), specs(), st.fractions(min_value=Fr(1, 50), max_value=Fr(49, 50), max_denominator=50))
def test_hinge_consistency(a, b, c):
    F1, F2 = make_weight(a), make_weight(b)
    if levin_stechkin_compare(F1, F2).relation is Relation.NOT_NORMALIZED:
        return
    h = hinge(float(c))
    num = stieltjes_numeric(h, F2).value - stieltjes_numeric(h, F1).value
    assert num == pytest.approx(float(hinge_gap(F1, F2, c)), abs=10 * TOL)
