from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from convexorder.catalog import FunctionalSpec as S

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=12)
unit_fractions = st.fractions(min_value=0, max_value=1, max_denominator=24)
open_unit_fractions = unit_fractions.filter(lambda x: 0 < x < 1)


@st.composite
def specs(draw, allow_mixture=True):
    """Random catalog functional."""
    kinds = [
        lambda: S.uniform(), lambda: S.midpoint(), lambda: S.trapezoid(),
        lambda: S.double_average(), lambda: S.simpson_like(), lambda: S.composite_quarter(),
        lambda: S.T(draw(small_fractions)),
        lambda: S.eval_at(draw(unit_fractions)),
        lambda: S.endpoints(draw(unit_fractions)),
        lambda: S.S1(draw(open_unit_fractions)),
        lambda: S.S2(draw(unit_fractions)),
    ]
    i = draw(st.integers(0, len(kinds) - (0 if allow_mixture else 1)))
    if i == len(kinds):
        lam = draw(st.fractions(min_value=-2, max_value=3, max_denominator=10))
        a = draw(specs(allow_mixture=False))
        b = draw(specs(allow_mixture=False))
        return S.mixture([(lam, a), (1 - lam, b)])
    return kinds[i]()


@pytest.fixture
def F():
    return Fraction
