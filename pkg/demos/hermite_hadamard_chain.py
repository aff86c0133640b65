"""
Midpoint, mean and trapezoid in convex order
============================================

The classical chain f((x+y)/2) <= mean of f <= (f(x)+f(y))/2 is decided here
from the cumulative weights alone, with exact rational arithmetic.
"""
from fractions import Fraction

from convexorder import FunctionalSpec as S, levin_stechkin_compare, make_weight
from convexorder.convex_order import primitive_gap

mid, mean, trap = S.midpoint(), S.uniform(), S.trapezoid()

for a, b in [(mid, mean), (mean, trap), (mid, trap)]:
    v = levin_stechkin_compare(make_weight(a), make_weight(b))
    print(f"{a!s:>8} vs {b!s:<8} -> {v.relation.value}")

# The decision rests on G(x) = int_0^x (F_mean - F_mid) staying nonnegative.
G = primitive_gap(make_weight(mid), make_weight(mean))
for x in (Fraction(k, 4) for k in range(5)):
    print(f"G({x}) = {G(x)}")

# The double average sits between midpoint and mean.
davg = S.double_average()
print(levin_stechkin_compare(make_weight(mid), make_weight(davg)).relation.value)
print(levin_stechkin_compare(make_weight(davg), make_weight(mean)).relation.value)
