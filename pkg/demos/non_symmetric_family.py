"""
Non-symmetric functionals on [0, 1]
===================================

For a weight alpha the evaluation f(1 - alpha), the two derivative-free
rules S1 and S2, and the endpoint combination alpha f(0) + (1-alpha) f(1)
are compared across alpha.
"""
from fractions import Fraction

from convexorder import FunctionalSpec as S, is_cdf, levin_stechkin_compare, make_weight


def rel(a, b):
    return levin_stechkin_compare(make_weight(a), make_weight(b)).relation.value


print(f"{'alpha':>6}  {'eval<=S1':<14}{'S1<=ends':<14}{'eval<=S2':<14}{'S2<=S1':<14}")
for k in range(1, 10):
    al = Fraction(k, 10)
    print(f"{str(al):>6}  {rel(S.eval_at(al), S.S1(al)):<14}{rel(S.S1(al), S.endpoints(al)):<14}"
          f"{rel(S.eval_at(al), S.S2(al)):<14}{rel(S.S2(al), S.S1(al)):<14}")

# Outside [1/3, 2/3] the S2 weight is not monotone, so a single-crossing
# argument does not apply there; the primitive criterion still decides.

print([str(Fraction(k, 10)) for k in range(1, 10) if not is_cdf(make_weight(S.S2(Fraction(k, 10))))])
