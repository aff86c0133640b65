"""
Sharp constants by exact bisection
==================================

Every threshold below is found by bisecting on exact verdicts; when the flip
happens at a simple rational the search reports it exactly.
"""
from fractions import Fraction

from convexorder.harness import moment_threshold, threshold_problems

for cid, search, expected in threshold_problems():
    b = search()
    print(f"{cid:<22} exact={b.exact!s:<5} expected={expected}")

# The second-moment boundary (3 - sqrt 3)/6 is irrational, so only a bracket comes back.
b = moment_threshold(Fraction(1, 10**12))
print(f"moment boundary in [{float(b.lo):.13f}, {float(b.hi):.13f}]")
