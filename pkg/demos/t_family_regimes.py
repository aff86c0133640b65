"""
Regimes of the T_a family
=========================

T_a mixes the mean with the second difference of the double antiderivative.
We tabulate its order against mean, midpoint and trapezoid on a grid and
print the hinge functions that certify each incomparable case.
"""
from convexorder.catalog import FunctionalSpec as S
from convexorder.harness import T_TARGETS, T_GRID, regime_report, render_report

report = regime_report("T", S.T, list(T_TARGETS.values()), T_GRID)
print(render_report(report, "text"))

# Incomparable rows carry witnesses max(t - c, 0) whose gaps have opposite signs.
for row in report.rows:
    v = row.verdict
    if v.witness_plus is not None:
        print(f"a={row.param} vs {row.target}: hinges at {v.witness_plus} and {v.witness_minus}")
