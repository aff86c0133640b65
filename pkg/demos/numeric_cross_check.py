"""
Exact verdicts against floating-point quadrature
================================================

Every LessOrEqual verdict is a statement about all convex functions.  Here it
is sampled on random convex piecewise-linear functions and on exp, and the
double average is computed three independent ways.
"""
import math

import numpy as np

from convexorder.catalog import FunctionalSpec as S, make_weight
from convexorder.quadrature import (
    double_average_direct,
    exponential,
    functional_numeric,
    random_convex,
    stieltjes_numeric,
)

lo, hi = make_weight(S.double_average()), make_weight(S.simpson_like())
gaps = np.array([
    stieltjes_numeric(f, hi).value - stieltjes_numeric(f, lo).value
    for f in (random_convex(seed, 5) for seed in range(100))
])
print(f"simpson - double average over 100 functions: min {gaps.min():.3e}, mean {gaps.mean():.3e}")

f = exponential()
print("tent weight  ", double_average_direct(f, 0, 1).value)
print("tensor grid  ", double_average_direct(f, 0, 1, tensor=True).value)
print("T_2 weight   ", functional_numeric(S.T(2), f).value)
print("closed form  ", 4 * (math.sqrt(math.e) - 1) ** 2)
