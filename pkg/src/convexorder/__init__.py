"""Exact convex-order verification for Hermite-Hadamard type functionals."""
from .bvfunction import (
    CumulativeFunction,
    PiecewiseFunction,
    Side,
    cf_eval,
    cf_integrate_poly,
    cf_linear_combination,
    cf_moment,
    cf_primitive,
    crossing_points,
    is_cdf,
)
from .catalog import FunctionalSpec, functional_value_exact, make_weight, parse_spec
from .convex_order import (
    HingeWitness,
    Relation,
    Verdict,
    hinge_gap,
    levin_stechkin_compare,
    ohlin_compare,
    witness_functions,
)
from .harness import emit_report, find_threshold, run_theorem_suite
from .polynomial import Poly, Sign, isolate_roots, poly_antiderivative, poly_eval, sign_on_interval

__version__ = "0.1.0"
