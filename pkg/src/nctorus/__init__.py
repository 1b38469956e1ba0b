"""Exact invariants of hyperbolic toral automorphisms and their non-commutative tori."""

from .exactfield import FieldMismatchError, QuadNum, squarefree_decompose
from .hyperbolic import HypMatrix, Mat2Z, NotHyperbolicError, certify, is_hyperbolic, parse_matrix
from .invariant import (
    TraceRangeInvariant,
    canonicalize,
    compare,
    conjugator_search,
    invariance_suite,
    invariants_equal,
    module_contains,
    trace_range,
)
from .kernels import BACKEND
from .torusparams import (
    Route,
    ThetaVector,
    alpha_translation,
    exp_wedge_generators,
    freeness_check,
    skew_form,
    theta_closed_form,
    theta_from_eigenvectors,
    verify_theta_identities,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "FieldMismatchError",
    "HypMatrix",
    "Mat2Z",
    "NotHyperbolicError",
    "QuadNum",
    "Route",
    "ThetaVector",
    "TraceRangeInvariant",
    "alpha_translation",
    "canonicalize",
    "certify",
    "compare",
    "conjugator_search",
    "exp_wedge_generators",
    "freeness_check",
    "invariance_suite",
    "invariants_equal",
    "is_hyperbolic",
    "module_contains",
    "parse_matrix",
    "skew_form",
    "squarefree_decompose",
    "theta_closed_form",
    "theta_from_eigenvectors",
    "trace_range",
    "verify_theta_identities",
]
