"""Proximity operators of perspective functions.

The prox of a scaled perspective of a proper lower-semicontinuous convex
function reduces to a threshold test on the conjugate value at a domain
projection, plus (in the nontrivial case) a one-dimensional monotone root
find.  This package implements that evaluation for a catalog of concrete
functions, a radial fast path, and an independent brute-force oracle.
"""

from .engine import (
    CASE_BOUNDARY,
    CASE_INTERIOR,
    ProxQuery,
    ProxResult,
    capped_burg_closed_form,
    nested_perspective_prox,
    prox_perspective,
    threshold,
)
from .functions import (
    BaseFunction,
    CappedBurg,
    ExpSum,
    FunctionSpec,
    LogSumExp,
    NestedPerspective,
    NestingTooDeep,
    Quadratic,
    build_function,
    capped_burg_ops,
    exp_sum_ops,
    log_sum_exp_ops,
    nested_perspective_ops,
    perspective_value,
    quadratic_ops,
)
from .kernels import BACKEND
from .numerics import (
    Bracket,
    DomainError,
    EmptyInput,
    NonFinite,
    NoSignChange,
    SolverConfig,
    SolverFailure,
    bisect_monotone,
    lambert_w0,
    lambert_w0_exp,
    project_simplex,
)
from .oracle import OracleConfig, brute_prox, fenchel_young_residual, perspective_eval
from .radial import RadialProfile, prox_perspective_radial, quadratic_profile

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BaseFunction",
    "Bracket",
    "CASE_BOUNDARY",
    "CASE_INTERIOR",
    "CappedBurg",
    "DomainError",
    "EmptyInput",
    "ExpSum",
    "FunctionSpec",
    "LogSumExp",
    "NestedPerspective",
    "NestingTooDeep",
    "NonFinite",
    "NoSignChange",
    "OracleConfig",
    "ProxQuery",
    "ProxResult",
    "Quadratic",
    "RadialProfile",
    "SolverConfig",
    "SolverFailure",
    "bisect_monotone",
    "brute_prox",
    "build_function",
    "capped_burg_closed_form",
    "capped_burg_ops",
    "exp_sum_ops",
    "fenchel_young_residual",
    "lambert_w0",
    "lambert_w0_exp",
    "log_sum_exp_ops",
    "nested_perspective_ops",
    "nested_perspective_prox",
    "perspective_eval",
    "perspective_value",
    "project_simplex",
    "prox_perspective",
    "prox_perspective_radial",
    "quadratic_ops",
    "quadratic_profile",
    "threshold",
]
