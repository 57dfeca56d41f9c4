"""Scalar root finding plus the validated faces of the numeric kernels.

``bisect_monotone`` solves g(t) = 0 for continuous nondecreasing g on a
bracket whose upper end may be +inf, in which case it is expanded
geometrically until the sign changes.  The Lambert W evaluators and the
simplex projection delegate to the selected kernel backend after input
validation.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels


class NoSignChange(RuntimeError):
    """Bracket expansion exhausted the iteration budget without a sign change."""


class NonFinite(ArithmeticError):
    """The objective returned NaN inside the bracket."""


class SolverFailure(RuntimeError):
    """An iterative solve stopped before reaching its tolerance."""


class DomainError(ValueError):
    """Argument outside the domain of the requested kernel."""


class EmptyInput(ValueError):
    """An operation received a zero-length vector."""


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and iteration caps shared by every scalar solve."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-14
    max_iter: int = 200
    bracket_expand: float = 2.0

    def __post_init__(self):
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if not self.bracket_expand > 1.0:
            raise ValueError("bracket_expand must exceed 1")


@dataclass(frozen=True)
class Bracket:
    """Root bracket [lo, hi]; hi may be +inf until expansion resolves it."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isfinite(self.hi) and not self.lo < self.hi:
            raise ValueError("bracket requires lo < hi")


@dataclass(frozen=True)
class BisectInfo:
    """Final bracket and evaluation count of a bisect_monotone run."""

    root: float
    lo: float
    hi: float
    evaluations: int


def bisect_monotone(g, bracket, cfg=None, dg=None, hi_seed=None, full_output=False):
    """Root of a continuous nondecreasing g with g(lo) <= 0 <= g(hi).

    When ``bracket.hi`` is +inf the upper end starts at ``max(hi_seed, lo, 1)``
    and is multiplied by ``cfg.bracket_expand`` until g becomes nonnegative.
    The lower end is trusted, not evaluated: callers guarantee g(lo) <= 0.
    If ``dg`` is given, a Newton step from the last evaluated point is used
    whenever it stays inside the current bracket; otherwise plain bisection.

    Returns t with |g(t)| <= cfg.abs_tol or with the bracket narrowed to
    ``cfg.rel_tol * max(1, |t|)``.  With ``full_output=True`` returns
    ``(t, BisectInfo)``.
    """
    if cfg is None:
        cfg = SolverConfig()
    lo = float(bracket.lo)
    hi = float(bracket.hi)
    evals = 0

    def geval(t):
        nonlocal evals
        evals += 1
        val = float(g(t))
        if math.isnan(val):
            raise NonFinite(f"objective returned NaN at t={t!r}")
        return val

    if math.isinf(hi):
        h = max(lo, 1.0) if hi_seed is None else max(float(hi_seed), lo, 1.0)
        gh = geval(h)
        k = 0
        while gh < 0.0:
            k += 1
            if k > cfg.max_iter:
                raise NoSignChange(
                    f"no sign change after {cfg.max_iter} expansions from {h!r}"
                )
            lo = h
            h *= cfg.bracket_expand
            gh = geval(h)
        hi = h
    else:
        gh = geval(hi)
        if gh < -cfg.abs_tol:
            raise NoSignChange(f"g({hi!r}) = {gh!r} is negative at the upper end")

    def done(root):
        if full_output:
            return root, BisectInfo(root, lo, hi, evals)
        return root

    if gh <= cfg.abs_tol:
        return done(hi)

    a, b = lo, hi
    t_prev, g_prev = hi, gh
    for _ in range(cfg.max_iter):
        c = 0.5 * (a + b)
        if dg is not None:
            slope = float(dg(t_prev))
            if math.isfinite(slope) and slope > 0.0:
                t_newton = t_prev - g_prev / slope
                if a < t_newton < b:
                    c = t_newton
        gc = geval(c)
        if abs(gc) <= cfg.abs_tol:
            return done(c)
        if gc < 0.0:
            a = c
        else:
            b = c
        t_prev, g_prev = c, gc
        if b - a <= cfg.rel_tol * max(1.0, abs(c)):
            return done(c)
    raise SolverFailure(f"no convergence within {cfg.max_iter} iterations")


def lambert_w0(y):
    """Principal Lambert W branch: the w >= 0 with w*exp(w) = y, for y >= 0."""
    y = float(y)
    if y < 0.0:
        raise DomainError("lambert_w0 requires y >= 0")
    return kernels.lambert_w0(y)


def lambert_w0_exp(z):
    """W0(exp(z)) for any real z, evaluated in the log domain."""
    return kernels.lambert_w0_exp(float(z))


def project_simplex(v):
    """Euclidean projection of v onto the probability simplex."""
    v = np.ascontiguousarray(v, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError("project_simplex expects a 1-d vector")
    if v.shape[0] == 0:
        raise EmptyInput("project_simplex requires at least one coordinate")
    return kernels.project_simplex(v)
