"""Catalog of convex base functions.

Each entry implements the :class:`BaseFunction` contract: primal value,
conjugate value, prox of the scaled conjugate, projection onto the closure
of the conjugate's domain, and the recession function (the support function
of that closure).  These are exactly the pieces the perspective-prox engine
consumes.

Domain membership tests inside conjugate evaluations use a small absolute
slack (``DOM_SLACK``): points reconstructed through prox arithmetic as
``(x - gamma * w) / gamma`` land within one rounding error of the domain
boundary and must still evaluate as feasible.  Likewise, scale values in
``[-SCALE_SLACK, 0)`` are routed to the recession branch of a perspective
value; they arise from cancellation in ``x - gamma * (x / gamma)``.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from . import kernels
from .numerics import SolverConfig, SolverFailure

INF = math.inf

DOM_SLACK = 1e-9
SCALE_SLACK = 1e-10


class NestingTooDeep(ValueError):
    """A nested perspective exceeded the configured recursion depth."""


class BaseFunction(ABC):
    """Contract a proper lower-semicontinuous convex function must satisfy.

    ``conj_eval`` may return +inf; ``prox_conj(tau, u)`` must land in the
    closure of the conjugate's domain for every tau > 0.
    """

    dim: int

    # True when the prox of the conjugate is a projection independent of tau.
    prox_conj_tau_independent = False

    @abstractmethod
    def eval_primal(self, x) -> float:
        """f(x), possibly +inf."""

    @abstractmethod
    def conj_eval(self, u) -> float:
        """Fenchel conjugate f*(u) = sup_x <x, u> - f(x), possibly +inf."""

    @abstractmethod
    def prox_conj(self, tau, u) -> np.ndarray:
        """prox of tau * f* at u."""

    @abstractmethod
    def project_dom_conj(self, u) -> np.ndarray:
        """Projection onto the closure of dom f*."""

    def recession(self, d) -> float:
        """Asymptotic slope of f along d: the support function of cl dom f*.

        Generic fallback: supremum of <d, P(k d)> along a sampled dyadic ray.
        It is approximate (a diverging support value shows up as merely
        large); concrete entries override it with closed forms.
        """
        d = np.asarray(d, dtype=np.float64)
        best = -INF
        for k in range(31):
            proj = self.project_dom_conj((2.0**k) * d)
            best = max(best, float(np.dot(d, proj)))
        return best


def perspective_value(f: BaseFunction, x, eta: float) -> float:
    """Value at (x, eta) of the perspective of f.

    eta > 0 gives eta * f(x / eta); eta = 0 gives the recession value of f
    at x; eta < 0 gives +inf.  Scale values within ``SCALE_SLACK`` below
    zero are treated as zero.
    """
    x = np.asarray(x, dtype=np.float64)
    eta = float(eta)
    if eta > 0.0:
        with np.errstate(over="ignore"):
            return eta * f.eval_primal(x / eta)
    if eta >= -SCALE_SLACK:
        return f.recession(x)
    return INF


class Quadratic(BaseFunction):
    """Half squared norm; self-conjugate with full conjugate domain."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.dim = n

    def eval_primal(self, x):
        x = np.asarray(x, dtype=np.float64)
        return 0.5 * float(np.dot(x, x))

    def conj_eval(self, u):
        u = np.asarray(u, dtype=np.float64)
        return 0.5 * float(np.dot(u, u))

    def prox_conj(self, tau, u):
        return np.asarray(u, dtype=np.float64) / (1.0 + tau)

    def project_dom_conj(self, u):
        return np.asarray(u, dtype=np.float64).copy()

    def recession(self, d):
        d = np.asarray(d, dtype=np.float64)
        # support function of the whole space: 0 at the origin, +inf elsewhere
        return 0.0 if float(np.linalg.norm(d)) <= SCALE_SLACK else INF


class CappedBurg(BaseFunction):
    """Scalar function equal to -1 - ln(-x) below -1 and to x above.

    Its conjugate is the log barrier -ln(u) on the half-open interval
    (0, 1], so the conjugate domain is neither open nor closed.
    """

    dim = 1

    def eval_primal(self, x):
        xi = float(np.asarray(x, dtype=np.float64)[0])
        if xi < -1.0:
            return -1.0 - math.log(-xi)
        return xi

    def conj_eval(self, u):
        xi = float(np.asarray(u, dtype=np.float64)[0])
        if xi <= 0.0 or xi > 1.0 + DOM_SLACK:
            return INF
        return -math.log(min(xi, 1.0))

    def prox_conj(self, tau, u):
        y = float(np.asarray(u, dtype=np.float64)[0])
        root = 0.5 * (y + math.sqrt(y * y + 4.0 * tau))
        return np.array([min(1.0, root)])

    def project_dom_conj(self, u):
        xi = float(np.asarray(u, dtype=np.float64)[0])
        return np.array([min(max(xi, 0.0), 1.0)])

    def recession(self, d):
        # support function of [0, 1]
        return max(0.0, float(np.asarray(d, dtype=np.float64)[0]))


class ExpSum(BaseFunction):
    """Separable sum of exp(x_i - 1); conjugate is the entropy sum u ln u."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.dim = n

    def eval_primal(self, x):
        x = np.asarray(x, dtype=np.float64)
        with np.errstate(over="ignore"):
            return float(np.sum(np.exp(x - 1.0)))

    def conj_eval(self, u):
        return float(kernels.xlogx_sum(np.asarray(u, dtype=np.float64)))

    def prox_conj(self, tau, u):
        return kernels.neg_entropy_prox(float(tau), np.asarray(u, dtype=np.float64))

    def project_dom_conj(self, u):
        return np.maximum(np.asarray(u, dtype=np.float64), 0.0)

    def recession(self, d):
        # support function of the nonnegative orthant
        d = np.asarray(d, dtype=np.float64)
        return 0.0 if np.all(d <= DOM_SLACK) else INF


class LogSumExp(BaseFunction):
    """log of a sum of exponentials; conjugate is entropy on the simplex."""

    def __init__(self, n: int, cfg: SolverConfig | None = None):
        if n < 2:
            raise ValueError("log-sum-exp needs dimension at least 2")
        self.dim = n
        self.cfg = cfg if cfg is not None else SolverConfig()

    def eval_primal(self, x):
        x = np.asarray(x, dtype=np.float64)
        m = float(np.max(x))
        return m + math.log(float(np.sum(np.exp(x - m))))

    def conj_eval(self, u):
        u = np.asarray(u, dtype=np.float64)
        if np.any(u < -SCALE_SLACK):
            return INF
        if abs(float(np.sum(u)) - 1.0) > DOM_SLACK * max(1.0, self.dim):
            return INF
        return float(kernels.xlogx_sum(np.maximum(u, 0.0)))

    def prox_conj(self, tau, u):
        u = np.asarray(u, dtype=np.float64)
        try:
            p, _, _ = kernels.simplex_neg_entropy_prox(
                float(tau), u, self.cfg.bracket_expand, self.cfg.max_iter
            )
        except RuntimeError as exc:
            raise SolverFailure(str(exc)) from exc
        return p

    def project_dom_conj(self, u):
        return kernels.project_simplex(np.asarray(u, dtype=np.float64))

    def recession(self, d):
        # support function of the simplex
        return float(np.max(np.asarray(d, dtype=np.float64)))


class NestedPerspective(BaseFunction):
    """Perspective of an inner base function, used itself as a base function.

    The conjugate is the indicator of C = {(u, s) : s + inner*(u) <= 0}, so
    the prox of the scaled conjugate is the projection onto C for every
    scaling.  That projection is obtained by running the perspective-prox
    engine on the inner function at unit scaling and subtracting.
    """

    prox_conj_tau_independent = True

    def __init__(self, inner: BaseFunction, cfg: SolverConfig | None = None,
                 max_depth: int = 2):
        depth = getattr(inner, "nesting_depth", 0) + 1
        if depth > max_depth:
            raise NestingTooDeep(f"nesting depth {depth} exceeds {max_depth}")
        self.inner = inner
        self.nesting_depth = depth
        self.dim = inner.dim + 1
        self.cfg = cfg if cfg is not None else SolverConfig()

    def eval_primal(self, z):
        z = np.asarray(z, dtype=np.float64)
        return perspective_value(self.inner, z[:-1], z[-1])

    def conj_eval(self, z):
        z = np.asarray(z, dtype=np.float64)
        if z[-1] + self.inner.conj_eval(z[:-1]) <= DOM_SLACK:
            return 0.0
        return INF

    def prox_conj(self, tau, z):
        return self.project_dom_conj(z)

    def project_dom_conj(self, z):
        from . import engine

        z = np.asarray(z, dtype=np.float64)
        res = engine.prox_perspective(
            engine.ProxQuery(self.inner, 1.0, z[:-1], float(z[-1])), self.cfg
        )
        return z - np.append(res.p, res.mu)

    def recession(self, z):
        # the perspective is positively homogeneous, hence its own recession
        return self.eval_primal(z)


@dataclass(frozen=True)
class FunctionSpec:
    """Tagged description of a catalog entry.

    ``kind`` is one of ``quadratic``, ``capped_burg``, ``exp_sum``,
    ``log_sum_exp``, or ``nested``; ``inner`` is the inner spec for the
    nested kind.
    """

    kind: str
    n: int = 1
    inner: "FunctionSpec | None" = None


def build_function(spec: FunctionSpec, cfg: SolverConfig | None = None,
                   max_depth: int = 2) -> BaseFunction:
    """Instantiate a catalog entry from its spec."""
    if spec.kind == "quadratic":
        return Quadratic(spec.n)
    if spec.kind == "capped_burg":
        return CappedBurg()
    if spec.kind == "exp_sum":
        return ExpSum(spec.n)
    if spec.kind == "log_sum_exp":
        return LogSumExp(spec.n, cfg)
    if spec.kind == "nested":
        if spec.inner is None:
            raise ValueError("nested spec requires an inner spec")
        return NestedPerspective(build_function(spec.inner, cfg, max_depth),
                                 cfg, max_depth)
    raise ValueError(f"unknown function kind {spec.kind!r}")


def quadratic_ops(n: int) -> BaseFunction:
    return Quadratic(n)


def capped_burg_ops() -> BaseFunction:
    return CappedBurg()


def exp_sum_ops(n: int) -> BaseFunction:
    return ExpSum(n)


def log_sum_exp_ops(n: int, cfg: SolverConfig | None = None) -> BaseFunction:
    return LogSumExp(n, cfg)


def nested_perspective_ops(inner: BaseFunction,
                           cfg: SolverConfig | None = None) -> BaseFunction:
    return NestedPerspective(inner, cfg)
