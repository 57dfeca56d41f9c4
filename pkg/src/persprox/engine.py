"""Proximity operator of a scaled perspective function.

For f convex and gamma > 0, the prox of gamma times the perspective of f at
a point (x, eta) splits into two cases on the sign of the threshold

    t = eta + gamma * f*(P(x / gamma)),

where P projects onto the closure of dom f*.  When t <= 0 the scale part of
the prox is zero and the vector part is x - gamma * P(x / gamma).  When
t > 0 the scale part is the unique root mu in (0, t] of the nondecreasing
scalar map

    g(mu) = mu - eta - gamma * f*(prox_{mu/gamma * f*}(x / gamma)),

and the vector part is x - gamma * prox_{mu/gamma * f*}(x / gamma).  Both
cases record feasibility and equality residuals of the optimality
characterization so downstream checks can certify the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import BaseFunction, CappedBurg, NestedPerspective, perspective_value
from .numerics import (
    Bracket,
    NonFinite,
    NoSignChange,
    SolverConfig,
    SolverFailure,
    bisect_monotone,
)

CASE_BOUNDARY = "boundary"
CASE_INTERIOR = "interior"

# Lower end of the root bracket; the interval is open at zero.
_BRACKET_LO = 1e-300


@dataclass(frozen=True)
class ProxQuery:
    """One prox evaluation: function, scaling gamma > 0, and the point (x, eta)."""

    f: BaseFunction
    gamma: float
    x: np.ndarray
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=np.float64))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "eta", float(self.eta))
        if not self.gamma > 0.0:
            raise ValueError("gamma must be positive")
        if self.x.ndim != 1 or self.x.shape[0] != self.f.dim:
            raise ValueError(
                f"x has shape {self.x.shape}, expected ({self.f.dim},)"
            )


@dataclass(frozen=True)
class ProxResult:
    """Prox output (p, mu) plus solve diagnostics.

    ``mu`` is zero exactly when ``case_tag`` is boundary.  ``threshold`` is
    the case selector t (may be +inf).  ``bracket_used`` is the finite root
    bracket after expansion, or None in the boundary case.
    """

    p: np.ndarray
    mu: float
    case_tag: str
    threshold: float
    bracket_used: Bracket | None
    iterations: int
    feasibility_residual: float
    equality_residual: float

    def stacked(self) -> np.ndarray:
        """The pair (p, mu) as one vector, convenient for norms."""
        return np.append(self.p, self.mu)


def threshold(q: ProxQuery) -> float:
    """Case selector eta + gamma * f*(P(x / gamma)); +inf is a valid value."""
    proj = q.f.project_dom_conj(q.x / q.gamma)
    return q.eta + q.gamma * q.f.conj_eval(proj)


def _finalize(f, gamma, x, eta, p, mu, case_tag, tval, bracket, iterations):
    u = (x - p) / gamma
    feas = max(0.0, (eta - mu) / gamma + f.conj_eval(u))
    if case_tag == CASE_INTERIOR:
        eq = abs(
            perspective_value(f, p, mu)
            - float(np.dot(p, u))
            - mu * (eta - mu) / gamma
        )
    else:
        eq = 0.0
    return ProxResult(
        p=p,
        mu=mu,
        case_tag=case_tag,
        threshold=tval,
        bracket_used=bracket,
        iterations=iterations,
        feasibility_residual=feas,
        equality_residual=eq,
    )


def prox_perspective(q: ProxQuery, cfg: SolverConfig | None = None) -> ProxResult:
    """Prox of gamma times the perspective of q.f at (q.x, q.eta).

    Raises :class:`SolverFailure` when the scalar solve exhausts its
    iteration budget; domain errors from the catalog propagate unchanged.
    """
    if cfg is None:
        cfg = SolverConfig()
    f, gamma, x, eta = q.f, q.gamma, q.x, q.eta
    xg = x / gamma
    proj = f.project_dom_conj(xg)
    tval = eta + gamma * f.conj_eval(proj)

    if tval <= 0.0:
        p = x - gamma * proj
        return _finalize(f, gamma, x, eta, p, 0.0, CASE_BOUNDARY, tval, None, 0)

    def mu_gap(mu):
        return mu - eta - gamma * f.conj_eval(f.prox_conj(mu / gamma, xg))

    hi = tval if math.isfinite(tval) else math.inf
    seed = max(eta, 1.0) if math.isinf(hi) else None
    try:
        mu, info = bisect_monotone(
            mu_gap, Bracket(_BRACKET_LO, hi), cfg, hi_seed=seed, full_output=True
        )
    except (NoSignChange, NonFinite) as exc:
        raise SolverFailure(f"scale equation did not converge: {exc}") from exc

    w = f.prox_conj(mu / gamma, xg)
    p = x - gamma * w
    bracket = Bracket(_BRACKET_LO, info.hi)
    return _finalize(
        f, gamma, x, eta, p, mu, CASE_INTERIOR, tval, bracket, info.evaluations
    )


def capped_burg_closed_form(gamma, xi, eta, cfg: SolverConfig | None = None) -> ProxResult:
    """Three-branch closed form for the capped Burg entry.

    Matches ``prox_perspective`` on the generic path: the boundary branch
    returns (max{0, xi - gamma}, 0); for eta > 0 with xi >= gamma - eta the
    scale equals eta exactly; otherwise the scale solves
    mu = eta - gamma * ln((xi + sqrt(xi^2 + 4 mu gamma)) / (2 gamma)).
    """
    if cfg is None:
        cfg = SolverConfig()
    gamma = float(gamma)
    xi = float(xi)
    eta = float(eta)
    f = CappedBurg()
    x = np.array([xi])
    tval = eta + gamma * f.conj_eval(f.project_dom_conj(x / gamma))

    if eta <= 0.0 and xi >= gamma * math.exp(eta / gamma):
        p = np.array([max(0.0, xi - gamma)])
        return _finalize(f, gamma, x, eta, p, 0.0, CASE_BOUNDARY, tval, None, 0)

    if eta > 0.0 and xi >= gamma - eta:
        p = np.array([xi - gamma])
        return _finalize(f, gamma, x, eta, p, eta, CASE_INTERIOR, tval, None, 0)

    def gap(mu):
        arg = 0.5 * (xi + math.sqrt(xi * xi + 4.0 * mu * gamma)) / gamma
        if arg <= 0.0:
            return -math.inf
        return mu - eta + gamma * math.log(arg)

    def slope(mu):
        s = math.sqrt(xi * xi + 4.0 * mu * gamma)
        return 1.0 + 2.0 * gamma * gamma / (s * (xi + s))

    hi = tval if math.isfinite(tval) else math.inf
    seed = max(eta, 1.0) if math.isinf(hi) else None
    try:
        mu, info = bisect_monotone(
            gap, Bracket(_BRACKET_LO, hi), cfg, dg=slope, hi_seed=seed,
            full_output=True,
        )
    except (NoSignChange, NonFinite) as exc:
        raise SolverFailure(f"scale equation did not converge: {exc}") from exc

    p = np.array([0.5 * (xi - math.sqrt(xi * xi + 4.0 * mu * gamma))])
    bracket = Bracket(_BRACKET_LO, info.hi)
    return _finalize(
        f, gamma, x, eta, p, mu, CASE_INTERIOR, tval, bracket, info.evaluations
    )


def nested_perspective_prox(gamma, x, eta, delta, inner: BaseFunction,
                            cfg: SolverConfig | None = None) -> ProxResult:
    """Prox of gamma times the perspective of the perspective of ``inner``.

    The query point is ((x, eta), delta).  The last coordinate of the result
    is max{0, delta} exactly, and the leading block is the perspective prox
    of the inner function at (x, eta).
    """
    if cfg is None:
        cfg = SolverConfig()
    x = np.asarray(x, dtype=np.float64)
    eta = float(eta)
    delta = float(delta)
    inner_res = prox_perspective(ProxQuery(inner, gamma, x, eta), cfg)
    p = np.append(inner_res.p, inner_res.mu)
    mu = max(0.0, delta)
    case_tag = CASE_BOUNDARY if delta <= 0.0 else CASE_INTERIOR
    nested = NestedPerspective(inner, cfg)
    # the projection onto C is feasible, so the threshold reduces to delta
    res = _finalize(
        nested, gamma, np.append(x, eta), delta, p, mu, case_tag, delta,
        inner_res.bracket_used, inner_res.iterations,
    )
    return res
