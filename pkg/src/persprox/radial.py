"""Fast path for radial functions f = phi(||.||) with phi even.

The vector problem collapses to a scalar one on r = ||x||: the threshold and
the scale equation only involve the scalar conjugate phi*, and the vector
part of the prox is a rescaling of x.  The x = 0 branches are explicit, so
no division by the norm ever happens at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .engine import CASE_BOUNDARY, CASE_INTERIOR, ProxResult, _BRACKET_LO
from .numerics import (
    Bracket,
    NonFinite,
    NoSignChange,
    SolverConfig,
    SolverFailure,
    bisect_monotone,
)


@dataclass(frozen=True)
class RadialProfile:
    """Scalar pieces of an even profile phi: conjugate value, conjugate prox,
    projection onto the closure of the conjugate domain.

    Callers only pass nonnegative arguments (phi* is even).  ``phi_eval`` is
    optional and only used to fill the equality residual diagnostic.
    """

    phi_conj_eval: Callable[[float], float]
    phi_prox_conj: Callable[[float, float], float]
    phi_project_dom_conj: Callable[[float], float]
    phi_eval: Callable[[float], float] | None = None


def quadratic_profile() -> RadialProfile:
    """Profile of the half squared value, which is self-conjugate."""
    return RadialProfile(
        phi_conj_eval=lambda xi: 0.5 * xi * xi,
        phi_prox_conj=lambda tau, xi: xi / (1.0 + tau),
        phi_project_dom_conj=lambda xi: xi,
        phi_eval=lambda xi: 0.5 * xi * xi,
    )


def prox_perspective_radial(profile: RadialProfile, gamma, x, eta,
                            cfg: SolverConfig | None = None) -> ProxResult:
    """Perspective prox for f = phi(||.||), reduced to the scalar profile."""
    if cfg is None:
        cfg = SolverConfig()
    gamma = float(gamma)
    eta = float(eta)
    x = np.asarray(x, dtype=np.float64)
    r = float(np.linalg.norm(x))

    proj = profile.phi_project_dom_conj(r / gamma)
    tval = eta + gamma * profile.phi_conj_eval(proj)

    if tval <= 0.0:
        if r == 0.0:
            p = np.zeros_like(x)
        else:
            p = (1.0 - gamma * proj / r) * x
        w = proj
        mu = 0.0
        case_tag = CASE_BOUNDARY
        bracket = None
        iterations = 0
    elif r == 0.0:
        # prox of the scaled conjugate fixes 0, so the scale is explicit
        p = np.zeros_like(x)
        w = 0.0
        mu = eta + gamma * profile.phi_conj_eval(0.0)
        case_tag = CASE_INTERIOR
        bracket = None
        iterations = 0
    else:

        def mu_gap(mu):
            return mu - eta - gamma * profile.phi_conj_eval(
                profile.phi_prox_conj(mu / gamma, r / gamma)
            )

        hi = tval if math.isfinite(tval) else math.inf
        seed = max(eta, 1.0) if math.isinf(hi) else None
        try:
            mu, info = bisect_monotone(
                mu_gap, Bracket(_BRACKET_LO, hi), cfg, hi_seed=seed,
                full_output=True,
            )
        except (NoSignChange, NonFinite) as exc:
            raise SolverFailure(f"scale equation did not converge: {exc}") from exc
        w = profile.phi_prox_conj(mu / gamma, r / gamma)
        p = (1.0 - gamma * w / r) * x
        case_tag = CASE_INTERIOR
        bracket = Bracket(_BRACKET_LO, info.hi)
        iterations = info.evaluations

    # scalar residuals: the dual point is w along x/r, with norm w
    feas = max(0.0, (eta - mu) / gamma + profile.phi_conj_eval(abs(w)))
    if case_tag == CASE_BOUNDARY:
        eq = 0.0
    elif profile.phi_eval is None:
        eq = math.nan
    else:
        rp = float(np.linalg.norm(p))
        eq = abs(mu * profile.phi_eval(rp / mu) - rp * w - mu * (eta - mu) / gamma)

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
