"""Independent verification of perspective prox outputs.

``brute_prox`` minimizes the prox objective directly.  For a fixed scale
value nu > 0 the vector minimizer is available in closed form through the
Moreau identity, so the search runs over the single scale variable: a coarse
sweep localizes the minimizer of the (convex, hence unimodal) partially
minimized objective, a fine grid at ``nu_step`` resolves the bracketing
cells, and golden-section refinement polishes the result.  This path never
touches the engine's scale equation, so agreement between the two is a
genuine cross-check.

``fenchel_young_residual`` certifies a candidate (p, mu) through the
optimality characterization: the equality of the perspective value with the
inner product against the dual point, and feasibility of the dual point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functions import BaseFunction, perspective_value

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OracleConfig:
    """Search ceiling, grid step, and refinement depth for ``brute_prox``.

    ``nu_max=None`` resolves per query: threshold + 5 when the threshold is
    finite (at least 1), else 10 * max(1, |eta|).
    """

    nu_max: float | None = None
    nu_step: float = 1e-4
    refine_iters: int = 60
    coarse_cells: int = 1024

    def __post_init__(self):
        if not self.nu_step > 0.0:
            raise ValueError("nu_step must be positive")
        if self.nu_max is not None and not self.nu_max > 0.0:
            raise ValueError("nu_max must be positive")
        if self.coarse_cells < 2:
            raise ValueError("coarse_cells must be at least 2")


def perspective_eval(f: BaseFunction, x, eta) -> float:
    """Perspective value of f at (x, eta).

    For eta > 0 this is eta * f(x / eta); for eta = 0 it is the recession
    value, taken from the entry's closed form (the generic fallback samples
    a dyadic ray and is approximate); for eta < 0 it is +inf.
    """
    return perspective_value(f, x, eta)


class _InnerSolve:
    """Vector minimizer y*(nu) of the prox objective at a fixed scale."""

    def __init__(self, f, gamma, x):
        self.f = f
        self.gamma = gamma
        self.x = x
        self.xg = x / gamma
        self._fixed = None

    def point(self, nu):
        if nu == 0.0:
            return self.x - self.gamma * self.f.project_dom_conj(self.xg)
        if self.f.prox_conj_tau_independent:
            if self._fixed is None:
                self._fixed = self.x - self.gamma * self.f.prox_conj(1.0, self.xg)
            return self._fixed
        return self.x - self.gamma * self.f.prox_conj(nu / self.gamma, self.xg)


def prox_objective(f: BaseFunction, gamma, x, eta, nu) -> float:
    """Objective gamma * persp(f, y*, nu) + ||y* - x||^2/2 + (nu - eta)^2/2.

    ``y*`` is the exact vector minimizer at scale nu, so this is the value
    the prox of the perspective minimizes, partially minimized over the
    vector block.
    """
    x = np.asarray(x, dtype=np.float64)
    solve = _InnerSolve(f, float(gamma), x)
    return _objective_at(solve, float(eta), float(nu))


def _objective_at(solve, eta, nu):
    y = solve.point(nu)
    val = solve.gamma * perspective_value(solve.f, y, nu)
    diff = y - solve.x
    return val + 0.5 * float(np.dot(diff, diff)) + 0.5 * (nu - eta) ** 2


def _auto_nu_max(f, gamma, x, eta):
    tval = eta + gamma * f.conj_eval(f.project_dom_conj(x / gamma))
    if math.isfinite(tval):
        return max(1.0, tval + 5.0)
    return 10.0 * max(1.0, abs(eta))


def brute_prox(f: BaseFunction, gamma, x, eta,
               cfg: OracleConfig | None = None) -> tuple[np.ndarray, float]:
    """Grid-plus-refinement minimizer of the prox objective.

    Returns (p_hat, mu_hat).  The scale grid covers {0} and (0, nu_max];
    if the coarse minimizer lands on the right edge the ceiling is doubled
    (at most three times) before the fine stages run.
    """
    if cfg is None:
        cfg = OracleConfig()
    gamma = float(gamma)
    eta = float(eta)
    x = np.asarray(x, dtype=np.float64)
    solve = _InnerSolve(f, gamma, x)

    nu_max = cfg.nu_max if cfg.nu_max is not None else _auto_nu_max(f, gamma, x, eta)

    # failsafe: a minimizer on the right edge means the ceiling was too low
    for _ in range(16):
        coarse = np.linspace(0.0, nu_max, cfg.coarse_cells + 1)
        values = [_objective_at(solve, eta, nu) for nu in coarse]
        best = int(np.argmin(values))
        if best < cfg.coarse_cells:
            break
        nu_max *= 2.0

    cell = nu_max / cfg.coarse_cells
    lo = max(0.0, coarse[best] - cell)
    hi = min(nu_max, coarse[best] + cell)

    best_nu = coarse[best]
    best_val = values[best]
    nu = lo
    while nu <= hi:
        val = _objective_at(solve, eta, nu)
        if val < best_val:
            best_val = val
            best_nu = nu
        nu += cfg.nu_step

    a = max(0.0, best_nu - cfg.nu_step)
    b = best_nu + cfg.nu_step
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc = _objective_at(solve, eta, c)
    fd = _objective_at(solve, eta, d)
    for _ in range(cfg.refine_iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = _objective_at(solve, eta, c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = _objective_at(solve, eta, d)
        if fc < best_val:
            best_val, best_nu = fc, c
        if fd < best_val:
            best_val, best_nu = fd, d

    return solve.point(best_nu), best_nu


def fenchel_young_residual(f: BaseFunction, gamma, x, eta, p, mu) -> tuple[float, float]:
    """Residuals certifying (p, mu) as the perspective prox at (x, eta).

    Returns ``(equality_res, feasibility_res)``: the gap in the perspective
    value identity against the dual point u = (x - p) / gamma, and the
    positive part of the dual feasibility constraint
    (eta - mu) / gamma + f*(u).  Both near zero certify optimality.
    """
    gamma = float(gamma)
    eta = float(eta)
    mu = float(mu)
    x = np.asarray(x, dtype=np.float64)
    p = np.asarray(p, dtype=np.float64)
    u = (x - p) / gamma
    eq = abs(
        perspective_value(f, p, mu) - float(np.dot(p, u)) - mu * (eta - mu) / gamma
    )
    feas = max(0.0, (eta - mu) / gamma + f.conj_eval(u))
    return eq, feas
