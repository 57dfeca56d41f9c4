"""Randomized verification suites over the function catalog.

Shared by ``persprox verify`` and the acceptance tests: seeded query
generation, oracle agreement, optimality residuals, firm nonexpansiveness,
positive homogeneity, and the variational characterization of the implied
projection.  Each suite returns a :class:`SuiteReport`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import engine, oracle
from .functions import (
    BaseFunction,
    CappedBurg,
    ExpSum,
    LogSumExp,
    NestedPerspective,
    Quadratic,
)
from .numerics import SolverConfig
from .oracle import OracleConfig

CATALOG = ("quadratic", "capped_burg", "exp_sum", "log_sum_exp", "nested_quadratic")

_DIMS = {
    "quadratic": (1, 2, 3),
    "capped_burg": (1,),
    "exp_sum": (1, 2, 3),
    "log_sum_exp": (2, 3),
    "nested_quadratic": (2,),
}

_GAMMAS = (0.5, 1.0, 2.0)


@dataclass
class SuiteReport:
    suite: str
    entry: str
    checked: int
    failures: int
    max_err: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def make_entry(name: str, dim: int, cfg: SolverConfig | None = None) -> BaseFunction:
    """Instantiate a catalog entry by its CLI tag."""
    if name == "quadratic":
        return Quadratic(dim)
    if name == "capped_burg":
        return CappedBurg()
    if name == "exp_sum":
        return ExpSum(dim)
    if name == "log_sum_exp":
        return LogSumExp(dim, cfg)
    if name == "nested_quadratic":
        return NestedPerspective(Quadratic(dim - 1), cfg)
    raise ValueError(f"unknown catalog entry {name!r}")


def random_queries(name: str, samples: int, seed: int,
                   cfg: SolverConfig | None = None):
    """Seeded stream of (f, gamma, x, eta) queries at desk scale."""
    rng = np.random.default_rng(seed)
    dims = _DIMS[name]
    for i in range(samples):
        dim = dims[i % len(dims)]
        gamma = _GAMMAS[i % len(_GAMMAS)]
        f = make_entry(name, dim, cfg)
        x = rng.uniform(-5.0, 5.0, size=dim)
        eta = float(rng.uniform(-5.0, 5.0))
        yield f, gamma, x, eta


def sample_conj_dom(f: BaseFunction, rng) -> np.ndarray:
    """A random point in the domain of the conjugate of f."""
    if isinstance(f, Quadratic):
        return rng.normal(0.0, 2.0, size=f.dim)
    if isinstance(f, CappedBurg):
        return np.array([rng.uniform(1e-6, 1.0)])
    if isinstance(f, ExpSum):
        return rng.uniform(0.0, 4.0, size=f.dim)
    if isinstance(f, LogSumExp):
        return rng.dirichlet(np.ones(f.dim))
    if isinstance(f, NestedPerspective):
        u = sample_conj_dom(f.inner, rng)
        s = -f.inner.conj_eval(u) - rng.exponential(1.0)
        return np.append(u, s)
    raise TypeError(f"no conjugate-domain sampler for {type(f).__name__}")


def oracle_agreement(name: str, samples: int, seed: int,
                     oracle_cfg: OracleConfig | None = None,
                     cfg: SolverConfig | None = None,
                     tol: float = 1e-3) -> SuiteReport:
    """Engine output vs brute-force oracle within tol on (p, mu)."""
    failures = 0
    worst = 0.0
    count = 0
    for f, gamma, x, eta in random_queries(name, samples, seed, cfg):
        res = engine.prox_perspective(engine.ProxQuery(f, gamma, x, eta), cfg)
        p_hat, mu_hat = oracle.brute_prox(f, gamma, x, eta, oracle_cfg)
        gap = float(np.linalg.norm(res.stacked() - np.append(p_hat, mu_hat)))
        worst = max(worst, gap)
        if gap > tol:
            failures += 1
        count += 1
    return SuiteReport("oracle_agreement", name, count, failures, worst)


def residuals(name: str, samples: int, seed: int,
              cfg: SolverConfig | None = None,
              feas_tol: float = 1e-8, mu_tol: float = 1e-8) -> SuiteReport:
    """Feasibility residual and scale-equation residual on engine outputs."""
    failures = 0
    worst = 0.0
    count = 0
    for f, gamma, x, eta in random_queries(name, samples, seed, cfg):
        res = engine.prox_perspective(engine.ProxQuery(f, gamma, x, eta), cfg)
        err = res.feasibility_residual / feas_tol
        if res.case_tag == engine.CASE_INTERIOR:
            gap = abs(
                res.mu - eta - gamma * f.conj_eval(f.prox_conj(res.mu / gamma, x / gamma))
            )
            err = max(err, gap / (mu_tol * max(1.0, abs(res.mu))))
        worst = max(worst, err)
        if err > 1.0:
            failures += 1
        count += 1
    return SuiteReport("residuals", name, count, failures, worst)


def firm_nonexpansiveness(name: str, pairs: int, seed: int,
                          cfg: SolverConfig | None = None,
                          tol: float = 1e-9) -> SuiteReport:
    """||P1 - P2||^2 <= <P1 - P2, z1 - z2> + tol over random query pairs."""
    rng = np.random.default_rng(seed + 7)
    failures = 0
    worst = 0.0
    count = 0
    for f, gamma, x1, eta1 in random_queries(name, pairs, seed, cfg):
        x2 = rng.uniform(-5.0, 5.0, size=f.dim)
        eta2 = float(rng.uniform(-5.0, 5.0))
        r1 = engine.prox_perspective(engine.ProxQuery(f, gamma, x1, eta1), cfg)
        r2 = engine.prox_perspective(engine.ProxQuery(f, gamma, x2, eta2), cfg)
        d = r1.stacked() - r2.stacked()
        z = np.append(x1, eta1) - np.append(x2, eta2)
        viol = float(np.dot(d, d) - np.dot(d, z))
        worst = max(worst, viol)
        if viol > tol:
            failures += 1
        count += 1
    return SuiteReport("firm_nonexpansiveness", name, count, failures, worst)


def homogeneity(name: str, samples: int, seed: int,
                cfg: SolverConfig | None = None,
                tol: float = 1e-9) -> SuiteReport:
    """prox at (lam*x, lam*eta) with gamma equals lam times prox at (x, eta)
    with gamma/lam, componentwise."""
    lams = (0.5, 2.0, 3.5)
    failures = 0
    worst = 0.0
    count = 0
    for i, (f, gamma, x, eta) in enumerate(random_queries(name, samples, seed, cfg)):
        lam = lams[i % len(lams)]
        left = engine.prox_perspective(
            engine.ProxQuery(f, gamma, lam * x, lam * eta), cfg
        ).stacked()
        right = lam * engine.prox_perspective(
            engine.ProxQuery(f, gamma / lam, x, eta), cfg
        ).stacked()
        gap = float(np.max(np.abs(left - right)))
        worst = max(worst, gap)
        if gap > tol:
            failures += 1
        count += 1
    return SuiteReport("homogeneity", name, count, failures, worst)


def moreau_consistency(name: str, queries: int, c_samples: int, seed: int,
                       cfg: SolverConfig | None = None,
                       tol: float = 1e-8) -> SuiteReport:
    """The pair ((x-p)/gamma, (eta-mu)/gamma) is feasible for the conjugate
    indicator set and satisfies its projection variational inequality."""
    rng = np.random.default_rng(seed + 1)
    failures = 0
    worst = 0.0
    count = 0
    for f, gamma, x, eta in random_queries(name, queries, seed, cfg):
        res = engine.prox_perspective(engine.ProxQuery(f, gamma, x, eta), cfg)
        q = np.append((x - res.p) / gamma, (eta - res.mu) / gamma)
        z = np.append(x, eta) / gamma
        viol = res.feasibility_residual
        for _ in range(c_samples):
            u = sample_conj_dom(f, rng)
            s = -f.conj_eval(u) - rng.exponential(1.0)
            c = np.append(u, s)
            viol = max(viol, float(np.dot(z - q, c - q)))
        worst = max(worst, viol)
        if viol > tol:
            failures += 1
        count += 1
    return SuiteReport("moreau_consistency", name, count, failures, worst)


def run_all(names, samples: int, seed: int, grid_step: float = 1e-4,
            cfg: SolverConfig | None = None) -> list[SuiteReport]:
    """Every suite over the requested entries; oracle sizes follow samples."""
    oracle_cfg = OracleConfig(nu_step=grid_step)
    reports = []
    for name in names:
        reports.append(oracle_agreement(name, samples, seed, oracle_cfg, cfg))
        reports.append(residuals(name, samples, seed, cfg))
        reports.append(firm_nonexpansiveness(name, samples, seed, cfg))
        reports.append(homogeneity(name, samples, seed, cfg))
        reports.append(moreau_consistency(name, min(samples, 50), 100, seed, cfg))
    return reports
