"""Acceptance suite: every criterion at its stated tolerance.

Each test prints one pass/fail line (visible with ``pytest -s`` or in the
captured output of a failure) and then asserts, so the suite doubles as a
human-readable report.
"""

import math
import time

import numpy as np
import pytest

from conftest import CATALOG, make_entry, random_queries, run_prox
from persprox import engine, verify
from persprox.engine import CASE_INTERIOR, ProxQuery, capped_burg_closed_form
from persprox.functions import CappedBurg, Quadratic
from persprox.numerics import lambert_w0, lambert_w0_exp, project_simplex
from persprox.oracle import OracleConfig
from persprox.radial import prox_perspective_radial, quadratic_profile
from test_numerics import simplex_projection_enumerated


def report(criterion, passed, detail):
    print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} ({detail})")
    assert passed, f"{criterion}: {detail}"


def test_criterion_1_oracle_agreement():
    """200 seeded queries per entry agree with the brute-force oracle to 1e-3."""
    oracle_cfg = OracleConfig(nu_step=1e-4)
    start = time.time()
    worst = 0.0
    failures = 0
    for name in CATALOG:
        rep = verify.oracle_agreement(name, 200, 7, oracle_cfg, tol=1e-3)
        worst = max(worst, rep.max_err)
        failures += rep.failures
    elapsed = time.time() - start
    report(
        "1 oracle agreement",
        failures == 0 and elapsed < 60.0,
        f"max gap {worst:.2e} over {200 * len(CATALOG)} queries in {elapsed:.1f}s",
    )


def test_criterion_2_characterization_residuals():
    """Feasibility <= 1e-8 and interior scale-equation residual <= 1e-8*max(1,|mu|)."""
    worst_feas = 0.0
    worst_gap = 0.0
    failures = 0
    for name in CATALOG:
        for f, gamma, x, eta in random_queries(name, 200, 7):
            res = run_prox(f, gamma, x, eta)
            worst_feas = max(worst_feas, res.feasibility_residual)
            if res.feasibility_residual > 1e-8:
                failures += 1
            if res.case_tag == CASE_INTERIOR:
                gap = abs(
                    res.mu - eta
                    - gamma * f.conj_eval(f.prox_conj(res.mu / gamma, x / gamma))
                )
                scaled = gap / max(1.0, abs(res.mu))
                worst_gap = max(worst_gap, scaled)
                if scaled > 1e-8:
                    failures += 1
    report(
        "2 characterization residuals",
        failures == 0,
        f"max feasibility {worst_feas:.2e}, max scaled scale-equation gap {worst_gap:.2e}",
    )


def test_criterion_3_closed_form_golden():
    """Closed-form capped Burg vs engine to 1e-9; quadratic scale vs cubic to 1e-10."""
    rng = np.random.default_rng(301)
    worst_burg = 0.0
    for _ in range(500):
        gamma = float(rng.uniform(0.5, 2.0))
        xi = float(rng.uniform(-5.0, 5.0))
        eta = float(rng.uniform(-5.0, 5.0))
        a = run_prox(CappedBurg(), gamma, [xi], eta)
        b = capped_burg_closed_form(gamma, xi, eta)
        worst_burg = max(worst_burg, float(np.linalg.norm(a.stacked() - b.stacked())))

    worst_quad = 0.0
    checked = 0
    for _ in range(500):
        n = int(rng.integers(1, 4))
        gamma = float(rng.uniform(0.5, 2.0))
        x = rng.uniform(-5.0, 5.0, size=n)
        eta = float(rng.uniform(-5.0, 5.0))
        res = run_prox(Quadratic(n), gamma, x, eta)
        if res.case_tag != CASE_INTERIOR:
            continue
        checked += 1
        coeffs = [
            1.0,
            2.0 * gamma - eta,
            gamma * gamma - 2.0 * gamma * eta,
            -eta * gamma * gamma - 0.5 * gamma * float(np.dot(x, x)),
        ]
        roots = [r.real for r in np.roots(coeffs)
                 if abs(r.imag) < 1e-8 and r.real > 0.0]
        assert len(roots) == 1
        worst_quad = max(worst_quad, abs(res.mu - roots[0]))
    report(
        "3 closed-form golden tests",
        worst_burg <= 1e-9 and worst_quad <= 1e-10 and checked > 100,
        f"capped Burg gap {worst_burg:.2e}, quadratic cubic gap {worst_quad:.2e} "
        f"({checked} interior)",
    )


def test_criterion_4_exact_spot_values():
    """Branch values hit exactly, including the bit-exact nested last coordinate."""
    ok = True
    details = []

    for gamma in (0.5, 1.0, 2.0, 3.7):
        res = run_prox(Quadratic(1), gamma, [0.0], 1.0)
        ok &= res.mu == 1.0 and res.p[0] == 0.0
        res = run_prox(Quadratic(1), gamma, [0.0], -2.0)
        ok &= res.mu == 0.0 and res.p[0] == 0.0
    details.append("quadratic origin branches exact")

    res = run_prox(CappedBurg(), 1.0, [3.0], 1.0)
    ok &= res.p[0] == 2.0 and res.mu == 1.0
    res = run_prox(CappedBurg(), 1.0, [3.0], -1.0)
    ok &= res.p[0] == 2.0 and res.mu == 0.0
    details.append("capped Burg branches exact")

    for delta in (-5.0, -1e-12, 0.0, 1e-12, 7.25, 3.0e4):
        res = engine.nested_perspective_prox(1.0, [0.4], 0.3, delta, Quadratic(1))
        ok &= res.mu == max(0.0, delta)
    details.append("nested scale coordinate bit-exact")

    report("4 exact spot values", ok, "; ".join(details))


def test_criterion_5_operator_properties():
    """Firm nonexpansiveness and homogeneity to 1e-9; projection inequality to 1e-8."""
    worst = {"firm": 0.0, "homog": 0.0, "moreau": 0.0}
    failures = 0
    for name in CATALOG:
        rep = verify.firm_nonexpansiveness(name, 200, 7, tol=1e-9)
        worst["firm"] = max(worst["firm"], rep.max_err)
        failures += rep.failures
        rep = verify.homogeneity(name, 200, 7, tol=1e-9)
        worst["homog"] = max(worst["homog"], rep.max_err)
        failures += rep.failures
        rep = verify.moreau_consistency(name, 50, 100, 7, tol=1e-8)
        worst["moreau"] = max(worst["moreau"], rep.max_err)
        failures += rep.failures
    report(
        "5 operator properties",
        failures == 0,
        f"firm {worst['firm']:.2e}, homogeneity {worst['homog']:.2e}, "
        f"projection inequality {worst['moreau']:.2e}",
    )


def test_criterion_6_kernel_accuracy():
    """Lambert residual bounds and exact simplex projection for n <= 5."""
    rng = np.random.default_rng(601)
    worst_lin = 0.0
    for y in rng.uniform(0.0, 1e6, size=1000):
        w = lambert_w0(y)
        worst_lin = max(worst_lin, abs(w * math.exp(w) - y) / max(1.0, y))

    worst_log = 0.0
    for z in rng.uniform(-30.0, 700.0, size=1000):
        w = lambert_w0_exp(z)
        worst_log = max(worst_log, abs(w + math.log(w) - z) / max(1.0, abs(z)))

    worst_simplex = 0.0
    for _ in range(500):
        n = int(rng.integers(1, 6))
        v = rng.uniform(-4.0, 4.0, size=n)
        expected = simplex_projection_enumerated(v)
        worst_simplex = max(
            worst_simplex, float(np.max(np.abs(project_simplex(v) - expected)))
        )

    report(
        "6 kernel accuracy",
        worst_lin <= 1e-12 and worst_log <= 1e-12 and worst_simplex <= 1e-12,
        f"W residual {worst_lin:.2e}, log-domain {worst_log:.2e}, "
        f"simplex vs enumeration {worst_simplex:.2e}",
    )


def test_criterion_7_radial_agreement():
    """Radial path equals the general engine to 1e-10 and is rotation equivariant."""
    rng = np.random.default_rng(701)
    profile = quadratic_profile()
    worst_agree = 0.0
    for _ in range(500):
        n = int(rng.integers(1, 4))
        x = rng.uniform(-5.0, 5.0, size=n)
        eta = float(rng.uniform(-5.0, 5.0))
        gamma = float(rng.uniform(0.5, 2.0))
        rad = prox_perspective_radial(profile, gamma, x, eta)
        gen = run_prox(Quadratic(n), gamma, x, eta)
        worst_agree = max(
            worst_agree, float(np.max(np.abs(rad.stacked() - gen.stacked())))
        )

    worst_rot = 0.0
    for _ in range(200):
        n = int(rng.integers(2, 4))
        x = rng.uniform(-5.0, 5.0, size=n)
        eta = float(rng.uniform(-5.0, 5.0))
        gamma = float(rng.uniform(0.5, 2.0))
        q, r = np.linalg.qr(rng.normal(size=(n, n)))
        rot = q * np.sign(np.diag(r))
        base = prox_perspective_radial(profile, gamma, x, eta)
        rotated = prox_perspective_radial(profile, gamma, rot @ x, eta)
        worst_rot = max(
            worst_rot,
            float(np.max(np.abs(rotated.p - rot @ base.p))),
            abs(rotated.mu - base.mu),
        )

    report(
        "7 radial agreement",
        worst_agree <= 1e-10 and worst_rot <= 1e-10,
        f"engine gap {worst_agree:.2e}, rotation gap {worst_rot:.2e}",
    )
