"""Pure-Python scalar kernels.

Reference implementations of the hot numeric loops: the principal Lambert W
branch (linear and log-domain forms), simplex projection, and the entropy
prox solves built on them.  ``persprox._kernels_c`` is the compiled twin;
both must implement identical arithmetic so results match across backends.
"""

import math

import numpy as np

# Below this argument W0(e^z) equals e^z to full double precision.
_EXP_UNDERFLOW = -36.7368005696771

# 1 + ln 1e6: beyond the sampled kernel ranges a looser seed still converges.
_HALLEY_MAX_ITER = 50


def lambert_w0_exp(z):
    """Solve w + ln w = z for w > 0, i.e. W0(exp(z)) without forming exp(z)."""
    z = float(z)
    if z < _EXP_UNDERFLOW:
        return math.exp(z)
    if z > 2.0:
        w = z - math.log(z)
    else:
        w = math.log1p(math.exp(z))
    for _ in range(_HALLEY_MAX_ITER):
        lw = math.log(w)
        f = w + lw - z
        d = w + 1.0
        # Halley step for f(w) = w + ln w - z
        step = (f * w / d) / (1.0 + f / (2.0 * d * d))
        wn = w - step
        if wn <= 0.0:
            wn = 0.5 * w
        done = abs(wn - w) <= 1e-15 * (1.0 + abs(wn))
        w = wn
        if done:
            break
    return w


def lambert_w0(y):
    """Principal Lambert W branch on y >= 0: the w >= 0 with w*exp(w) = y."""
    y = float(y)
    if y == 0.0:
        return 0.0
    return lambert_w0_exp(math.log(y))


def lambert_w0_exp_many(z):
    """Elementwise lambert_w0_exp over a 1-d array."""
    z = np.ascontiguousarray(z, dtype=np.float64)
    out = np.empty_like(z)
    for i in range(z.shape[0]):
        out[i] = lambert_w0_exp(z[i])
    return out


def project_simplex(v):
    """Euclidean projection onto {p : p >= 0, sum p = 1} by sort and threshold."""
    v = np.ascontiguousarray(v, dtype=np.float64)
    n = v.shape[0]
    u = np.sort(v)[::-1]
    css = 0.0
    theta = 0.0
    for j in range(n):
        css += u[j]
        t = (css - 1.0) / (j + 1.0)
        if u[j] - t > 0.0:
            theta = t
        else:
            break
    out = np.empty_like(v)
    for i in range(n):
        d = v[i] - theta
        out[i] = d if d > 0.0 else 0.0
    return out


def xlogx_sum(u):
    """Sum of u_i * ln(u_i) with 0 ln 0 = 0; +inf if any coordinate is negative."""
    u = np.ascontiguousarray(u, dtype=np.float64)
    s = 0.0
    for i in range(u.shape[0]):
        ui = u[i]
        if ui < 0.0:
            return math.inf
        if ui > 0.0:
            s += ui * math.log(ui)
    return s


def neg_entropy_prox(tau, y):
    """Prox of tau * sum(u ln u) at y, elementwise through the log-domain W."""
    y = np.ascontiguousarray(y, dtype=np.float64)
    tau = float(tau)
    lt = math.log(tau)
    out = np.empty_like(y)
    for i in range(y.shape[0]):
        out[i] = tau * lambert_w0_exp(y[i] / tau - 1.0 - lt)
    return out


def simplex_neg_entropy_prox(tau, y, expand, max_iter):
    """Prox of tau * sum(u ln u) restricted to the probability simplex.

    Coordinates keep the log-domain W form of ``neg_entropy_prox`` shifted by
    a multiplier lam chosen so the coordinates sum to one; the sum is strictly
    decreasing in lam, so lam is bracketed by outward expansion from
    max_i(y_i / tau) and then bisected.  Returns ``(p, lam, evaluations)``.
    """
    y = np.ascontiguousarray(y, dtype=np.float64)
    tau = float(tau)
    n = y.shape[0]
    lt = math.log(tau)
    z = np.empty_like(y)
    for i in range(n):
        z[i] = y[i] / tau - 1.0 - lt

    def coord_sum(lam):
        s = 0.0
        for i in range(n):
            s += tau * lambert_w0_exp(z[i] - lam)
        return s

    lam = float(np.max(y)) / tau
    s0 = coord_sum(lam)
    evals = 1
    if s0 == 1.0:
        p = np.empty_like(y)
        for i in range(n):
            p[i] = tau * lambert_w0_exp(z[i] - lam)
        return p, lam, evals

    step = 1.0
    if s0 > 1.0:
        lo = lam
        k = 0
        while True:
            k += 1
            if k > max_iter:
                raise RuntimeError("no bracket for the simplex multiplier")
            hi = lo + step
            s_hi = coord_sum(hi)
            evals += 1
            if s_hi <= 1.0:
                break
            lo = hi
            step *= expand
    else:
        hi = lam
        k = 0
        while True:
            k += 1
            if k > max_iter:
                raise RuntimeError("no bracket for the simplex multiplier")
            lo = hi - step
            s_lo = coord_sum(lo)
            evals += 1
            if s_lo >= 1.0:
                break
            hi = lo
            step *= expand

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        s_mid = coord_sum(mid)
        evals += 1
        if abs(s_mid - 1.0) <= 1e-13:
            lo = mid
            hi = mid
            break
        if s_mid >= 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(mid)):
            break

    lam = 0.5 * (lo + hi)
    p = np.empty_like(y)
    for i in range(n):
        p[i] = tau * lambert_w0_exp(z[i] - lam)
    return p, lam, evals
