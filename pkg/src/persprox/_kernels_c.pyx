# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels; arithmetic twin of persprox._kernels_py."""

from libc.math cimport exp, log, log1p, fabs, sqrt, INFINITY

import numpy as np

cdef double _EXP_UNDERFLOW = -36.7368005696771
cdef int _HALLEY_MAX_ITER = 50


cpdef double lambert_w0_exp(double z):
    """Solve w + ln w = z for w > 0, i.e. W0(exp(z)) without forming exp(z)."""
    cdef double w, lw, f, d, step, wn
    cdef int it
    if z < _EXP_UNDERFLOW:
        return exp(z)
    if z > 2.0:
        w = z - log(z)
    else:
        w = log1p(exp(z))
    for it in range(_HALLEY_MAX_ITER):
        lw = log(w)
        f = w + lw - z
        d = w + 1.0
        step = (f * w / d) / (1.0 + f / (2.0 * d * d))
        wn = w - step
        if wn <= 0.0:
            wn = 0.5 * w
        if fabs(wn - w) <= 1e-15 * (1.0 + fabs(wn)):
            w = wn
            break
        w = wn
    return w


cpdef double lambert_w0(double y):
    """Principal Lambert W branch on y >= 0: the w >= 0 with w*exp(w) = y."""
    if y == 0.0:
        return 0.0
    return lambert_w0_exp(log(y))


def lambert_w0_exp_many(z):
    """Elementwise lambert_w0_exp over a 1-d array."""
    cdef double[::1] zv = np.ascontiguousarray(z, dtype=np.float64)
    out = np.empty(zv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(zv.shape[0]):
        ov[i] = lambert_w0_exp(zv[i])
    return out


def project_simplex(v):
    """Euclidean projection onto {p : p >= 0, sum p = 1} by sort and threshold."""
    arr = np.ascontiguousarray(v, dtype=np.float64)
    cdef double[::1] vv = arr
    cdef Py_ssize_t n = vv.shape[0]
    srt = np.ascontiguousarray(np.sort(arr)[::-1])
    cdef double[::1] u = srt
    cdef double css = 0.0, theta = 0.0, t, d
    cdef Py_ssize_t j, i
    for j in range(n):
        css += u[j]
        t = (css - 1.0) / (j + 1.0)
        if u[j] - t > 0.0:
            theta = t
        else:
            break
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    for i in range(n):
        d = vv[i] - theta
        ov[i] = d if d > 0.0 else 0.0
    return out


def xlogx_sum(u):
    """Sum of u_i * ln(u_i) with 0 ln 0 = 0; +inf if any coordinate is negative."""
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef double s = 0.0, ui
    cdef Py_ssize_t i
    for i in range(uv.shape[0]):
        ui = uv[i]
        if ui < 0.0:
            return INFINITY
        if ui > 0.0:
            s += ui * log(ui)
    return s


def neg_entropy_prox(double tau, y):
    """Prox of tau * sum(u ln u) at y, elementwise through the log-domain W."""
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef double lt = log(tau)
    out = np.empty(yv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(yv.shape[0]):
        ov[i] = tau * lambert_w0_exp(yv[i] / tau - 1.0 - lt)
    return out


cdef double _coord_sum(double tau, double[::1] z, double lam):
    cdef double s = 0.0
    cdef Py_ssize_t i
    for i in range(z.shape[0]):
        s += tau * lambert_w0_exp(z[i] - lam)
    return s


def simplex_neg_entropy_prox(double tau, y, double expand, int max_iter):
    """Prox of tau * sum(u ln u) restricted to the probability simplex.

    Returns ``(p, lam, evaluations)``; see the Python twin for the scheme.
    """
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef Py_ssize_t n = yv.shape[0]
    cdef double lt = log(tau)
    zarr = np.empty(n, dtype=np.float64)
    cdef double[::1] z = zarr
    cdef Py_ssize_t i
    for i in range(n):
        z[i] = yv[i] / tau - 1.0 - lt

    cdef double lam = -INFINITY
    for i in range(n):
        if yv[i] > lam:
            lam = yv[i]
    lam = lam / tau

    cdef double s0 = _coord_sum(tau, z, lam)
    cdef int evals = 1
    cdef double lo, hi, step, s_hi, s_lo, mid, s_mid
    cdef int k, it

    if s0 == 1.0:
        lo = lam
        hi = lam
    else:
        step = 1.0
        if s0 > 1.0:
            lo = lam
            k = 0
            while True:
                k += 1
                if k > max_iter:
                    raise RuntimeError("no bracket for the simplex multiplier")
                hi = lo + step
                s_hi = _coord_sum(tau, z, hi)
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
                s_lo = _coord_sum(tau, z, lo)
                evals += 1
                if s_lo >= 1.0:
                    break
                hi = lo
                step *= expand

        for it in range(max_iter):
            mid = 0.5 * (lo + hi)
            s_mid = _coord_sum(tau, z, mid)
            evals += 1
            if fabs(s_mid - 1.0) <= 1e-13:
                lo = mid
                hi = mid
                break
            if s_mid >= 1.0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-15 * (1.0 if fabs(mid) < 1.0 else fabs(mid)):
                break

    lam = 0.5 * (lo + hi)
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    for i in range(n):
        ov[i] = tau * lambert_w0_exp(z[i] - lam)
    return out, lam, evals
