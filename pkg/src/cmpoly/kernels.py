"""Hot numeric kernels for the Laplace-transform verifications.

Every kernel has two interchangeable implementations: a numba @njit loop
version and a pure-numpy vectorized version.  The environment variable
CMPOLY_NO_NUMBA=1 selects the numpy path (also used automatically when numba
is unavailable).  `benchmarks/bench_kernels.py` compares the two.

All quadrature kernels receive precomputed nodes/weights whose weights
already absorb the singular endpoint powers (Gauss-Jacobi), so the
integrands evaluated here are analytic.
"""

from __future__ import annotations

import math
import os

import numpy as np

_env_off = os.environ.get("CMPOLY_NO_NUMBA", "") not in ("", "0")
USE_NUMBA = not _env_off
if USE_NUMBA:
    try:
        from numba import njit as _njit
    except ImportError:      # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    def _compiled(f):
        return _njit(cache=True, fastmath=False)(f)
else:
    def _compiled(f):
        return f


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# scalar Heron kernel
# ---------------------------------------------------------------------------

def heron_p(t1: float, t2: float, t3: float) -> float:
    """2(t1 t2 + t3 t1 + t3 t2) - (t1^2 + t2^2 + t3^2), clamped to 0 outside
    the triangle region (it is negative exactly there for nonnegative t)."""
    p = 2.0 * (t1 * t2 + t3 * t1 + t3 * t2) - (t1 * t1 + t2 * t2 + t3 * t3)
    return p if p > 0.0 else 0.0


# ---------------------------------------------------------------------------
# loop kernels (numba path)
# ---------------------------------------------------------------------------

def _e23_loop(s1, w1, s2, w2, ju, jw, x1, x2, x3):
    total = 0.0
    for i in range(s1.shape[0]):
        t1 = s1[i] * s1[i]
        for j in range(s2.shape[0]):
            t2 = s2[j] * s2[j]
            m = t1 + t2
            h = 2.0 * s1[i] * s2[j]
            inner = 0.0
            for k in range(ju.shape[0]):
                inner += jw[k] * math.exp(-x3 * (m + h * ju[k]))
            total += w1[i] * w2[j] * math.exp(-x1 * t1 - x2 * t2) * inner
    return total


def _detm2_loop(r1, w1, r2, w2, ju, jw, a11, a12, a22):
    total = 0.0
    for i in range(r1.shape[0]):
        for j in range(r2.shape[0]):
            s = r1[i] * r2[j]
            inner = 0.0
            for k in range(ju.shape[0]):
                inner += jw[k] * math.exp(-2.0 * a12 * s * ju[k])
            total += (w1[i] * w2[j] * inner
                      * math.exp(-a11 * r1[i] * r1[i] - a22 * r2[j] * r2[j]))
    return total


def _series2d_loop(s, ws, ju, jw, lam, v, u):
    sq = math.sqrt(lam)
    total = 0.0
    for i in range(s.shape[0]):
        m = s[i] * s[i] + lam
        h = 2.0 * s[i] * sq
        inner = 0.0
        for k in range(ju.shape[0]):
            inner += jw[k] * math.exp(-v * (m + h * ju[k]))
        total += ws[i] * math.exp(-u * s[i] * s[i]) * inner
    return total


def _series_line_loop(s, ws, half_sqlam, u, v):
    total = 0.0
    for i in range(s.shape[0]):
        a = s[i] + half_sqlam
        b = s[i] - half_sqlam
        total += ws[i] * math.exp(-a * a * u - b * b * v)
    return total


def _e2n_loop(wn, ww, ju, jw, nd, beta, xe, xperp, costab):
    # nd = n (number of variables); perp dimension d = n-1 (2 or 3)
    n = nd
    d = n - 1
    sq = math.sqrt(n - 1.0)
    ckpow = beta - n / 2.0
    ck = ((n - 1.0) / 8.0) ** ckpow / sq ** (2.0 * beta - 1.0) * 0.5
    total = 0.0
    for i in range(wn.shape[0]):
        w = wn[i]
        rstar = w / sq
        inner = 0.0
        for k in range(ju.shape[0]):
            u = ju[k]
            rho = rstar * (1.0 + u) * 0.5
            kappa = rho * xperp
            if d == 2:
                ang = 0.0
                for t in range(costab.shape[0]):
                    ang += math.exp(-kappa * costab[t])
                ang *= 2.0 * math.pi / costab.shape[0]
            else:
                if kappa < 1e-8:
                    ang = 4.0 * math.pi * (1.0 + kappa * kappa / 6.0)
                else:
                    ang = 4.0 * math.pi * math.sinh(kappa) / kappa
            inner += (jw[k] * ((1.0 + u) * 0.5) ** (d - 1)
                      * (3.0 + u) ** ckpow * ang)
        total += ww[i] * math.exp(-xe * w) * ck * inner
    return total


def _e2n_mc_loop(w, g, d, nv, beta, xe, xp, lam, kappa):
    # w: (M,), g: (M, d) standard normals; returns weighted integrand values
    M = w.shape[0]
    n = nv
    sq = math.sqrt(n - 1.0)
    out = np.zeros(M)
    logc = math.log(lam)
    for i in range(M):
        sig = kappa * w[i] / sq
        rho2 = 0.0
        dot = 0.0
        for t in range(d):
            gv = g[i, t] * sig
            rho2 += gv * gv
            dot += gv * xp[t]
        rho = math.sqrt(rho2)
        if rho >= w[i] / sq:
            continue
        K = (w[i] * w[i] - (n - 1.0) * rho2) * 0.5
        logq = (logc - lam * w[i]
                - 0.5 * d * math.log(2.0 * math.pi * sig * sig)
                - rho2 / (2.0 * sig * sig))
        logf = -(xe * w[i] + dot) + (beta - n / 2.0) * math.log(K)
        out[i] = math.exp(logf - logq)
    return out


if USE_NUMBA:
    _e23_nb = _compiled(_e23_loop)
    _detm2_nb = _compiled(_detm2_loop)
    _series2d_nb = _compiled(_series2d_loop)
    _series_line_nb = _compiled(_series_line_loop)
    _e2n_nb = _compiled(_e2n_loop)
    _e2n_mc_nb = _compiled(_e2n_mc_loop)


# ---------------------------------------------------------------------------
# numpy twins
# ---------------------------------------------------------------------------

def _e23_np(s1, w1, s2, w2, ju, jw, x1, x2, x3):
    T1 = (s1 * s1)[:, None]
    T2 = (s2 * s2)[None, :]
    m = T1 + T2
    h = 2.0 * s1[:, None] * s2[None, :]
    inner = np.einsum("ijk,k->ij", np.exp(-x3 * (m[..., None] + h[..., None] * ju)), jw)
    G = np.exp(-x1 * T1 - x2 * T2) * inner
    return float(w1 @ G @ w2)


def _detm2_np(r1, w1, r2, w2, ju, jw, a11, a12, a22):
    s = r1[:, None] * r2[None, :]
    inner = np.einsum("ijk,k->ij", np.exp(-2.0 * a12 * s[..., None] * ju), jw)
    G = np.exp(-a11 * (r1 * r1)[:, None] - a22 * (r2 * r2)[None, :]) * inner
    return float(w1 @ G @ w2)


def _series2d_np(s, ws, ju, jw, lam, v, u):
    m = s * s + lam
    h = 2.0 * s * math.sqrt(lam)
    inner = np.exp(-v * (m[:, None] + h[:, None] * ju)) @ jw
    return float(ws @ (np.exp(-u * s * s) * inner))


def _series_line_np(s, ws, half_sqlam, u, v):
    return float(ws @ np.exp(-(s + half_sqlam) ** 2 * u - (s - half_sqlam) ** 2 * v))


def _e2n_np(wn, ww, ju, jw, nd, beta, xe, xperp, costab):
    n = nd
    d = n - 1
    sq = math.sqrt(n - 1.0)
    ckpow = beta - n / 2.0
    ck = ((n - 1.0) / 8.0) ** ckpow / sq ** (2.0 * beta - 1.0) * 0.5
    rstar = wn / sq
    rho = rstar[:, None] * (1.0 + ju)[None, :] * 0.5
    kappa = rho * xperp
    if d == 2:
        ang = np.exp(-kappa[..., None] * costab).mean(axis=-1) * 2.0 * np.pi
    else:
        small = kappa < 1e-8
        safe = np.where(small, 1.0, kappa)
        ang = np.where(small, 4.0 * np.pi * (1.0 + kappa * kappa / 6.0),
                       4.0 * np.pi * np.sinh(safe) / safe)
    inner = (ang * ((1.0 + ju) * 0.5) ** (d - 1) * (3.0 + ju) ** ckpow) @ jw
    return float(ww @ (np.exp(-xe * wn) * ck * inner))


def _e2n_mc_np(w, g, d, nv, beta, xe, xp, lam, kappa):
    n = nv
    sq = math.sqrt(n - 1.0)
    sig = kappa * w / sq
    gv = g * sig[:, None]
    rho2 = np.einsum("ij,ij->i", gv, gv)
    rho = np.sqrt(rho2)
    inside = rho < w / sq
    K = np.where(inside, (w * w - (n - 1.0) * rho2) * 0.5, 1.0)
    logq = (math.log(lam) - lam * w - 0.5 * d * np.log(2.0 * np.pi * sig * sig)
            - rho2 / (2.0 * sig * sig))
    logf = -(xe * w + gv @ xp) + (beta - n / 2.0) * np.log(K)
    return np.where(inside, np.exp(logf - logq), 0.0)


# ---------------------------------------------------------------------------
# public dispatch
# ---------------------------------------------------------------------------

if USE_NUMBA:
    e23_sum = _e23_nb
    detm2_sum = _detm2_nb
    series2d_sum = _series2d_nb
    series_line_sum = _series_line_nb
    e2n_sum = _e2n_nb
    e2n_mc_vals = _e2n_mc_nb
else:
    e23_sum = _e23_np
    detm2_sum = _detm2_np
    series2d_sum = _series2d_np
    series_line_sum = _series_line_np
    e2n_sum = _e2n_np
    e2n_mc_vals = _e2n_mc_np

NUMPY_IMPLS = {
    "e23_sum": _e23_np,
    "detm2_sum": _detm2_np,
    "series2d_sum": _series2d_np,
    "series_line_sum": _series_line_np,
    "e2n_sum": _e2n_np,
    "e2n_mc_vals": _e2n_mc_np,
}

ACTIVE_IMPLS = {
    "e23_sum": e23_sum,
    "detm2_sum": detm2_sum,
    "series2d_sum": series2d_sum,
    "series_line_sum": series_line_sum,
    "e2n_sum": e2n_sum,
    "e2n_mc_vals": e2n_mc_vals,
}
