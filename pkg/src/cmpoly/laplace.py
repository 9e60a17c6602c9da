"""Numerical verification of the explicit Laplace-transform identities.

Each verifier evaluates the right-hand-side integral representation
numerically (adaptive tensor quadrature with singular endpoint powers
absorbed into Gauss-Jacobi weights, or importance-sampled Monte Carlo over
the Lorentz-type cone) and compares against the closed-form left-hand side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.special import roots_jacobi

from . import kernels

TAIL_EXPONENT = 46.0      # e^-46 ~ 1e-20: relative tail cutoff below 1e-12
GUARD = 1e-3              # keep beta away from the Gamma poles at thresholds


class ToleranceNotMet(RuntimeError):
    pass


@dataclass
class IntegralCheck:
    lhs: float
    rhs: float
    rel_err: float
    method: str                   # quadrature | monte_carlo
    samples_or_cells: int
    error_estimate: float
    params: Dict = field(default_factory=dict)

    @staticmethod
    def make(lhs: float, rhs: float, method: str, cells: int,
             err: float, params: Dict) -> "IntegralCheck":
        rel = abs(lhs - rhs) / max(abs(lhs), 1e-300)
        return IntegralCheck(lhs, rhs, rel, method, cells, err, params)


def _gj_nodes(n: int, alpha: float, a_pow: float, L: float):
    """Nodes/weights for int_0^L s^a_pow g(s) ds with g analytic."""
    x, w = roots_jacobi(n, alpha, a_pow)
    return L * (1 + x) / 2, w * (L / 2) ** (a_pow + 1)


def _ladder(evaluate, tol: float, resolutions) -> Tuple[float, float, int]:
    """Run `evaluate(res)` at increasing resolutions until two consecutive
    values agree to tol/2; returns (value, error_estimate, cells)."""
    prev = None
    for res in resolutions:
        val, cells = evaluate(res)
        if prev is not None:
            est = abs(val - prev) / max(abs(val), 1e-300)
            if est < tol / 2:
                return val, est, cells
        prev = val
    raise ToleranceNotMet(f"quadrature did not stabilize to {tol}")


# ---------------------------------------------------------------------------
# Heron kernel
# ---------------------------------------------------------------------------

def heron_kernel(t1: float, t2: float, t3: float) -> float:
    """Heron-form kernel: the quadratic that equals 16*(triangle area)^2 for
    sides (sqrt(t1), sqrt(t2), sqrt(t3)), and 0 when they form no triangle."""
    if t1 < 0 or t2 < 0 or t3 < 0:
        raise ValueError("negative input")
    return kernels.heron_p(t1, t2, t3)


# ---------------------------------------------------------------------------
# E_{2,3}
# ---------------------------------------------------------------------------

def _e23_value(x: Sequence[float], beta: float, n_out: int, n_jac: int) -> float:
    x1, x2, x3 = (float(v) for v in x)
    a = 2 * beta - 1
    s1, w1 = _gj_nodes(n_out, 0.0, a, math.sqrt(TAIL_EXPONENT / x1))
    s2, w2 = _gj_nodes(n_out, 0.0, a, math.sqrt(TAIL_EXPONENT / x2))
    ju, jw = roots_jacobi(n_jac, beta - 1.5, beta - 1.5)
    raw = kernels.e23_sum(s1, w1, s2, w2, ju, jw, x1, x2, x3)
    const = 4.0 * 2.0 ** (2 * beta - 2)
    pref = 4.0 ** (1 - beta) / (math.gamma(0.5) * math.gamma(beta - 0.5)
                                * math.gamma(beta))
    return pref * const * raw


def verify_E23(beta: float, x: Sequence[float], tol: float = 1e-6) -> IntegralCheck:
    """Check E_{2,3}(x)^(-beta) against its 3-D Laplace integral (beta > 1/2)."""
    if beta <= 0.5 + GUARD:
        raise ValueError("formula valid for beta > 1/2 (numerical guard 1e-3)")
    if len(x) != 3 or any(v <= 0 for v in x):
        raise ValueError("x must be a strictly positive 3-vector")
    lhs = float(sum(x[i] * x[j] for i, j in combinations(range(3), 2))) ** (-beta)
    val, est, cells = _ladder(
        lambda r: (_e23_value(x, beta, r[0], r[1]), r[0] * r[0] * r[1]),
        tol, [(32, 32), (48, 48), (72, 72), (108, 108)])
    return IntegralCheck.make(lhs, val, "quadrature", cells, est,
                              {"formula": "E23", "beta": beta, "x": list(map(float, x))})


# ---------------------------------------------------------------------------
# E_{2,n}
# ---------------------------------------------------------------------------

def _e2n_geometry(n: int, x: Sequence[float]):
    xv = np.asarray(x, dtype=float)
    xe = xv.sum() / math.sqrt(n)
    xperp2 = float(xv @ xv) - float(xv.sum()) ** 2 / n
    xperp = math.sqrt(max(xperp2, 0.0))
    rate = xe - xperp / math.sqrt(n - 1)
    return xv, xe, xperp, rate


def _e2n_pref(n: int, beta: float) -> float:
    return ((n - 1) ** ((n - 1) / 2 - beta)
            / ((2 * math.pi) ** ((n - 2) / 2) * math.gamma(beta)
               * math.gamma(beta - (n - 2) / 2)))


def _e2n_value(n: int, beta: float, x, n_w: int, n_jac: int) -> float:
    _, xe, xperp, rate = _e2n_geometry(n, x)
    a = 2 * beta - 1
    wn, ww = _gj_nodes(n_w, 0.0, a, TAIL_EXPONENT / rate)
    ju, jw = roots_jacobi(n_jac, beta - n / 2, 0.0)
    m_ang = 1 if n != 3 else max(64, 8 * int(wn[-1] / math.sqrt(2) * xperp) + 64)
    costab = np.cos(2 * np.pi * np.arange(m_ang) / m_ang)
    raw = kernels.e2n_sum(wn, ww, ju, jw, n, beta, xe, xperp, costab)
    return _e2n_pref(n, beta) * raw


def _e2n_mc(n: int, beta: float, x, nsamples: int, seed: int,
            kappa: float = 0.55) -> Tuple[float, float, Dict]:
    xv, xe, xperp, rate = _e2n_geometry(n, x)
    d = n - 1
    ones = np.ones(n) / math.sqrt(n)
    Q, _ = np.linalg.qr(np.column_stack([ones, np.eye(n)[:, : n - 1]]))
    B = Q[:, 1:]
    xp = B.T @ xv
    lam = 0.8 * rate
    rng = np.random.default_rng(seed)
    w = rng.exponential(1.0 / lam, nsamples)
    g = rng.normal(0.0, 1.0, (nsamples, d))
    vals = kernels.e2n_mc_vals(w, g, d, n, beta, xe, xp, lam, kappa)
    pref = _e2n_pref(n, beta)
    est = pref * float(vals.mean())
    se = pref * float(vals.std(ddof=1)) / math.sqrt(nsamples)
    info = {"accept_rate": float((vals > 0).mean()),
            "max_weight": pref * float(vals.max()), "lambda": lam, "kappa": kappa}
    return est, se, info


def verify_E2n(n: int, beta: float, x: Sequence[float], tol: Optional[float] = None,
               nsamples: int = 800_000, seed: int = 0) -> IntegralCheck:
    """Check E_{2,n}(x)^(-beta) against its Laplace integral over the
    Lorentz-type cone (beta > (n-2)/2).

    n in {3, 4}: tensor quadrature (exact spherical reduction of the angular
    part); n in {5, 6}: importance-sampled Monte Carlo with reported standard
    error.  x must lie inside the open dual cone (the positive orthant
    suffices strictly; a boundary x is accepted while the decay rate stays
    positive).
    """
    if not 3 <= n <= 6:
        raise ValueError("n must be in 3..6")
    if beta <= (n - 2) / 2 + GUARD:
        raise ValueError(f"formula valid for beta > {(n-2)/2} (numerical guard)")
    if len(x) != n or any(v < 0 for v in x):
        raise ValueError("x must be a nonnegative n-vector")
    _, _, _, rate = _e2n_geometry(n, x)
    if rate <= 1e-6:
        raise ValueError("x is too close to the dual-cone boundary")
    lhs = float(sum(x[i] * x[j] for i, j in combinations(range(n), 2))) ** (-beta)
    params = {"formula": "E2n", "n": n, "beta": beta, "x": list(map(float, x))}
    if n <= 4:
        tol = 1e-5 if tol is None else tol
        val, est, cells = _ladder(
            lambda r: (_e2n_value(n, beta, x, r[0], r[1]), r[0] * r[1]),
            tol, [(40, 40), (64, 64), (96, 96), (144, 144)])
        return IntegralCheck.make(lhs, val, "quadrature", cells, est, params)
    if beta <= (n - 1) / 2:
        raise ValueError("Monte Carlo path needs beta > (n-1)/2 for finite variance")
    est, se, info = _e2n_mc(n, beta, x, nsamples, seed)
    params.update(info)
    params["seed"] = seed
    return IntegralCheck.make(lhs, est, "monte_carlo", nsamples, se, params)


# ---------------------------------------------------------------------------
# series kernel
# ---------------------------------------------------------------------------

def _series_value(beta: float, lam: float, u: float, v: float,
                  n_out: int, n_jac: int) -> float:
    if beta == 0.5:
        L = math.sqrt(lam) / 2 + math.sqrt(TAIL_EXPONENT / min(u, v))
        xg, wg = np.polynomial.legendre.leggauss(n_out * 4)
        s = L * xg
        ws = L * wg
        raw = kernels.series_line_sum(s, ws, math.sqrt(lam) / 2, u, v)
        return raw / math.sqrt(math.pi)
    a = 2 * beta - 1
    s, ws = _gj_nodes(n_out, 0.0, a, math.sqrt(TAIL_EXPONENT / u))
    ju, jw = roots_jacobi(n_jac, beta - 1.5, beta - 1.5)
    raw = kernels.series2d_sum(s, ws, ju, jw, lam, v, u)
    const = 2.0 * (2.0 * math.sqrt(lam)) ** (2 * beta - 2)
    pref = (4 * lam) ** (1 - beta) / (math.gamma(0.5) * math.gamma(beta - 0.5))
    return pref * const * raw


def verify_series_kernel(beta: float, lam: float, u: float, v: float,
                         tol: float = 1e-6) -> IntegralCheck:
    """Check (u+v)^(-beta) exp(-lam*u*v/(u+v)) against its Laplace
    representation: the explicit Heron-support measure for beta > 1/2, or
    the one-dimensional Gaussian identity at beta = 1/2."""
    if lam <= 0 or u <= 0 or v <= 0:
        raise ValueError("need lam, u, v > 0")
    if beta < 0.5:
        raise ValueError("kernel is a Laplace transform only for beta >= 1/2")
    if 0.5 < beta <= 0.5 + GUARD:
        raise ValueError("beta too close to 1/2 for the 2-D density (Gamma pole)")
    lhs = (u + v) ** (-beta) * math.exp(-lam * u * v / (u + v))
    val, est, cells = _ladder(
        lambda r: (_series_value(beta, lam, u, v, r[0], r[1]), r[0] * r[1]),
        tol, [(48, 40), (80, 64), (120, 96), (180, 144)])
    return IntegralCheck.make(lhs, val, "quadrature", cells, est,
                              {"formula": "series_kernel", "beta": beta,
                               "lambda": lam, "u": u, "v": v})


# ---------------------------------------------------------------------------
# Gamma_Omega and the m=2 determinant integral
# ---------------------------------------------------------------------------

def gamma_omega(alpha: float, r: int, d: float, n: int) -> float:
    """(2 pi)^((n-r)/2) * prod_{j<r} Gamma(alpha - j d/2) for a simple cone
    of rank r, dimension n = r + (d/2) r (r-1)."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    if abs(n - (r + d / 2 * r * (r - 1))) > 1e-12:
        raise ValueError(f"inconsistent (n, r, d): need n = r + (d/2) r (r-1)")
    out = (2 * math.pi) ** ((n - r) / 2)
    for j in range(r):
        arg = alpha - j * d / 2
        if arg <= 0 and abs(arg - round(arg)) < 1e-12:
            raise ValueError(f"Gamma pole at alpha - {j}d/2 = {arg}")
        out *= math.gamma(arg)
    return out


def verify_det_integral_m2(beta: float, A: Sequence[Sequence],
                           tol: float = 1e-6) -> IntegralCheck:
    """Check (det A)^(-beta) for SPD 2x2 A against the trace-form integral
    over the positive-definite cone, parametrized by (b11, b22, b12) with
    b11 b22 > b12^2 (beta > 1/2)."""
    if beta <= 0.5 + GUARD:
        raise ValueError("formula valid for beta > 1/2 (numerical guard)")
    a11, a12 = float(A[0][0]), float(A[0][1])
    a21, a22 = float(A[1][0]), float(A[1][1])
    if a12 != a21:
        raise ValueError("A must be symmetric")
    det = a11 * a22 - a12 * a12
    if a11 <= 0 or det <= 0:
        raise ValueError("A must be symmetric positive definite")
    lhs = det ** (-beta)

    def evaluate(res):
        n_out, n_jac = res
        a = 2 * beta - 1
        r1, w1 = _gj_nodes(n_out, 0.0, a, math.sqrt(TAIL_EXPONENT / a11))
        r2, w2 = _gj_nodes(n_out, 0.0, a, math.sqrt(TAIL_EXPONENT / a22))
        ju, jw = roots_jacobi(n_jac, beta - 1.5, beta - 1.5)
        raw = kernels.detm2_sum(r1, w1, r2, w2, ju, jw, a11, a12, a22)
        pref = 1.0 / (math.pi ** 0.5 * math.gamma(beta) * math.gamma(beta - 0.5))
        return pref * 4.0 * raw, n_out * n_out * n_jac

    val, est, cells = _ladder(evaluate, tol, [(32, 32), (48, 48), (72, 72), (108, 108)])
    return IntegralCheck.make(lhs, val, "quadrature", cells, est,
                              {"formula": "det_m2", "beta": beta,
                               "A": [[a11, a12], [a21, a22]]})


def e23_via_det_m2(beta: float, x: Sequence[float], tol: float = 1e-6) -> IntegralCheck:
    """E_{2,3}(x)^(-beta) through the m=2 determinant integral with
    A = [[x1+x3, x3], [x3, x2+x3]] (det A = E_{2,3}(x))."""
    x1, x2, x3 = (float(v) for v in x)
    A = [[x1 + x3, x3], [x3, x2 + x3]]
    chk = verify_det_integral_m2(beta, A, tol)
    chk.params["formula"] = "E23_via_det_m2"
    chk.params["x"] = [x1, x2, x3]
    return chk
