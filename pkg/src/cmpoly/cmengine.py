"""Falsification and evidence engine for complete monotonicity of P^(-beta).

cm_scan expands P(c - y)^(-beta) over a grid of positive shifts c and looks
for a negative Taylor coefficient: an exact witness disproves complete
monotonicity, while "no negative up to order N over this grid" is evidence
only and is always reported as such.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .polyseries import (MultiPoly, NegPowExpander, ShiftVector,
                         shift_substitute)

HONESTY_NOTE = ("nonnegative up to the stated order over the scanned grid only; "
                "this is evidence, not a proof of complete monotonicity")


@dataclass
class CmReport:
    verdict: str                     # nonnegative_up_to | negative_found | inconclusive
    beta: Fraction
    N: int
    scanned_c: List[ShiftVector]
    grid_index: Optional[int] = None
    c: Optional[ShiftVector] = None
    exponent: Optional[Tuple[int, ...]] = None
    coefficient: Optional[Fraction] = None
    order: Optional[int] = None
    note: str = HONESTY_NOTE
    seed: Optional[int] = None

    @property
    def found_negative(self) -> bool:
        return self.verdict == "negative_found"


@dataclass
class ThresholdEstimate:
    beta_lo: Fraction
    beta_hi: Fraction
    N: int
    grid_desc: str
    probes: List[Tuple[Fraction, str, Optional[int]]] = field(default_factory=list)
    tag: Optional[str] = None
    note: str = ("negative witness exists at beta_lo; none found at beta_hi up to "
                 "order N on the scanned grid -- the upper endpoint is evidence, "
                 "not proof")


def default_c_grid(nvars: int, seed: int = 0) -> List[ShiftVector]:
    """All-ones, the n unit perturbations (1,..,2,..,1), and 4 seeded random
    rational points in [1/2, 3] with denominator <= 8."""
    grid = [ShiftVector([Fraction(1)] * nvars)]
    for i in range(nvars):
        c = [Fraction(1)] * nvars
        c[i] = Fraction(2)
        grid.append(ShiftVector(c))
    rng = random.Random(seed)
    for _ in range(4):
        vals = []
        for _ in range(nvars):
            q = rng.randint(1, 8)
            p = rng.randint(max(1, (q + 1) // 2), 3 * q)
            vals.append(Fraction(p, q))
        grid.append(ShiftVector(vals))
    return grid


def cm_scan(P: MultiPoly, beta, c_grid: Optional[Sequence[ShiftVector]] = None,
            N: int = 10, early_exit: bool = True, seed: int = 0,
            deadline_s: Optional[float] = None) -> CmReport:
    """Scan P(c - y)^(-beta) for negative Taylor coefficients up to total
    degree N, over the given grid (default grid if None).

    Deterministic scan order: grid order, then total degree, then lex order
    of the exponent vector.  Returns the first witness found, or
    nonnegative_up_to(N).  Raises if P is not strictly positive at some c.
    """
    beta = Fraction(beta)
    if beta <= 0:
        raise ValueError("beta must be > 0")
    if c_grid is None:
        c_grid = default_c_grid(P.nvars, seed)
    for c in c_grid:
        if P.evaluate(list(c)) <= 0:
            raise ValueError(f"P(c) <= 0 at grid point {list(c)}")
    t0 = time.monotonic()
    for gi, c in enumerate(c_grid):
        Q = shift_substitute(P, ShiftVector(list(c)))
        ex = NegPowExpander(Q, beta)
        for d, level in ex.levels(N):
            if deadline_s is not None and time.monotonic() - t0 > deadline_s:
                return CmReport("inconclusive", beta, N, list(c_grid),
                                note=f"deadline exceeded at grid point {gi}, order {d}")
            negs = [(e, H) for e, H in level.items() if H < 0]
            if negs:
                e, H = min(negs, key=lambda t: ex.orbit_lex_min(t[0]))
                witness_e = ex.orbit_lex_min(e)
                coef = ex.coefficient_value(e, H)
                return CmReport("negative_found", beta, N, list(c_grid),
                                grid_index=gi, c=c, exponent=witness_e,
                                coefficient=coef, order=d,
                                note="exact negative rational coefficient",
                                seed=seed)
            # early_exit=False only affects whether later grid points keep
            # being scanned after a witness; within one grid point the first
            # witness ends the expansion either way (deterministic order).
    return CmReport("nonnegative_up_to", beta, N, list(c_grid), seed=seed)


def beta_bisect(P: MultiPoly, beta_range: Tuple, N: int,
                c_grid: Optional[Sequence[ShiftVector]] = None,
                tol=Fraction(1, 16), seed: int = 0,
                tag: Optional[str] = None) -> ThresholdEstimate:
    """Bisect on the predicate "cm_scan finds a negative coefficient".

    Both endpoints are verified first: the low end must produce a witness
    and the high end must not, else the inputs are rejected.
    """
    lo, hi = Fraction(beta_range[0]), Fraction(beta_range[1])
    tol = Fraction(tol)
    if not lo < hi:
        raise ValueError("empty beta range")
    if c_grid is None:
        c_grid = default_c_grid(P.nvars, seed)
    probes: List[Tuple[Fraction, str, Optional[int]]] = []

    def negative(b: Fraction) -> bool:
        rep = cm_scan(P, b, c_grid, N, seed=seed)
        probes.append((b, rep.verdict, rep.order))
        return rep.found_negative

    if not negative(lo):
        raise ValueError(f"no negative witness at the low endpoint beta={lo} (order {N})")
    if negative(hi):
        raise ValueError(f"negative witness at the high endpoint beta={hi}")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if negative(mid):
            lo = mid
        else:
            hi = mid
    desc = f"{len(c_grid)} shift vectors" + (" (all-ones only)" if len(c_grid) == 1 else "")
    return ThresholdEstimate(lo, hi, N, desc, probes, tag=tag)


# ---------------------------------------------------------------------------
# C-Rayleigh check
# ---------------------------------------------------------------------------

@dataclass
class CRayleighReport:
    beta: Fraction
    holds: bool
    worst_margin: Fraction            # min over points and pairs of RHS - LHS
    worst_point: Optional[List[Fraction]] = None
    worst_pair: Optional[Tuple[int, int]] = None
    violations: List[Tuple[List[Fraction], Tuple[int, int], Fraction]] = field(default_factory=list)


def c_rayleigh_check(P: MultiPoly, beta, sample_points: Sequence[Sequence]) -> CRayleighReport:
    """Exact check of P * d2P/dxi dxj <= (beta+1) * dP/dxi * dP/dxj
    for all i != j at each strictly positive sample point."""
    beta = Fraction(beta)
    if not P.is_multiaffine():
        raise ValueError("C-Rayleigh check requires a multiaffine polynomial")
    parts = [P.partial_derivative(i) for i in range(P.nvars)]
    mixed = {}
    worst = None
    report = CRayleighReport(beta, True, Fraction(0))
    for pt in sample_points:
        pt = [Fraction(v) for v in pt]
        if any(v <= 0 for v in pt):
            raise ValueError("sample points must be strictly positive")
        pv = P.evaluate(pt)
        dv = [d.evaluate(pt) for d in parts]
        for i in range(P.nvars):
            for j in range(P.nvars):
                if i == j:
                    continue
                if (i, j) not in mixed:
                    mixed[(i, j)] = parts[i].partial_derivative(j)
                lhs = pv * mixed[(i, j)].evaluate(pt)
                rhs = (beta + 1) * dv[i] * dv[j]
                margin = rhs - lhs
                if worst is None or margin < worst:
                    worst = margin
                    report.worst_point = pt
                    report.worst_pair = (i, j)
                if margin < 0:
                    report.violations.append((pt, (i, j), margin))
    report.worst_margin = worst if worst is not None else Fraction(0)
    report.holds = not report.violations
    return report


# ---------------------------------------------------------------------------
# Semigroup positive-definiteness sampling
# ---------------------------------------------------------------------------

@dataclass
class PsdReport:
    m: int
    beta: float
    k: int
    seed: int
    restarts: int
    min_eigenvalue: float
    argmin_restart: int
    note: str = "matrix f(A_i + A_j) with f(A) = det(A)^(-beta); float eigensolver"


def _random_spd_positive(rng: np.random.Generator, m: int, k: int) -> List[np.ndarray]:
    """k random SPD matrices with strictly positive entries: Wishart-like
    G G^T / m, then shifted toward the all-ones matrix until entrywise > 0."""
    mats = []
    for _ in range(k):
        G = rng.normal(size=(m, m))
        W = G @ G.T / m
        lo = W.min()
        s = max(0.0, -lo) + 0.05 * float(rng.uniform(0.1, 1.0))
        A = W + s * np.ones((m, m))
        # scale diversity helps expose indefiniteness off the PSD beta set
        A *= float(rng.uniform(0.25, 4.0))
        mats.append(A)
    return mats


def semigroup_psd_test(m: int, beta: float, k: int, seed: int = 0,
                       restarts: int = 1) -> PsdReport:
    """Minimum eigenvalue of the k x k matrix [det(A_i + A_j)^(-beta)] over
    seeded random draws of SPD, entrywise-positive A_i ('semigroup sense'
    positive-definiteness sampling)."""
    if m < 1 or k < 2:
        raise ValueError("need m >= 1 and k >= 2")
    best = np.inf
    best_r = -1
    for r in range(restarts):
        rng = np.random.default_rng((seed, r))
        mats = _random_spd_positive(rng, m, k)
        F = np.empty((k, k))
        for i in range(k):
            for j in range(i, k):
                d = float(np.linalg.det(mats[i] + mats[j]))
                F[i, j] = F[j, i] = d ** (-beta)
        lam = float(np.linalg.eigvalsh(F)[0])
        if lam < best:
            best = lam
            best_r = r
    return PsdReport(m, beta, k, seed, restarts, best, best_r)


# ---------------------------------------------------------------------------
# Half-plane property falsifier
# ---------------------------------------------------------------------------

@dataclass
class HppWitness:
    z: List[complex]
    abs_value: float
    min_re: float


def hpp_falsify(P, attempts: int = 60, seed: int = 0,
                abs_tol: float = 1e-10, re_margin: float = 1e-6) -> Optional[HppWitness]:
    """Search for a zero of P in the open product of right half-planes.

    Accepts a MultiPoly or a {exponent tuple: complex coefficient} mapping.
    Returns a witness with |P(z)| < abs_tol and min Re z_i > re_margin, or
    None.  A None result is evidence for the half-plane property, not proof.
    """
    from scipy.optimize import minimize

    if isinstance(P, MultiPoly):
        terms = {e: complex(c) for e, c in P.terms.items()}
        nvars = P.nvars
    else:
        terms = {tuple(e): complex(c) for e, c in P.items()}
        nvars = len(next(iter(terms)))

    def pval(z: np.ndarray) -> complex:
        acc = 0j
        for e, c in terms.items():
            v = c
            for zi, ei in zip(z, e):
                if ei:
                    v *= zi ** ei
            acc += v
        return acc

    def objective(u: np.ndarray) -> float:
        a = np.exp(u[:nvars])          # Re z > 0 by construction
        b = u[nvars:]
        z = a + 1j * b
        return abs(pval(z)) ** 2

    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        u0 = np.concatenate([rng.normal(0.0, 1.0, nvars),
                             rng.normal(0.0, 2.0, nvars)])
        res = minimize(objective, u0, method="Nelder-Mead",
                       options={"maxiter": 4000, "xatol": 1e-14, "fatol": 1e-24})
        a = np.exp(res.x[:nvars])
        z = a + 1j * res.x[nvars:]
        val = abs(pval(z))
        if val < abs_tol and a.min() > re_margin:
            return HppWitness([complex(v) for v in z], float(val), float(a.min()))
    return None
