"""Quadratic forms: inertia-based classification of the exponents beta for
which Q^(-beta) is completely monotone on a positivity cone, Lorentz-cone
membership, and the closed-form (lambda, mu) duality for A = lambda*E - mu*I."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .exactalg import ExactMatrix, Inertia, inertia
from .polyseries import MultiPoly


@dataclass(frozen=True)
class BetaSet:
    """Closed additive subset of [0, infinity) in one of the shapes that
    occur for inverse powers of quadratic and determinantal forms."""

    variant: str                     # all_nonneg | zero_union_ray | zero_only | discrete_union_ray
    threshold: Optional[Fraction] = None
    step: Optional[Fraction] = None  # discrete part {0, step, 2*step, ...}
    count: Optional[int] = None      # number of discrete points including 0

    @staticmethod
    def all_nonneg() -> "BetaSet":
        return BetaSet("all_nonneg")

    @staticmethod
    def zero_union_ray(threshold) -> "BetaSet":
        t = Fraction(threshold)
        if t < 0:
            raise ValueError("threshold must be >= 0")
        return BetaSet("zero_union_ray", threshold=t)

    @staticmethod
    def zero_only() -> "BetaSet":
        return BetaSet("zero_only")

    @staticmethod
    def discrete_union_ray(step, count: int, threshold) -> "BetaSet":
        return BetaSet("discrete_union_ray", threshold=Fraction(threshold),
                       step=Fraction(step), count=count)

    @staticmethod
    def gindikin(r: int, d) -> "BetaSet":
        """{0, d/2, ..., (r-1)d/2} union [(r-1)d/2, oo)."""
        d = Fraction(d)
        return BetaSet.discrete_union_ray(d / 2, r, (r - 1) * d / 2)

    def contains(self, beta) -> bool:
        b = Fraction(beta)
        if b < 0:
            return False
        if self.variant == "all_nonneg":
            return True
        if self.variant == "zero_only":
            return b == 0
        if self.variant == "zero_union_ray":
            return b == 0 or b >= self.threshold
        if self.variant == "discrete_union_ray":
            if b >= self.threshold:
                return True
            if self.step and b % self.step == 0 and b / self.step < self.count:
                return True
            return b == 0
        raise ValueError(self.variant)

    def __str__(self) -> str:
        if self.variant == "all_nonneg":
            return "[0, oo)"
        if self.variant == "zero_only":
            return "{0}"
        if self.variant == "zero_union_ray":
            return f"{{0}} U [{self.threshold}, oo)"
        pts = ", ".join(str(self.step * k) for k in range(min(self.count, 4)))
        more = ", ..." if self.count > 4 else ""
        return f"{{{pts}{more}}} U [{self.threshold}, oo)"


class QuadForm:
    """Quadratic form Q(x) = x^T A x for a symmetric rational matrix A."""

    def __init__(self, A: ExactMatrix):
        if not A.is_symmetric():
            raise ValueError("matrix must be symmetric and rational")
        self.A = A
        self.n = A.rows
        self.inertia: Inertia = inertia(A)
        self._factor = None  # cached (W, k): y = W x diagonalizes, k = positive index

    @staticmethod
    def from_poly(P: MultiPoly) -> "QuadForm":
        """Symmetric matrix of a homogeneous degree-2 polynomial."""
        if not P.is_homogeneous(2):
            raise ValueError("polynomial is not a quadratic form")
        n = P.nvars
        A = [[Fraction(0)] * n for _ in range(n)]
        for e, c in P.terms.items():
            idx = [i for i, k in enumerate(e) if k]
            if len(idx) == 1:
                A[idx[0]][idx[0]] = c
            else:
                i, j = idx
                A[i][j] = c / 2
                A[j][i] = c / 2
        return QuadForm(ExactMatrix(A))

    def value(self, x: Sequence) -> Fraction:
        xs = [Fraction(v) for v in x]
        acc = Fraction(0)
        for i in range(self.n):
            for j in range(self.n):
                acc += xs[i] * self.A[i, j] * xs[j]
        return acc

    def bilinear(self, x: Sequence, y: Sequence) -> Fraction:
        xs = [Fraction(v) for v in x]
        ys = [Fraction(v) for v in y]
        acc = Fraction(0)
        for i in range(self.n):
            for j in range(self.n):
                acc += xs[i] * self.A[i, j] * ys[j]
        return acc

    # -- exact congruence factorization -------------------------------
    def _diagonalize(self) -> Tuple[List[List[Fraction]], List[Fraction]]:
        """Exact T with T A T^T = diag(d); returns (T, d)."""
        n = self.n
        a = [row[:] for row in self.A.entries]
        T = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]

        def add_row_col(i, j, f=Fraction(1)):
            for t in range(n):
                a[i][t] += f * a[j][t]
            for t in range(n):
                a[t][i] += f * a[t][j]
            for t in range(n):
                T[i][t] += f * T[j][t]

        def swap(i, j):
            a[i], a[j] = a[j], a[i]
            for t in range(n):
                a[t][i], a[t][j] = a[t][j], a[t][i]
            T[i], T[j] = T[j], T[i]

        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][i]), None)
            if piv is None:
                off = next(((i, j) for i in range(k, n) for j in range(i + 1, n)
                            if a[i][j]), None)
                if off is None:
                    break
                add_row_col(off[0], off[1])
                piv = off[0]
            if piv != k:
                swap(k, piv)
            p = a[k][k]
            for i in range(k + 1, n):
                if a[i][k]:
                    add_row_col(i, k, -a[i][k] / p)
        d = [a[i][i] for i in range(n)]
        return T, d

    def _membership_data(self):
        if self._factor is None:
            T, d = self._diagonalize()
            k = next((i for i, v in enumerate(d) if v > 0), None)
            self._factor = (T, d, k)
        return self._factor

    def lorentz_membership(self, x: Sequence) -> str:
        """Classify x for a form of inertia (1, n-1, 0): 'inside_C',
        'inside_negC', or 'outside'.

        The canonical component C is fixed by the deterministic exact
        factorization A = T^{-1} D T^{-T}: C contains the vector mapped to
        the positive coordinate axis, and x is in C iff Q(x) > 0 and
        (T^{-T} x)_k > 0.  Stable across runs.
        """
        if tuple(self.inertia) != (1, self.n - 1, 0):
            raise ValueError(f"inertia {tuple(self.inertia)} is not (1, n-1, 0)")
        q = self.value(x)
        if q <= 0:
            return "outside"
        T, d, k = self._membership_data()
        # u = (T^{-T} x)_k, but A x = T^{-1} D T^{-T} x so u = (T A x)_k / d_k
        xs = [Fraction(v) for v in x]
        Ax = [sum(self.A[i, j] * xs[j] for j in range(self.n)) for i in range(self.n)]
        u = sum(T[k][j] * Ax[j] for j in range(self.n)) / d[k]
        return "inside_C" if u > 0 else "inside_negC"

    def membership_signs_float(self, Y: np.ndarray) -> np.ndarray:
        """Vectorized float version of lorentz_membership for sample rows Y.

        Returns +1 (inside_C), -1 (inside_negC), 0 (outside).
        """
        if tuple(self.inertia) != (1, self.n - 1, 0):
            raise ValueError("inertia is not (1, n-1, 0)")
        T, d, k = self._membership_data()
        Af = np.array([[float(v) for v in row] for row in self.A.entries])
        Tk = np.array([float(v) for v in T[k]]) / float(d[k])
        q = np.einsum("ij,jk,ik->i", Y, Af, Y)
        u = Y @ Af @ Tk
        out = np.zeros(len(Y), dtype=np.int8)
        inside = q > 0
        out[inside & (u > 0)] = 1
        out[inside & (u < 0)] = -1
        return out


def quad_classify(Q: QuadForm) -> BetaSet:
    """Beta set for which Q^(-beta) is completely monotone on a positivity
    cone, by inertia: (1,0,*) -> all beta >= 0; (1, n_-,*) with n_- >= 1 ->
    {0} U [(n_- - 1)/2, oo); n_+ > 1 -> {0}."""
    npl, nmi, _ = Q.inertia
    if npl == 0:
        raise ValueError("form is nowhere positive (n_+ = 0)")
    if npl == 1 and nmi == 0:
        return BetaSet.all_nonneg()
    if npl == 1:
        return BetaSet.zero_union_ray(Fraction(nmi - 1, 2))
    return BetaSet.zero_only()


def lambda_mu_dual(lam, mu, n: int) -> Tuple[Fraction, Fraction]:
    """(lambda', mu') with (lambda*E_n - mu*I_n)^{-1} = lambda'*E_n - mu'*I_n."""
    lam, mu = Fraction(lam), Fraction(mu)
    if mu <= 0 or lam <= mu / n:
        raise ValueError("need mu > 0 and lambda > mu/n")
    return lam / (mu * (n * lam - mu)), 1 / mu


def e2n_quadform(n: int) -> QuadForm:
    """The form with x^T A x = E_{2,n}(x): zero diagonal, 1/2 off-diagonal."""
    A = ExactMatrix([[Fraction(0) if i == j else Fraction(1, 2) for j in range(n)]
                     for i in range(n)])
    return QuadForm(A)
