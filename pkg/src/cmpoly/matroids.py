"""Represented matroids: basis generating polynomials via exact Cauchy-Binet,
unimodularity checks, uniform matroids, and the named representations used in
the worked examples (U_{2,4}, AG(2,3), the quaternionic E_{2,6} matrix, and
reduced incidence matrices of complete graphs)."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .exactalg import Cyc6, ExactMatrix, QuatF, cyc6_norm, det_exact
from .graphs import complete_graph, incidence_matrix_reduced
from .polyseries import MultiPoly

MAX_SUBSETS = math.comb(12, 6)  # guard for exact column-subset enumeration


class RepMatroid:
    """Matroid represented by an m x n matrix of full row rank."""

    def __init__(self, B: ExactMatrix, ground: Optional[Sequence[str]] = None,
                 check_rank: bool = True):
        self.B = B
        self.ground = list(ground) if ground is not None else [f"g{i+1}" for i in range(B.cols)]
        if len(self.ground) != B.cols:
            raise ValueError("ground-set size != column count")
        if check_rank and B.rank() != B.rows:
            raise ValueError("representation matrix is rank-deficient")

    @property
    def rank(self) -> int:
        return self.B.rows

    @property
    def size(self) -> int:
        return self.B.cols


class QuatMatrix:
    """Dense quaternion matrix (float entries)."""

    def __init__(self, entries: Sequence[Sequence[QuatF]]):
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0])
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged rows")

    def column(self, j: int) -> List[QuatF]:
        return [self.entries[i][j] for i in range(self.rows)]


def _det_squared_modulus(M: ExactMatrix) -> Fraction:
    d = det_exact(M)
    if isinstance(d, Cyc6):
        return cyc6_norm(d)
    return d * d


def basis_poly(M: RepMatroid) -> MultiPoly:
    """Sum over m-column subsets S of |det B_S|^2 x^S (exact Cauchy-Binet)."""
    B = M.B
    m, n = B.rows, B.cols
    if math.comb(n, m) > MAX_SUBSETS:
        raise ValueError("subset enumeration guard exceeded")
    zero_cols = {j for j in range(n) if all(not B[i, j] for i in range(m))}
    terms = {}
    for S in combinations(range(n), m):
        if any(j in zero_cols for j in S):
            continue
        w = _det_squared_modulus(B.submatrix_cols(S))
        if w:
            e = [0] * n
            for j in S:
                e[j] = 1
            terms[tuple(e)] = w
    return MultiPoly(n, terms)


def basis_poly_quat(B: QuatMatrix, tol: float = 1e-9) -> MultiPoly:
    """Quaternionic Cauchy-Binet for m = 2 via the 2x2 Moore determinant.

    Each coefficient det[B_S (B_S)*] = a*b - |q|^2 is rounded to the nearest
    integer when within tol; a coefficient farther than 1e-6 from an integer
    signals a wrong matrix and raises.
    """
    if B.rows != 2:
        raise ValueError("only the 2x2 Moore determinant is supported")
    n = B.cols
    terms = {}
    for S in combinations(range(n), 2):
        # M = B_S (B_S)^*: a, b real; q = sum_j B[0,j] conj(B[1,j])
        a = sum(B.entries[0][j].norm2() for j in S)
        b = sum(B.entries[1][j].norm2() for j in S)
        q = QuatF()
        for j in S:
            q = q + B.entries[0][j] * B.entries[1][j].conjugate()
        d = a * b - q.norm2()
        r = round(d)
        if abs(d - r) > 1e-6:
            raise ValueError(f"coefficient {d} too far from an integer")
        val = Fraction(r) if abs(d - r) <= tol else Fraction(d).limit_denominator(10**12)
        if val:
            e = [0] * n
            for j in S:
                e[j] = 1
            terms[tuple(e)] = val
    return MultiPoly(n, terms)


def is_unimodular(M: RepMatroid) -> bool:
    """True iff every maximal minor has squared modulus 0 or 1."""
    B = M.B
    m, n = B.rows, B.cols
    if math.comb(n, m) > MAX_SUBSETS:
        raise ValueError("subset enumeration guard exceeded")
    for S in combinations(range(n), m):
        w = _det_squared_modulus(B.submatrix_cols(S))
        if w not in (0, 1):
            return False
    return True


def elementary_symmetric(r: int, n: int) -> MultiPoly:
    """E_{r,n}: sum of all squarefree degree-r monomials (E_{0,n} = 1)."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    terms = {}
    for S in combinations(range(n), r):
        e = [0] * n
        for j in S:
            e[j] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly(n, terms)


# ---------------------------------------------------------------------------
# Named representations
# ---------------------------------------------------------------------------

def _u24_matrix() -> ExactMatrix:
    z = Cyc6.zeta()
    one = Cyc6.from_rat(1)
    zero = Cyc6.from_rat(0)
    return ExactMatrix([[one, zero, one, one],
                        [zero, one, one, z]])


def _ag23_matrix() -> ExactMatrix:
    w = Cyc6.omega()          # zeta6^2 = zeta6 - 1
    one = Cyc6.from_rat(1)
    zero = Cyc6.from_rat(0)
    wp1 = one + w             # 1 + omega = zeta6
    return ExactMatrix([
        [one, zero, zero, one, zero, one, one, one, one],
        [zero, one, zero, one, one, zero, wp1, one, wp1],
        [zero, zero, one, zero, one, w, w, wp1, wp1],
    ])


def e26_quaternions() -> Tuple[QuatF, QuatF, QuatF, QuatF]:
    """q3..q6 with |q_i| = 1 and Re(q_i conj(q_j)) = 1/2 for i != j."""
    q3 = QuatF(1.0, 0.0, 0.0, 0.0)
    q4 = QuatF(0.5, -math.sqrt(3) / 2, 0.0, 0.0)          # exp(-i pi/3)
    q5 = QuatF(0.5, -math.sqrt(3) / 6, -math.sqrt(6) / 3, 0.0)
    q6 = QuatF(0.5, -math.sqrt(3) / 6, -math.sqrt(6) / 12, -math.sqrt(10) / 4)
    return q3, q4, q5, q6


def _e26_matrix() -> QuatMatrix:
    q3, q4, q5, q6 = e26_quaternions()
    one = QuatF(1.0)
    zero = QuatF(0.0)
    # columns b_i with b_i b_i^* = [[1, q_i], [conj(q_i), 1]] for i >= 3
    return QuatMatrix([
        [one, zero, one, one, one, one],
        [zero, one, q3.conjugate(), q4.conjugate(), q5.conjugate(), q6.conjugate()],
    ])


def builtin(name: str, p: Optional[int] = None):
    """Named matrices: K_p(p), U24, AG23 (exact) and E26_QUAT (quaternionic)."""
    if name == "K_p":
        if p is None or p < 2:
            raise ValueError("K_p needs p >= 2")
        G = complete_graph(p)
        B = incidence_matrix_reduced(G)
        return RepMatroid(B, ground=G.edge_ids())
    if name == "U24":
        return RepMatroid(_u24_matrix(), ground=[f"g{i+1}" for i in range(4)])
    if name == "AG23":
        return RepMatroid(_ag23_matrix(), ground=[f"g{i+1}" for i in range(9)])
    if name == "E26_QUAT":
        return _e26_matrix()
    raise ValueError(f"unknown builtin {name!r}")
