"""Exact scalar and linear algebra.

Scalars are big rationals (``fractions.Fraction``), elements of the
cyclotomic field Q(zeta6), or float quaternions.  Matrices over the two
exact fields support fraction-free determinants, rank, and inertia of
symmetric rational matrices via congruence diagonalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

# Exact rational scalar used throughout the package.  Fraction is always
# reduced to lowest terms with a positive denominator, so it satisfies the
# Rat invariants out of the box.
Rat = Fraction


def as_rat(x) -> Fraction:
    """Coerce ints/strings/Fractions to an exact rational; reject floats."""
    if isinstance(x, float):
        raise TypeError("float is not exact; pass a Fraction or a 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Cyc6:
    """Element a + b*zeta6 of Q(zeta6), zeta6 = exp(i*pi/3).

    Reduction rule: zeta6**2 = zeta6 - 1.
    """

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @staticmethod
    def zeta() -> "Cyc6":
        return Cyc6(Fraction(0), Fraction(1))

    @staticmethod
    def omega() -> "Cyc6":
        # primitive cube root of unity: zeta6**2 = zeta6 - 1
        return Cyc6(Fraction(-1), Fraction(1))

    @staticmethod
    def from_rat(x) -> "Cyc6":
        return Cyc6(Fraction(x), Fraction(0))

    def __add__(self, other: "Cyc6") -> "Cyc6":
        other = _cyc(other)
        return Cyc6(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "Cyc6":
        return Cyc6(-self.a, -self.b)

    def __sub__(self, other: "Cyc6") -> "Cyc6":
        return self + (-_cyc(other))

    def __rsub__(self, other) -> "Cyc6":
        return _cyc(other) + (-self)

    def __mul__(self, other: "Cyc6") -> "Cyc6":
        other = _cyc(other)
        # (a1 + b1 z)(a2 + b2 z) with z^2 = z - 1
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return Cyc6(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 + b1 * b2)

    __rmul__ = __mul__

    def __truediv__(self, other: "Cyc6") -> "Cyc6":
        other = _cyc(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(zeta6)")
        num = self * other.conjugate()
        return Cyc6(num.a / n, num.b / n)

    def conjugate(self) -> "Cyc6":
        # conj(zeta6) = 1 - zeta6... no: conj(a + b z) = (a+b) - b z
        return Cyc6(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        """z * conj(z), a nonnegative rational."""
        z = self * self.conjugate()
        assert z.b == 0
        return z.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        z6 = complex(0.5, math.sqrt(3) / 2)
        return float(self.a) + float(self.b) * z6

    def __repr__(self) -> str:
        return f"Cyc6({self.a}, {self.b})"


def _cyc(x) -> Cyc6:
    if isinstance(x, Cyc6):
        return x
    return Cyc6.from_rat(x)


def cyc6_norm(z: Cyc6) -> Fraction:
    """Squared modulus of z in Q(zeta6), exact."""
    return _cyc(z).norm()


@dataclass(frozen=True)
class QuatF:
    """Float quaternion w + x i + y j + z k."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def conjugate(self) -> "QuatF":
        return QuatF(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __add__(self, other: "QuatF") -> "QuatF":
        return QuatF(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __mul__(self, other) -> "QuatF":
        if isinstance(other, (int, float)):
            return QuatF(self.w * other, self.x * other, self.y * other, self.z * other)
        a, b, c, d = self.w, self.x, self.y, self.z
        e, f, g, h = other.w, other.x, other.y, other.z
        return QuatF(
            a * e - b * f - c * g - d * h,
            a * f + b * e + c * h - d * g,
            a * g - b * h + c * e + d * f,
            a * h + b * g - c * f + d * e,
        )

    __rmul__ = __mul__

    def re(self) -> float:
        return self.w


def moore_det2(a: float, b: float, q: QuatF) -> float:
    """2x2 quaternionic hermitian determinant det [[a, q], [conj(q), b]] = a*b - |q|^2."""
    return a * b - q.norm2()


class ExactMatrix:
    """Rectangular matrix with entries all Fraction or all Cyc6."""

    def __init__(self, entries: Sequence[Sequence[Union[Fraction, Cyc6, int]]]):
        rows = [list(r) for r in entries]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        has_cyc = any(isinstance(e, Cyc6) for r in rows for e in r)
        if has_cyc:
            self.entries = [[_cyc(e) for e in r] for r in rows]
            self.field = "Qzeta6"
        else:
            self.entries = [[Fraction(e) for e in r] for r in rows]
            self.field = "Q"
        self.rows = len(rows)
        self.cols = ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def column(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def submatrix_cols(self, cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for j in cols] for i in range(self.rows)])

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self.entries[i][j] for i in range(self.rows)]
                            for j in range(self.cols)])

    def conjugate_transpose(self) -> "ExactMatrix":
        if self.field == "Qzeta6":
            return ExactMatrix([[self.entries[i][j].conjugate() for i in range(self.rows)]
                                for j in range(self.cols)])
        return self.transpose()

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        zero = Fraction(0) if self.field == "Q" and other.field == "Q" else Cyc6.from_rat(0)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def scale_columns(self, xs: Sequence) -> "ExactMatrix":
        if len(xs) != self.cols:
            raise ValueError("dimension mismatch")
        return ExactMatrix([[self.entries[i][j] * xs[j] for j in range(self.cols)]
                            for i in range(self.rows)])

    def is_symmetric(self) -> bool:
        if self.rows != self.cols or self.field != "Q":
            return False
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(self.rows) for j in range(i))

    def rank(self) -> int:
        """Rank by exact Gaussian elimination."""
        m = [row[:] for row in self.entries]
        nr, nc = self.rows, self.cols
        r = 0
        for c in range(nc):
            piv = next((i for i in range(r, nr) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][c]
            for i in range(r + 1, nr):
                if m[i][c]:
                    f = m[i][c] / inv
                    m[i] = [mi - f * mr for mi, mr in zip(m[i], m[r])]
            r += 1
            if r == nr:
                break
        return r

    def __repr__(self) -> str:
        return f"ExactMatrix({self.entries!r})"


def det_exact(M: ExactMatrix):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Works over Q and Q(zeta6); every interior division is exact.
    """
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    one = Fraction(1) if M.field == "Q" else Cyc6.from_rat(1)
    zero = Fraction(0) if M.field == "Q" else Cyc6.from_rat(0)
    a = [row[:] for row in M.entries]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return zero
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num / prev
            a[i][k] = zero
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    def __iter__(self):
        return iter((self.n_plus, self.n_minus, self.n_zero))


def inertia(S: ExactMatrix) -> Inertia:
    """Inertia of a symmetric rational matrix, exact.

    Symmetric Gaussian elimination with symmetric pivoting; a zero diagonal
    block with a nonzero off-diagonal entry is handled by the congruence
    row/col i += row/col j, which puts 2*S[i][j] != 0 on the diagonal.
    """
    if S.rows != S.cols:
        raise ValueError("inertia of a non-square matrix")
    if S.field != "Q":
        raise ValueError("inertia requires a rational matrix")
    if not S.is_symmetric():
        raise ValueError("inertia requires a symmetric matrix")
    n = S.rows
    a = [row[:] for row in S.entries]
    np_, nm, nz = 0, 0, 0
    for k in range(n):
        # choose a nonzero diagonal pivot from the trailing block
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                nz += n - k
                break
            i, j = off
            # congruence: row i += row j, col i += col j
            for t in range(k, n):
                a[i][t] = a[i][t] + a[j][t]
            for t in range(k, n):
                a[t][i] = a[t][i] + a[t][j]
            piv = i
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for t in range(n):
                a[t][k], a[t][piv] = a[t][piv], a[t][k]
        p = a[k][k]
        if p > 0:
            np_ += 1
        else:
            nm += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
            a[i][k] = Fraction(0)
    return Inertia(np_, nm, nz)


def identity_matrix(n: int, field: str = "Q") -> ExactMatrix:
    if field == "Q":
        return ExactMatrix([[Fraction(1) if i == j else Fraction(0) for j in range(n)]
                            for i in range(n)])
    return ExactMatrix([[Cyc6.from_rat(1 if i == j else 0) for j in range(n)]
                        for i in range(n)])
