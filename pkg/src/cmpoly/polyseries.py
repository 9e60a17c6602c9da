"""Sparse multivariate polynomials over Q and truncated series of Q(y)^(-beta).

The series engine expands P(c - y)^(-beta) by total degree.  Internally the
coefficients are carried as exact big integers: after clearing denominators
of Q = P(c - y) (a positive integer multiple changes the result only by a
positive prefactor, which is kept symbolic), the normalized series
h = (Q/q0)^(-beta) with h(0) = 1 satisfies, for every coordinate j with
delta_j >= 1,

    q0 * delta_j * h[delta] =
        - sum_{0 != gamma <= delta} Q[gamma] * ((delta_j - gamma_j) + beta*gamma_j)
          * h[delta - gamma]

and the rescaled table H[delta] = h[delta] * (q*q0)^{|delta|} * prod_i delta_i!
(beta = p/q) is integer valued.  Signs of coefficients are signs of H.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _iproduct
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]


class MultiPoly:
    """Sparse polynomial: map from exponent tuples to nonzero Fractions."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exponent, Fraction]] = None):
        self.nvars = nvars
        self.terms: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(e) != nvars:
                        raise ValueError("exponent length != nvars")
                    self.terms[tuple(e)] = c

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        return MultiPoly(nvars, {(0,) * nvars: Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError("variable index out of range")
        e = [0] * nvars
        e[i] = 1
        return MultiPoly(nvars, {tuple(e): Fraction(1)})

    # -- ring operations ----------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def partial_derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError("derivative index out of range")
        out: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return MultiPoly(self.nvars, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- queries --------------------------------------------------------
    def evaluate(self, point: Sequence) -> Fraction:
        pt = [Fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError("point length != nvars")
        acc = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for xi, ei in zip(pt, e):
                if ei:
                    v *= xi ** ei
            acc += v
        return acc

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        acc = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for xi, ei in zip(point, e):
                if ei:
                    v *= xi ** ei
            acc += v
        return acc

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_multiaffine(self) -> bool:
        return all(all(k <= 1 for k in e) for e in self.terms)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def is_symmetric(self) -> bool:
        """Invariance under every permutation of the variables."""
        groups: Dict[Exponent, List[Exponent]] = {}
        for e in self.terms:
            groups.setdefault(tuple(sorted(e, reverse=True)), []).append(e)
        for key, members in groups.items():
            c0 = self.terms[members[0]]
            if any(self.terms[m] != c0 for m in members[1:]):
                return False
            if len(members) != _n_distinct_perms(key):
                return False
        return True

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(f"x{i}^{k}" if k > 1 else f"x{i}"
                            for i, k in enumerate(e) if k)
            c = self.terms[e]
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "MultiPoly(" + " + ".join(bits) + ")"


def _n_distinct_perms(key: Exponent) -> int:
    n = len(key)
    cnt: Dict[int, int] = {}
    for k in key:
        cnt[k] = cnt.get(k, 0) + 1
    total = math.factorial(n)
    for m in cnt.values():
        total //= math.factorial(m)
    return total


def poly_arith(op: str, *args) -> MultiPoly:
    """Dispatcher form of the basic polynomial arithmetic."""
    if op == "add":
        a, b = args
        return a + b
    if op == "mul":
        a, b = args
        return a * b
    if op == "scale":
        a, c = args
        return a.scale(c)
    if op == "partial_derivative":
        a, i = args
        return a.partial_derivative(i)
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class ShiftVector:
    """Strictly positive rational shift c used in P(c - y)."""

    c: Tuple[Fraction, ...]

    def __init__(self, values: Sequence):
        vals = tuple(Fraction(v) for v in values)
        if any(v <= 0 for v in vals):
            raise ValueError("shift entries must be strictly positive")
        object.__setattr__(self, "c", vals)

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __getitem__(self, i):
        return self.c[i]


def shift_substitute(P: MultiPoly, c: ShiftVector) -> MultiPoly:
    """Return Q(y) = P(c - y), expanded exactly."""
    if len(c) != P.nvars:
        raise ValueError("shift length != nvars")
    out: Dict[Exponent, Fraction] = {}
    for alpha, coef in P.terms.items():
        # per-variable expansion of (c_i - y_i)^alpha_i
        factors = []
        for i, a in enumerate(alpha):
            if a == 0:
                factors.append([(0, Fraction(1))])
            else:
                ci = c[i]
                factors.append([(k, Fraction(math.comb(a, k)) * (ci ** (a - k))
                                 * (-1) ** k) for k in range(a + 1)])
        for combo in _iproduct(*factors):
            e = tuple(k for k, _ in combo)
            v = coef
            for _, w in combo:
                v *= w
            if v:
                s = out.get(e, Fraction(0)) + v
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
    return MultiPoly(P.nvars, out)


# ---------------------------------------------------------------------------
# Truncated series of Q^(-beta)
# ---------------------------------------------------------------------------

@dataclass
class TruncSeries:
    """Total-degree truncation of prefactor_base^prefactor_exponent * (rational series).

    The symbolic prefactor is a positive rational raised to a rational power;
    it never affects coefficient signs.
    """

    nvars: int
    max_total_degree: int
    coeffs: Dict[Exponent, Fraction] = field(default_factory=dict)
    prefactor_base: Fraction = Fraction(1)
    prefactor_exponent: Fraction = Fraction(0)

    def __post_init__(self):
        if self.prefactor_base <= 0:
            raise ValueError("prefactor base must be positive")
        self.coeffs = {tuple(e): Fraction(v) for e, v in self.coeffs.items() if v}
        for e in self.coeffs:
            if sum(e) > self.max_total_degree:
                raise ValueError("stored exponent beyond truncation order")

    def coefficient(self, e: Exponent) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    def mul_truncated(self, other: "TruncSeries") -> "TruncSeries":
        if self.nvars != other.nvars:
            raise ValueError("nvars mismatch")
        if self.prefactor_base != other.prefactor_base:
            raise ValueError("prefactor bases differ; cannot merge symbolically")
        N = min(self.max_total_degree, other.max_total_degree)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            if d1 > N:
                continue
            for e2, c2 in other.coeffs.items():
                if d1 + sum(e2) > N:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncSeries(self.nvars, N, out, self.prefactor_base,
                           self.prefactor_exponent + other.prefactor_exponent)

    def mul_poly_truncated(self, P: MultiPoly) -> "TruncSeries":
        if self.nvars != P.nvars:
            raise ValueError("nvars mismatch")
        N = self.max_total_degree
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in P.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) > N:
                    continue
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncSeries(self.nvars, N, out, self.prefactor_base,
                           self.prefactor_exponent)

    def fold_prefactor_if_integer(self) -> "TruncSeries":
        """Absorb the prefactor into the coefficients when its exponent is an integer."""
        if self.prefactor_exponent.denominator != 1:
            raise ValueError("prefactor exponent is not an integer")
        f = self.prefactor_base ** int(self.prefactor_exponent)
        return TruncSeries(self.nvars, self.max_total_degree,
                           {e: f * c for e, c in self.coeffs.items()},
                           Fraction(1), Fraction(0))


def min_coefficient(S: TruncSeries) -> Tuple[Fraction, Exponent]:
    """Minimum stored rational coefficient; ties go to the lex-smallest exponent."""
    if not S.coeffs:
        raise ValueError("empty series")
    best: Optional[Tuple[Fraction, Exponent]] = None
    for e, c in S.coeffs.items():
        if best is None or c < best[0] or (c == best[0] and e < best[1]):
            best = (c, e)
    return best


# ---------------------------------------------------------------------------
# Expansion engine
# ---------------------------------------------------------------------------

def _integer_scale(Q: MultiPoly) -> Tuple[Dict[Exponent, int], int]:
    """Clear denominators: return (integer terms of M*Q, M*q0) with q0 = Q(0) > 0."""
    q0 = Q.constant_term()
    if q0 <= 0:
        raise ValueError("constant term of Q must be strictly positive")
    M = 1
    for c in Q.terms.values():
        M = M * c.denominator // math.gcd(M, c.denominator)
    terms = {e: int(c * M) for e, c in Q.terms.items()}
    return terms, int(q0 * M)


def _as_beta(beta) -> Fraction:
    if isinstance(beta, float):
        raise TypeError("beta must be an exact rational; rationalize floats explicitly")
    return Fraction(beta)


def _iter_exponents(nvars: int, total: int) -> Iterator[Exponent]:
    """All exponent tuples of the given total degree, in lexicographic order."""
    if nvars == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _iter_exponents(nvars - 1, total - first):
            yield (first,) + rest


def _iter_partitions(total: int, parts: int, cap: int) -> Iterator[Exponent]:
    """Weakly decreasing exponent tuples (canonical orbit representatives)."""
    def rec(remaining: int, slots: int, maxpart: int):
        if slots == 1:
            if remaining <= maxpart:
                yield (remaining,)
            return
        lo = -(-remaining // slots)  # ceil: keep weakly decreasing feasible
        for first in range(min(remaining, maxpart), lo - 1, -1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest
    yield from rec(total, parts, cap)


class NegPowExpander:
    """Degree-by-degree integer expansion of Q(y)^(-beta).

    When the problem is invariant under every permutation of the variables,
    only weakly-decreasing exponent representatives are computed; coefficients
    of all other exponents follow by symmetry.
    """

    def __init__(self, Q: MultiPoly, beta, use_symmetry: Optional[bool] = None):
        beta = _as_beta(beta)
        self.nvars = Q.nvars
        self.beta = beta
        self.q0 = Q.constant_term()
        terms, q0int = _integer_scale(Q)
        self.q0int = q0int
        self.p = beta.numerator
        self.q = beta.denominator
        zero = (0,) * self.nvars
        self.qterms = []
        for gamma, coef in terms.items():
            if gamma == zero:
                continue
            pos = tuple((i, g) for i, g in enumerate(gamma) if g)
            self.qterms.append((gamma, pos, sum(gamma), coef))
        self.symmetric = Q.is_symmetric() if use_symmetry is None else use_symmetry
        base = self.q * self.q0int
        maxg = max((g for _, _, g, _ in self.qterms), default=1)
        self._scale_pow = [base ** max(k, 0) for k in range(maxg)]
        self.window = max(maxg, 1)

    def _canon(self, e: Exponent) -> Exponent:
        return tuple(sorted(e, reverse=True)) if self.symmetric else e

    def levels(self, N: int) -> Iterator[Tuple[int, Dict[Exponent, int]]]:
        """Yield (degree, {canonical exponent: H integer}) for degrees 0..N.

        Only the last `window` levels are retained internally, so streaming
        consumers run in bounded memory.
        """
        zero = (0,) * self.nvars
        levels: Dict[int, Dict[Exponent, int]] = {0: {zero: 1}}
        yield 0, levels[0]
        p, q = self.p, self.q
        for d in range(1, N + 1):
            cur: Dict[Exponent, int] = {}
            reps = (_iter_partitions(d, self.nvars, d) if self.symmetric
                    else _iter_exponents(self.nvars, d))
            for delta in reps:
                j = max(range(self.nvars), key=delta.__getitem__)
                dj = delta[j]
                acc = 0
                for gamma, pos, g, coef in self.qterms:
                    mu = list(delta)
                    ok = True
                    ff = 1
                    for i, gi in pos:
                        di = mu[i]
                        if di < gi:
                            ok = False
                            break
                        # falling factorial delta_i!/(delta_i-gamma_i)!
                        for t in range(gi):
                            ff *= di - t
                        mu[i] = di - gi
                    if not ok or ff == 0:
                        continue
                    prev = levels[d - g].get(self._canon(tuple(mu)))
                    if not prev:
                        continue
                    w = q * (dj - gamma[j]) + p * gamma[j]
                    if w:
                        acc += coef * w * self._scale_pow[g - 1] * ff * prev
                if acc:
                    hd, rem = divmod(-acc, dj)
                    assert rem == 0, "integrality of the rescaled recurrence"
                    if hd:
                        cur[delta] = hd
            levels[d] = cur
            old = d - self.window
            if old > 0:
                levels.pop(old, None)
            yield d, cur

    def coefficient_value(self, delta: Exponent, H: int) -> Fraction:
        """Exact rational series coefficient from its integer-rescaled value."""
        denom = (self.q * self.q0int) ** sum(delta)
        for k in delta:
            denom *= math.factorial(k)
        return Fraction(H, denom)

    def orbit_lex_min(self, delta: Exponent) -> Exponent:
        """Lexicographically smallest exponent in the permutation orbit."""
        return tuple(sorted(delta)) if self.symmetric else delta

    def orbit(self, delta: Exponent) -> Iterator[Exponent]:
        if not self.symmetric:
            yield delta
            return
        seen = set()
        from itertools import permutations
        for pm in permutations(delta):
            if pm not in seen:
                seen.add(pm)
                yield pm


def series_neg_pow(Q: MultiPoly, beta, N: int, method: str = "recurrence") -> TruncSeries:
    """Expand Q^(-beta) to total degree N as q0^(-beta) times an exact series.

    ``method`` selects the differential-recurrence path (default) or the
    binomial-series path; both produce identical coefficient tables.
    """
    beta = _as_beta(beta)
    if Q.constant_term() <= 0:
        raise ValueError("constant term of Q must be strictly positive")
    if method == "recurrence":
        ex = NegPowExpander(Q, beta, use_symmetry=False)
        coeffs: Dict[Exponent, Fraction] = {}
        for d, level in ex.levels(N):
            for e, H in level.items():
                coeffs[e] = ex.coefficient_value(e, H)
        return TruncSeries(Q.nvars, N, coeffs, Q.constant_term(), -beta)
    if method == "binomial":
        return _series_neg_pow_binomial(Q, beta, N)
    raise ValueError(f"unknown method {method!r}")


def _series_neg_pow_binomial(Q: MultiPoly, beta: Fraction, N: int) -> TruncSeries:
    """(1+R)^(-beta) = sum_k binom(-beta,k) R^k with R = (Q - q0)/q0, truncated."""
    q0 = Q.constant_term()
    zero = (0,) * Q.nvars
    R: Dict[Exponent, Fraction] = {e: c / q0 for e, c in Q.terms.items() if e != zero}
    coeffs: Dict[Exponent, Fraction] = {zero: Fraction(1)}
    power: Dict[Exponent, Fraction] = {zero: Fraction(1)}
    ck = Fraction(1)
    for k in range(1, N + 1):
        ck *= -(beta + k - 1) / k  # binom(-beta, k) ratio
        nxt: Dict[Exponent, Fraction] = {}
        for e1, c1 in power.items():
            d1 = sum(e1)
            for e2, c2 in R.items():
                if d1 + sum(e2) > N:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = nxt.get(e, Fraction(0)) + c1 * c2
                if s:
                    nxt[e] = s
                else:
                    nxt.pop(e, None)
        power = nxt
        if not power:
            break
        for e, c in power.items():
            s = coeffs.get(e, Fraction(0)) + ck * c
            if s:
                coeffs[e] = s
            else:
                coeffs.pop(e, None)
    return TruncSeries(Q.nvars, N, coeffs, q0, -beta)
