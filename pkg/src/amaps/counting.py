"""Exact counting of mappings with restricted cycle lengths.

Everything is driven by the coefficients p(k) of exp(sum_{m in A} s^m/m):
k!·p(k) counts the permutations of k elements whose cycle lengths all lie
in A, and the number of n-set mappings with exactly k cyclic elements is

    T(k, n) = n^(n-1) · a(k, n) · k·p(k)
            = n^(n-k) · C(n-1, k-1) · k!·p(k)

with a(k, n) = (1 - 1/n)···(1 - (k-1)/n). The second form is a product
of integers, so exact totals are integers by construction.

Exact mode uses big rationals / big integers. Float mode runs the same
recurrences in double precision (safe: every quantity is nonnegative, so
there is no cancellation) and computes a(k, n) through log-gamma
differences so that k may reach n without underflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, isqrt
from typing import Optional, Tuple, Union

import numpy as np
from scipy.special import gammaln

from .cycle_sets import CycleSet

MODES = ("exact", "float")


class UndefinedDistributionError(ValueError):
    """No mapping of the n-set satisfies the cycle restriction."""


@dataclass(frozen=True)
class CountTable:
    """Per-k coefficients p(k), b(k) = k·p(k) and B(k) = sum_{l<=k} b(l).

    ``perm_counts`` (exact mode only) holds the integers k!·p(k).
    """

    set: CycleSet
    order: int
    mode: str
    p: tuple
    b: tuple
    B: tuple
    perm_counts: Optional[tuple] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError("mode must be one of %r" % (MODES,))
        if len(self.p) != self.order + 1:
            raise ValueError("coefficient table length does not match order")

    def perm_count(self, k: int) -> int:
        """k!·p(k): the number of k-permutations with all cycle lengths allowed."""
        if self.mode != "exact":
            raise ValueError("permutation counts require an exact-mode table")
        if not 0 <= k <= self.order:
            raise ValueError("k=%d outside table order %d" % (k, self.order))
        return self.perm_counts[k]


def _perm_count_table(A: CycleSet, K: int) -> list:
    """Integer recurrence for m_k = k!·p(k).

    Choosing the cycle through the largest element gives
    m_k = sum_{j in A, j<=k} (k-1)!/(k-j)! · m_{k-j}; this is the
    series-exp recurrence with denominators cleared, so it stays in
    big integers throughout.
    """
    members = A.members_upto(K)
    m = [0] * (K + 1)
    m[0] = 1
    for n in range(1, K + 1):
        tot = 0
        fall = 1  # (n-1)!/(n-prev)!, extended member to member
        prev = 1
        for j in members:
            if j > n:
                break
            for i in range(n - prev, n - j, -1):
                fall *= i
            prev = j
            tot += fall * m[n - j]
        m[n] = tot
    return m


def _float_p_table(A: CycleSet, K: int) -> np.ndarray:
    """Double-precision p(k) via n·p_n = sum_{j in A, j<=n} p_{n-j}."""
    w = np.zeros(K + 1)
    w[A.members_upto(K)] = 1.0  # j·[s^j]log-EGF is the membership indicator
    p = np.zeros(K + 1)
    p[0] = 1.0
    for n in range(1, K + 1):
        p[n] = np.dot(w[1 : n + 1], p[n - 1 :: -1]) / n
    return p


def coeff_table(A: CycleSet, K: int, mode: str = "exact") -> CountTable:
    """Build the p/b/B table for A up to index K."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if mode == "exact":
        m = _perm_count_table(A, K)
        p, b, B = [], [], []
        run = Fraction(0)
        fact = 1
        for k in range(K + 1):
            if k:
                fact *= k
            pk = Fraction(m[k], fact)
            bk = k * pk
            run += bk
            p.append(pk)
            b.append(bk)
            B.append(run)
        return CountTable(A, K, "exact", tuple(p), tuple(b), tuple(B), tuple(m))
    if mode == "float":
        p = _float_p_table(A, K)
        b = np.arange(K + 1) * p
        B = np.cumsum(b)
        return CountTable(A, K, "float", tuple(p), tuple(b), tuple(B))
    raise ValueError("mode must be one of %r" % (MODES,))


def falling_ratio(k: int, n: int) -> Fraction:
    """a(k, n) = (1 - 1/n)···(1 - (k-1)/n), exact; a(1, n) = 1."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n, got k=%d n=%d" % (k, n))
    num = 1
    for i in range(n - 1, n - k, -1):
        num *= i
    return Fraction(num, n ** (k - 1))


def falling_ratios_float(n: int, kmax: Optional[int] = None) -> np.ndarray:
    """a(k, n) for k = 1..kmax as doubles, via log-gamma differences."""
    if kmax is None:
        kmax = n
    if not 1 <= kmax <= n:
        raise ValueError("need 1 <= kmax <= n")
    ks = np.arange(1, kmax + 1)
    return np.exp(gammaln(n) - gammaln(n - ks + 1) - (ks - 1) * np.log(n))


@dataclass(frozen=True)
class ExactCountResult:
    """Exact census: total mapping count and its split by cyclic-element count."""

    n: int
    total: int
    per_k: tuple  # per_k[k] = T(k, n) for k = 1..n; per_k[0] = 0

    def cdf_numerator(self, m: int) -> int:
        return sum(self.per_k[1 : m + 1])


def term_count(k: int, n: int, table: CountTable) -> int:
    """T(k, n) = n^(n-k) · C(n-1, k-1) · k!·p(k), a nonnegative integer."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n, got k=%d n=%d" % (k, n))
    if table.mode != "exact":
        raise ValueError("term_count requires an exact-mode table")
    if table.order < k:
        raise ValueError("table order %d < k=%d" % (table.order, k))
    return n ** (n - k) * comb(n - 1, k - 1) * table.perm_count(k)


def count_amappings(
    A: CycleSet, n: int, table: Optional[CountTable] = None
) -> ExactCountResult:
    """Exact number of n-set mappings with all cycle lengths in A, split by k."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if table is None:
        table = coeff_table(A, n)
    elif table.mode != "exact" or table.order < n:
        raise ValueError("need an exact-mode table of order >= n")
    per_k = [0] * (n + 1)
    pw = 1  # n^(n-k), built upward as k descends
    for k in range(n, 0, -1):
        mk = table.perm_count(k)
        if mk:
            per_k[k] = pw * comb(n - 1, k - 1) * mk
        pw *= n
    return ExactCountResult(n, sum(per_k), tuple(per_k))


def scaled_sum(
    A: CycleSet,
    n: int,
    mode: str = "exact",
    table: Optional[CountTable] = None,
) -> Union[Fraction, float]:
    """S(n) = sum_{k=1..n} a(k, n)·b(k) = |V_n(A)| / n^(n-1).

    The scaled form is what the asymptotics see: it grows like
    n^((1+rho)/2) instead of n^n. Exact mode sums big rationals; float
    mode evaluates a(k, n) by log-gamma and is good to ~1e-12 relative.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if table is None:
        table = coeff_table(A, n, mode="exact" if mode == "exact" else "float")
    if table.order < n:
        raise ValueError("table order %d < n=%d" % (table.order, n))
    if mode == "exact":
        if table.mode != "exact":
            raise ValueError("exact scaled_sum requires an exact-mode table")
        a = Fraction(1)
        s = Fraction(0)
        for k in range(1, n + 1):
            bk = table.b[k]
            if bk:
                s += a * bk
            a *= Fraction(n - k, n)
        return s
    if mode == "float":
        b = np.asarray(table.b[1 : n + 1], dtype=float)
        return float(np.dot(falling_ratios_float(n), b))
    raise ValueError("mode must be one of %r" % (MODES,))


def _floor_z_sqrt(z, n: int) -> int:
    """[z·sqrt(n)] for rational z, by integer square-root comparison."""
    zf = Fraction(z)
    if zf < 0:
        raise ValueError("z must be nonnegative")
    return isqrt(zf.numerator**2 * n // zf.denominator**2)


def cdf_lambda(
    A: CycleSet, n: int, z, result: Optional[ExactCountResult] = None
) -> Fraction:
    """Exact P{lambda_n / sqrt(n) <= z} for a uniform restricted mapping.

    The cutoff index m = [z·sqrt(n)] is resolved in integer arithmetic,
    so boundary cases where z·sqrt(n) is an integer are exact. z may be
    a Fraction, an int, or a float (floats convert exactly).
    """
    if result is None:
        result = count_amappings(A, n)
    if result.total == 0:
        raise UndefinedDistributionError(
            "no %s-mapping on %d elements; the law of lambda is undefined"
            % (A.spec_string(), n)
        )
    m = min(_floor_z_sqrt(z, n), n)
    return Fraction(result.cdf_numerator(m), result.total)


def abel_partial_sum(
    table: CountTable, n: int, m: int
) -> Tuple[Fraction, Fraction]:
    """Both sides of the summation-by-parts identity

        sum_{k=1..m} a(k,n)·b(k)
            = a(m,n)·B(m) + (1/n)·sum_{k=1..m-1} a(k,n)·k·B(k),

    computed independently (they must agree exactly; the right side is
    the route the asymptotic analysis takes).
    """
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n, got m=%d n=%d" % (m, n))
    if table.mode != "exact":
        raise ValueError("abel_partial_sum requires an exact-mode table")
    if table.order < m:
        raise ValueError("table order %d < m=%d" % (table.order, m))
    a = Fraction(1)
    lhs = Fraction(0)
    correction = Fraction(0)
    for k in range(1, m + 1):
        if table.b[k]:
            lhs += a * table.b[k]
        if k < m:
            if table.B[k]:
                correction += a * k * table.B[k]
            a *= Fraction(n - k, n)
    rhs = a * table.B[m] + correction / n
    return lhs, rhs
