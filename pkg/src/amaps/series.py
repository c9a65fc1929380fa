"""Truncated power series with exact rational coefficients.

A series is a tuple of coefficients for s^0 .. s^K; K is the truncation
order and is carried by the value. Binary operations truncate to the
shorter operand instead of silently padding with zeros.

Coefficients are ``Fraction`` in exact mode. The same recurrences run
unchanged on float coefficients (everything here is division-free except
by the index n), which is what the large-order float tables use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Scalar = Union[Fraction, float]


@dataclass(frozen=True)
class Series:
    """Power series truncated at degree ``order`` (inclusive); coeffs[j] is [s^j]."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def exact(cls, coeffs: Sequence) -> "Series":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def approx(cls, coeffs: Sequence) -> "Series":
        return cls(tuple(float(c) for c in coeffs))

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls.exact([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.exact([1] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.coeffs[: order + 1])

    def scale(self, c) -> "Series":
        return Series(tuple(c * a for a in self.coeffs))

    def __add__(self, other: "Series") -> "Series":
        k = min(self.order, other.order)
        return Series(tuple(self.coeffs[j] + other.coeffs[j] for j in range(k + 1)))

    def __sub__(self, other: "Series") -> "Series":
        k = min(self.order, other.order)
        return Series(tuple(self.coeffs[j] - other.coeffs[j] for j in range(k + 1)))

    def __mul__(self, other: "Series") -> "Series":
        return series_mul(self, other)


def _zero_like(f: Series):
    c0 = f.coeffs[0]
    return 0.0 if isinstance(c0, float) else Fraction(0)


def series_mul(f: Series, g: Series) -> Series:
    """Cauchy product, truncated to min(order f, order g).

    Deliberately the naive O(K^2) convolution: it is the correctness
    baseline everything faster must match bit for bit.
    """
    k = min(f.order, g.order)
    zero = _zero_like(f)
    out = []
    for j in range(k + 1):
        s = zero
        for i in range(j + 1):
            fi = f.coeffs[i]
            if fi:
                s += fi * g.coeffs[j - i]
        out.append(s)
    return Series(tuple(out))


def series_exp(f: Series) -> Series:
    """exp of a series with zero constant term.

    Uses the derivative recurrence g' = f'·g, i.e.
    n·g_n = sum_{j=1..n} j·f_j·g_{n-j}, which keeps everything rational
    and subtraction-free whenever f is nonnegative.
    """
    if f.coeffs[0] != 0:
        raise ValueError(
            "series_exp requires a zero constant term (got %r)" % (f.coeffs[0],)
        )
    k = f.order
    zero = _zero_like(f)
    one = 1.0 if isinstance(f.coeffs[0], float) else Fraction(1)
    # precomputed nonzero weights j*f_j; the inner sum skips structural zeros
    weights = [(j, j * f.coeffs[j]) for j in range(1, k + 1) if f.coeffs[j]]
    g = [zero] * (k + 1)
    g[0] = one
    for n in range(1, k + 1):
        s = zero
        for j, w in weights:
            if j > n:
                break
            s += w * g[n - j]
        g[n] = s / n
    return Series(tuple(g))


def series_log(f: Series) -> Series:
    """log of a series with unit constant term.

    g_n = f_n - (1/n)·sum_{j=1..n-1} j·g_j·f_{n-j}; exp(log f) == f exactly.
    """
    if f.coeffs[0] != 1:
        raise ValueError(
            "series_log requires a unit constant term (got %r)" % (f.coeffs[0],)
        )
    k = f.order
    zero = _zero_like(f)
    g = [zero] * (k + 1)
    for n in range(1, k + 1):
        s = zero
        for j in range(1, n):
            gj = g[j]
            fnj = f.coeffs[n - j]
            if gj and fnj:
                s += j * gj * fnj
        g[n] = f.coeffs[n] - s / n
    return Series(tuple(g))


def series_pow(f: Series, q) -> Series:
    """f**q for a series with unit constant term: exp(q·log f).

    q may be any rational (or a float, for float-mode series).
    """
    if f.coeffs[0] != 1:
        raise ValueError(
            "series_pow requires a unit constant term (got %r)" % (f.coeffs[0],)
        )
    if isinstance(f.coeffs[0], float):
        qc = float(q)
    else:
        qc = Fraction(q)
    return series_exp(series_log(f).scale(qc))
