"""Cycle-length sets: membership, natural density, and the log-EGF.

A cycle set describes which cycle lengths a mapping is allowed to have.
Five kinds are supported, matching the mini-language used by the CLI:

    all                every length
    mult:a             multiples of a  (a >= 2)
    f1:a1+b1,a2+b2     union of arithmetic progressions {a_i*k + b_i, k>=0}
                       with a_i > 1, 1 <= b_i < a_i, gcd(a_i,b_i)=1,
                       pairwise disjoint
    f2:k1,k2           naturals divisible by none of the pairwise-coprime k_i
    finite:m1,m2       an explicit finite set (density zero)

The density is exact: 1, 1/a, sum 1/a_i, prod (1 - 1/k_i), or 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .series import Series

KINDS = ("all", "mult", "f1", "f2", "finite")


class CycleSetError(ValueError):
    """Malformed or invalid cycle-set description."""


@dataclass(frozen=True)
class CycleSet:
    """Immutable symbolic description of an allowed set of cycle lengths."""

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CycleSetError("unknown cycle-set kind %r" % (self.kind,))
        getattr(self, "_validate_" + self.kind)()

    def _validate_all(self):
        if self.params:
            raise CycleSetError("'all' takes no parameters")

    def _validate_mult(self):
        if len(self.params) != 1:
            raise CycleSetError("'mult' takes exactly one modulus")
        a = self.params[0]
        if not isinstance(a, int) or a <= 1:
            raise CycleSetError("'mult' modulus must be an integer > 1, got %r" % (a,))

    def _validate_f1(self):
        if not self.params:
            raise CycleSetError("'f1' needs at least one progression")
        for a, b in self.params:
            if not (isinstance(a, int) and isinstance(b, int)):
                raise CycleSetError("progression parameters must be integers")
            if a <= 1:
                raise CycleSetError("progression step must exceed 1, got %d" % a)
            if not 1 <= b <= a - 1:
                raise CycleSetError(
                    "progression offset %d out of range for step %d" % (b, a)
                )
            if gcd(a, b) != 1:
                raise CycleSetError(
                    "progression %d+%d has gcd(%d,%d) > 1" % (a, b, a, b)
                )
        pairs = self.params
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                ai, bi = pairs[i]
                aj, bj = pairs[j]
                # CRT: the progressions meet iff b_i = b_j mod gcd(a_i, a_j)
                if (bi - bj) % gcd(ai, aj) == 0:
                    raise CycleSetError(
                        "progressions %d+%d and %d+%d intersect" % (ai, bi, aj, bj)
                    )

    def _validate_f2(self):
        if not self.params:
            raise CycleSetError("'f2' needs at least one modulus")
        for k in self.params:
            if not isinstance(k, int) or k < 2:
                raise CycleSetError("'f2' moduli must be integers >= 2, got %r" % (k,))
        ks = self.params
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                if gcd(ks[i], ks[j]) != 1:
                    raise CycleSetError(
                        "'f2' moduli %d and %d share a factor" % (ks[i], ks[j])
                    )

    def _validate_finite(self):
        if not self.params:
            raise CycleSetError("'finite' needs at least one member")
        for m in self.params:
            if not isinstance(m, int) or m < 1:
                raise CycleSetError("'finite' members must be naturals, got %r" % (m,))
        if any(x >= y for x, y in zip(self.params, self.params[1:])):
            raise CycleSetError("'finite' members must be strictly increasing")

    # -- queries ------------------------------------------------------

    @property
    def density(self) -> Fraction:
        """Exact natural density of the set in the positive integers."""
        if self.kind == "all":
            return Fraction(1)
        if self.kind == "mult":
            return Fraction(1, self.params[0])
        if self.kind == "f1":
            return sum((Fraction(1, a) for a, _ in self.params), Fraction(0))
        if self.kind == "f2":
            d = Fraction(1)
            for k in self.params:
                d *= 1 - Fraction(1, k)
            return d
        return Fraction(0)

    def contains(self, m: int) -> bool:
        """Membership test for a natural m >= 1."""
        if m < 1:
            raise ValueError("cycle lengths are naturals, got %d" % m)
        if self.kind == "all":
            return True
        if self.kind == "mult":
            return m % self.params[0] == 0
        if self.kind == "f1":
            return any(m % a == b for a, b in self.params)
        if self.kind == "f2":
            return all(m % k != 0 for k in self.params)
        return m in self.params

    def members_upto(self, n: int) -> list:
        """All members <= n, ascending."""
        if self.kind == "mult":
            return list(range(self.params[0], n + 1, self.params[0]))
        if self.kind == "all":
            return list(range(1, n + 1))
        if self.kind == "finite":
            return [m for m in self.params if m <= n]
        return [m for m in range(1, n + 1) if self.contains(m)]

    def density_empirical(self, n: int) -> Fraction:
        """|{m in A : m <= n}| / n, exact."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return Fraction(len(self.members_upto(n)), n)

    def log_egf(self, order: int) -> Series:
        """sum_{m in A} s^m / m truncated at `order`, exact coefficients."""
        if order < 1:
            raise ValueError("order must be >= 1")
        coeffs = [Fraction(0)] * (order + 1)
        for m in self.members_upto(order):
            coeffs[m] = Fraction(1, m)
        return Series(tuple(coeffs))

    def spec_string(self) -> str:
        """Round-trippable mini-language form of this set."""
        if self.kind == "all":
            return "all"
        if self.kind == "mult":
            return "mult:%d" % self.params[0]
        if self.kind == "f1":
            return "f1:" + ",".join("%d+%d" % ab for ab in self.params)
        if self.kind == "f2":
            return "f2:" + ",".join(str(k) for k in self.params)
        return "finite:" + ",".join(str(m) for m in self.params)


def all_lengths() -> CycleSet:
    return CycleSet("all")


def multiples(a: int) -> CycleSet:
    return CycleSet("mult", (a,))


def progressions(pairs) -> CycleSet:
    return CycleSet("f1", tuple((int(a), int(b)) for a, b in pairs))


def nonmultiples(moduli) -> CycleSet:
    return CycleSet("f2", tuple(int(k) for k in moduli))


def finite_set(members) -> CycleSet:
    return CycleSet("finite", tuple(sorted(int(m) for m in members)))


def _int(token: str, what: str) -> int:
    if not token.isdigit():
        raise CycleSetError("bad %s %r: expected a decimal natural" % (what, token))
    return int(token)


def parse_cycle_set(text: str) -> CycleSet:
    """Parse the mini-language; raises CycleSetError naming the bad piece."""
    if not isinstance(text, str) or text != text.strip() or " " in text:
        raise CycleSetError("cycle-set spec must be a single token, got %r" % (text,))
    if text == "all":
        return all_lengths()
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise CycleSetError("malformed cycle-set spec %r" % (text,))
    if kind == "mult":
        return multiples(_int(rest, "modulus"))
    if kind == "f1":
        pairs = []
        for piece in rest.split(","):
            a, sep2, b = piece.partition("+")
            if not sep2:
                raise CycleSetError("bad progression %r: expected a+b" % (piece,))
            pairs.append((_int(a, "progression step"), _int(b, "progression offset")))
        return progressions(pairs)
    if kind == "f2":
        return nonmultiples(_int(k, "modulus") for k in rest.split(","))
    if kind == "finite":
        return finite_set(_int(m, "member") for m in rest.split(","))
    raise CycleSetError("unknown cycle-set kind %r" % (kind,))
