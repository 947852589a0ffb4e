"""Twisted Steiner bundles and Fibonacci bundles.

A twisted Steiner bundle is the cokernel of an injective matrix of linear
forms ``O(alpha-2)^a -> O(alpha-1)^(a+r)``.  For a general matrix with
``alpha = 1`` the cokernel is mu-stable when ``a/r`` exceeds ``phi - 1``
(``phi`` the golden ratio); below that threshold it splits as a sum of two
consecutive Fibonacci bundles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .invariants import SheafClass, alpha as alpha_of, beta

__all__ = [
    "SteinerData",
    "SteinerClass",
    "FibBundle",
    "Golden",
    "StabilityKind",
    "SteinerStability",
    "steiner_class",
    "fib",
    "fibonacci",
    "fibonacci_slopes",
    "golden_test",
    "smallest_fibonacci_at_least",
    "general_steiner_stability",
    "classify_maximal",
]


@dataclass(frozen=True)
class SteinerData:
    """Resolution ``0 -> O(alpha-2)^a -> O(alpha-1)^(a+r) -> E -> 0``."""

    alpha: int
    a: int
    r: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        if self.a < 0:
            raise ValueError(f"a must be >= 0, got {self.a}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")

    @property
    def slope(self) -> Fraction:
        return self.alpha - 1 + Fraction(self.a, self.r)

    @property
    def c1(self) -> int:
        return (self.alpha - 1) * self.r + self.a


@dataclass(frozen=True)
class SteinerClass:
    cls: SheafClass
    h0: int
    h1: int


def steiner_class(d: SteinerData) -> SteinerClass:
    # h1 = 0 and h0 = chi = beta; the slope formula only holds for a < r,
    # otherwise alpha(mu) != d.alpha and beta would be evaluated on the wrong branch
    if d.a >= d.r:
        raise ValueError(f"need 0 <= a < r, got a={d.a}, r={d.r}")
    b = beta(d.r, d.slope)
    return SteinerClass(SheafClass(d.r, d.c1, b), h0=b, h1=0)


@lru_cache(maxsize=None)
def fib(n: int) -> int:
    """Fibonacci numbers extended to negative indices (``f_-n = (-1)^(n+1) f_n``)."""
    if n < 0:
        return (-1) ** (-n + 1) * fib(-n)
    if n < 2:
        return n
    return fib(n - 1) + fib(n - 2)


@dataclass(frozen=True)
class FibBundle:
    index: int
    rank: int
    c1: int

    @property
    def slope(self) -> Fraction:
        return Fraction(self.c1, self.rank)

    @property
    def chi(self) -> int:
        return beta(self.rank, self.slope)

    @property
    def sheaf_class(self) -> SheafClass:
        return SheafClass(self.rank, self.c1, self.chi)


def fibonacci(i: int) -> FibBundle:
    """The i-th Fibonacci bundle: rank ``f_(2i+1)``, ``c1 = f_(2i)``.

    ``F_-1 = O(-1)`` and ``F_0 = O`` fall out of the same formula once the
    Fibonacci numbers are extended to negative indices.
    """
    if i < -1:
        raise ValueError(f"Fibonacci bundles are indexed from -1, got {i}")
    return FibBundle(i, fib(2 * i + 1), fib(2 * i))


def fibonacci_slopes(n: int) -> list[Fraction]:
    """Slopes of ``F_0, ..., F_(n-1)``."""
    return [fibonacci(i).slope for i in range(n)]


class Golden(enum.Enum):
    BELOW = "Below"
    ABOVE = "Above"


def golden_test(a: int, r: int) -> Golden:
    """Compare ``a/r`` with ``phi - 1`` using integers only.

    ``a/r > (sqrt(5) - 1)/2`` iff ``(2a + r)^2 > 5 r^2`` (both sides positive).
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if a < 0:
        return Golden.BELOW
    lhs, rhs = (2 * a + r) ** 2, 5 * r * r
    if lhs == rhs:
        # sqrt(5) is irrational
        raise ArithmeticError(f"(2a+r)^2 == 5r^2 for a={a}, r={r}")
    return Golden.ABOVE if lhs > rhs else Golden.BELOW


def smallest_fibonacci_at_least(x: Fraction) -> FibBundle:
    """The Fibonacci bundle ``F_i`` (``i >= 0``) of least slope with ``x <= mu(F_i)``.

    Requires ``x < phi - 1``; the slopes increase to ``phi - 1`` so the search
    terminates.
    """
    x = Fraction(x)
    if x >= 1 or golden_test(x.numerator, x.denominator) is Golden.ABOVE:
        raise ValueError(f"{x} is not below phi - 1")
    i = 0
    while fibonacci(i).slope < x:
        i += 1
    return fibonacci(i)


class StabilityKind(enum.Enum):
    MU_STABLE = "MuStable"
    FIBONACCI_EXCEPTIONAL = "FibonacciExceptional"
    DECOMPOSES = "Decomposes"


@dataclass(frozen=True)
class SteinerStability:
    """Generic behaviour of a Steiner cokernel of rank ``r`` and ``c1 = a``.

    For ``DECOMPOSES`` the bundle is ``F_(i-1)^m + F_i^n``.
    """

    kind: StabilityKind
    index: int | None = None
    m: int | None = None
    n: int | None = None

    def __str__(self):
        if self.kind is StabilityKind.MU_STABLE:
            return "MuStable"
        if self.kind is StabilityKind.FIBONACCI_EXCEPTIONAL:
            return f"FibonacciExceptional({self.index})"
        return f"Decomposes(F_{self.index - 1}^{self.m} + F_{self.index}^{self.n})"


def general_steiner_stability(a: int, r: int) -> SteinerStability:
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if a < 0 or a >= r:
        raise ValueError(f"need 0 <= a/r < 1, got a={a}, r={r}")
    if golden_test(a, r) is Golden.ABOVE:
        return SteinerStability(StabilityKind.MU_STABLE)
    mu = Fraction(a, r)
    fi = smallest_fibonacci_at_least(mu)
    if (a, r) == (fi.c1, fi.rank):
        return SteinerStability(StabilityKind.FIBONACCI_EXCEPTIONAL, index=fi.index)
    prev = fibonacci(fi.index - 1)
    # consecutive Fibonacci bundles have unimodular (rank, c1) data
    det = prev.rank * fi.c1 - prev.c1 * fi.rank
    assert det == 1, det
    n = prev.rank * a - prev.c1 * r
    m = r * fi.c1 - a * fi.rank
    assert m >= 0 and n > 0, (m, n)
    return SteinerStability(StabilityKind.DECOMPOSES, index=fi.index, m=m, n=n)


def classify_maximal(r: int, mu) -> SteinerData:
    """Steiner type forced on a sheaf of rank ``r``, slope ``mu`` with ``h0 = beta``."""
    mu = Fraction(mu)
    if mu < 0:
        raise ValueError(f"mu must be >= 0, got {mu}")
    if (r * mu).denominator != 1:
        raise ValueError(f"r*mu = {r * mu} is not integral")
    al = alpha_of(mu)
    a = r * mu - r * (al - 1)
    return SteinerData(al, int(a), r)
