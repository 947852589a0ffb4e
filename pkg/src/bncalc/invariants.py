"""Numerical invariants of sheaf classes on the projective plane.

A class is recorded by rank, first Chern class and Euler characteristic.
Everything here is exact: slopes and discriminants are ``Fraction``s and
the integer-valued quantities are checked to be integers before they are
returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "SheafClass",
    "BoundData",
    "hilbert_poly",
    "make_class",
    "alpha",
    "beta",
    "bound_data",
    "beta_properties_check",
    "section_bound_max",
    "euler_pairing",
    "moduli_dim",
    "euler_line_twist",
    "bogomolov_ok",
]


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"{what} = {x} is not an integer")
    return x.numerator


def hilbert_poly(x) -> Fraction:
    """``P(x) = x^2/2 + 3x/2 + 1``, so that ``chi(O(n)) = P(n)``."""
    x = _q(x)
    return x * x / 2 + Fraction(3, 2) * x + 1


@dataclass(frozen=True)
class SheafClass:
    rank: int
    c1: int
    chi: int

    def __post_init__(self):
        for name in ("rank", "c1", "chi"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise TypeError(f"{name} must be an int")
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")

    @property
    def slope(self) -> Fraction:
        return Fraction(self.c1, self.rank)

    @property
    def discriminant(self) -> Fraction:
        return hilbert_poly(self.slope) - Fraction(self.chi, self.rank)

    @property
    def ch2(self) -> Fraction:
        # chi = r + 3/2 c1 + ch2 on P^2
        return self.chi - self.rank - Fraction(3, 2) * self.c1

    def twist(self, m: int) -> "SheafClass":
        """Class of ``E(m)``; the discriminant is twist invariant."""
        mu = self.slope + m
        chi = self.rank * (hilbert_poly(mu) - self.discriminant)
        return SheafClass(self.rank, self.c1 + self.rank * m, _as_int(chi, "chi(E(m))"))

    def __str__(self):
        return f"(r={self.rank}, c1={self.c1}, chi={self.chi})"


def make_class(r: int, c1: int, chi: int) -> SheafClass:
    return SheafClass(r, c1, chi)


def alpha(mu) -> int:
    """``floor(mu) + 1``; only defined for ``mu >= -1``."""
    mu = _q(mu)
    if mu < -1:
        raise ValueError(f"alpha is only defined for mu >= -1, got {mu}")
    return math.floor(mu) + 1


def _beta_exact(r: int, mu: Fraction) -> Fraction:
    a = alpha(mu)
    return r * a * (mu - Fraction(a, 2) + Fraction(3, 2))


def beta(r: int, mu) -> int:
    """Maximal number of sections of a semistable sheaf of rank ``r``, slope ``mu``.

    ``beta = r*alpha*(mu - alpha/2 + 3/2)``.  Integral whenever ``r*mu`` is,
    because ``alpha*(3 - alpha)`` is even.
    """
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    mu = _q(mu)
    if (r * mu).denominator != 1:
        raise ValueError(f"r*mu = {r * mu} is not integral")
    return _as_int(_beta_exact(r, mu), "beta")


@dataclass(frozen=True)
class BoundData:
    alpha: int
    beta: int
    deficiency: int | None = None


def bound_data(r: int, mu, h0: int | None = None) -> BoundData:
    b = beta(r, mu)
    return BoundData(alpha(mu), b, None if h0 is None else b - h0)


def beta_properties_check(r: int, mu) -> bool:
    """Self-test of the shift identity and monotonicity of ``beta`` at ``(r, mu)``.

    Checks ``beta(r, mu-1) == beta(r, mu) - r*(mu+1)`` and that
    ``beta(r, j/r) < beta(r, mu)`` for every ``0 <= j/r < mu``.
    """
    mu = _q(mu)
    if mu < 0:
        return False
    b = beta(r, mu)
    if beta(r, mu - 1) != b - r * (mu + 1):
        return False
    n = r * mu.denominator
    j = 0
    while Fraction(j, n) < mu:
        if not _beta_exact(r, Fraction(j, n)) < b:
            return False
        j += 1
    return True


def section_bound_max(r: int, mu_max) -> int:
    """Upper bound on ``h0(E)`` for a torsion-free ``E`` of rank ``r``.

    ``mu_max`` is the maximal Harder-Narasimhan slope, supplied by the caller.
    ``r*mu_max`` need not be integral, so the exact bound is floored.
    """
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    mu_max = _q(mu_max)
    return math.floor(_beta_exact(r, mu_max))


def euler_pairing(v: SheafClass, w: SheafClass) -> int:
    """``chi(v, w) = r_v r_w (P(mu_w - mu_v) - Delta_v - Delta_w)``."""
    val = v.rank * w.rank * (
        hilbert_poly(w.slope - v.slope) - v.discriminant - w.discriminant
    )
    return _as_int(val, f"chi({v}, {w})")


def moduli_dim(v: SheafClass) -> int:
    return 1 - euler_pairing(v, v)


def euler_line_twist(v: SheafClass, b: int) -> int:
    """``chi(E, O_L(-b)) = -r(mu + b - 1)`` for a line ``L``."""
    return -(v.c1 + v.rank * b - v.rank)


def bogomolov_ok(v: SheafClass) -> bool:
    """True iff ``Delta(v) >= 0``.

    Necessary for the moduli space to be nonempty, not sufficient.
    """
    return v.discriminant >= 0
