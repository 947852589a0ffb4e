"""Emptiness, irreducibility and codimension of Brill-Noether loci.

``B^k(r, mu, chi)`` is the closure of the stable sheaves in ``M(r, mu, chi)``
having at least ``k`` independent sections.  With ``delta = beta - k``, the
loci are decided for ``delta < alpha`` (all or nothing) and for
``delta = alpha`` (extensions of a Steiner bundle by a line bundle on a line).
Larger deficiencies are reported as out of theory.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .invariants import (
    SheafClass,
    alpha as alpha_of,
    beta as beta_of,
    bogomolov_ok,
    euler_line_twist,
)
from .steiner import (
    Golden,
    SteinerData,
    general_steiner_stability,
    golden_test,
    smallest_fibonacci_at_least,
)

__all__ = [
    "Status",
    "BNQuery",
    "ExtensionData",
    "CodimData",
    "BNVerdict",
    "bn_verdict",
    "deficiency_alpha_data",
    "bn_codim",
    "default_sections",
]


class Status(enum.Enum):
    EMPTY_BY_SECTION_BOUND = "EmptyBySectionBound"
    WHOLE_MODULI_SPACE = "WholeModuliSpace"
    EMPTY = "Empty"
    NONEMPTY_IRREDUCIBLE = "NonemptyIrreducible"
    NONEMPTY_FOR_CHI_SUFFICIENTLY_NEGATIVE = "NonemptyForChiSufficientlyNegative"
    OUT_OF_THEORY = "OutOfTheory"

    def __str__(self):
        return self.value


NONEMPTY = {
    Status.WHOLE_MODULI_SPACE,
    Status.NONEMPTY_IRREDUCIBLE,
    Status.NONEMPTY_FOR_CHI_SUFFICIENTLY_NEGATIVE,
}


@dataclass(frozen=True)
class BNQuery:
    cls: SheafClass
    sections: int

    def __post_init__(self):
        if self.sections < 0:
            raise ValueError(f"number of sections must be >= 0, got {self.sections}")


@dataclass(frozen=True)
class ExtensionData:
    """``0 -> S -> E -> O_L(-b) -> 0`` with ``S`` of Steiner type ``sub``."""

    sub: SteinerData
    b: int
    ext_dim: int


@dataclass(frozen=True)
class CodimData:
    expected: int
    codim: int | None = None
    equality: bool = False


@dataclass(frozen=True)
class BNVerdict:
    status: Status
    expected_codim: int
    moduli_nonempty_assumed: bool
    irreducible: bool | None = None
    codim: int | None = None
    extension_data: ExtensionData | None = None
    notes: str = ""


def _split_slope(cls: SheafClass) -> tuple[int, int]:
    """``mu = alpha - 1 + a/r`` with ``0 <= a < r``."""
    al = alpha_of(cls.slope)
    return al, cls.c1 - (al - 1) * cls.rank


def default_sections(cls: SheafClass) -> int:
    """``beta - alpha``, the first locus that is not all or nothing."""
    return beta_of(cls.rank, cls.slope) - alpha_of(cls.slope)


def deficiency_alpha_data(cls: SheafClass) -> ExtensionData:
    """Extension data shared by every sheaf in ``B^(beta-alpha)`` when ``chi < beta - alpha``.

    ``b = beta - alpha - chi + 1`` and
    ``ext^1(O_L(-b), S) = r(mu + b + 2) - 1``.
    """
    mu = cls.slope
    if mu <= 0:
        raise ValueError(f"need mu > 0, got {mu}")
    al, a = _split_slope(cls)
    r = cls.rank
    if a == 0:
        raise ValueError(f"slope {mu} is an integer; no Steiner extension data")
    b0 = beta_of(r, mu)
    if cls.chi >= b0 - al:
        raise ValueError(f"chi = {cls.chi} is not below beta - alpha = {b0 - al}")
    b = b0 - al - cls.chi + 1
    ext = r * (mu + b + 2) - 1
    assert ext.denominator == 1 and ext > 0
    return ExtensionData(SteinerData(al, a - 1, r), b, int(ext))


def bn_codim(cls: SheafClass) -> CodimData:
    """Codimension of ``B^(beta-alpha)``, when the Steiner subsheaf is generically stable.

    The value is ``r(beta - alpha - chi) + c1 - 1`` and only present when
    ``0 < a < r``, ``(a-1)/r > phi - 1`` and ``chi < beta - alpha``.  The
    expected codimension ``(beta - alpha)(beta - alpha - chi)`` is always
    returned.
    """
    r, mu, chi = cls.rank, cls.slope, cls.chi
    b0 = beta_of(r, mu)
    al, a = _split_slope(cls)
    k = b0 - al
    expected = k * (k - chi)
    if not (0 < a < r and chi < k and golden_test(a - 1, r) is Golden.ABOVE):
        return CodimData(expected)
    codim = r * (k - chi) + cls.c1 - 1
    # independent route: -chi(E, O_L(-b)) - 1
    b = k - chi + 1
    assert codim == -euler_line_twist(cls, b) - 1
    assert codim <= expected, (codim, expected)
    equality = codim == expected
    assert equality == (al == 1 and chi == k - 1), cls
    return CodimData(expected, codim, equality)


def bn_verdict(q: BNQuery) -> BNVerdict:
    cls, k = q.cls, q.sections
    r, mu, chi = cls.rank, cls.slope, cls.chi
    ecodim = k * (k - chi)
    assumed = bogomolov_ok(cls)
    notes = []
    if not assumed:
        notes.append(f"Delta = {cls.discriminant} < 0: M(r, mu, chi) is empty (Bogomolov), verdict is vacuous")

    def verdict(status, **kw):
        text = "; ".join(notes + [kw.pop("note")]) if "note" in kw else "; ".join(notes)
        if status in NONEMPTY:
            kw.setdefault("irreducible", True)
        return BNVerdict(status, ecodim, assumed, notes=text, **kw)

    # B^0 is everything; rank one at slope 0 keeps its finer ideal-sheaf verdict
    if k == 0 and not (r == 1 and mu == 0):
        return verdict(Status.WHOLE_MODULI_SPACE, note="every sheaf has >= 0 sections")
    if mu < 0:
        return verdict(Status.EMPTY_BY_SECTION_BOUND,
                       note="semistable sheaves of negative slope have no sections")

    al = alpha_of(mu)
    b0 = beta_of(r, mu)
    delta = b0 - k
    if k > b0:
        return verdict(Status.EMPTY_BY_SECTION_BOUND, note=f"k = {k} > beta = {b0}")
    if delta < al:
        if chi >= k:
            return verdict(Status.WHOLE_MODULI_SPACE,
                           note=f"deficiency {delta} < alpha: h1 = 0, every sheaf has chi = {chi} >= k sections")
        return verdict(Status.EMPTY,
                       note=f"deficiency {delta} < alpha forces h1 = 0, so h0 = chi = {chi} < k")
    if delta > al:
        return verdict(Status.OUT_OF_THEORY,
                       note=f"deficiency {delta} > alpha = {al} is not classified")

    # delta == alpha
    a = cls.c1 - (al - 1) * r
    if a == 0:
        if r == 1 and chi <= k:
            return verdict(
                Status.NONEMPTY_IRREDUCIBLE,
                note=(f"ideal sheaves I_Z({al - 1}) with Z collinear of length >= {al}"
                      + ("; at chi = beta - alpha this is all of M" if chi == k else "")),
            )
        if chi >= k:
            return verdict(Status.WHOLE_MODULI_SPACE,
                           note=f"chi = {chi} >= beta - alpha: general sheaf has >= k sections")
        return verdict(
            Status.EMPTY,
            note=("integer slope, r >= 2: chi < beta - alpha forces h1 > 0, so E is not globally "
                  "generated in codimension 1, and such a Gieseker semistable sheaf must have rank 1"),
        )
    if chi >= k:
        return verdict(Status.WHOLE_MODULI_SPACE,
                       note=f"chi = {chi} >= beta - alpha: general sheaf has >= k sections")

    ext = deficiency_alpha_data(cls)
    if golden_test(a, r) is Golden.ABOVE:
        cd = bn_codim(cls)
        return verdict(
            Status.NONEMPTY_IRREDUCIBLE,
            codim=cd.codim,
            extension_data=ext,
            note=(f"a/r = {Fraction(a, r)} > phi - 1: elementary transformation of a mu-stable Steiner bundle"
                  + ("; codimension equals expected" if cd.equality else "")),
        )
    rho = smallest_fibonacci_at_least(Fraction(a - 1, r))
    sub = general_steiner_stability(a - 1, r)
    if rho.slope >= Fraction(a, r):
        return verdict(
            Status.EMPTY,
            irreducible=None,
            note=(f"general S = {sub} contains F_{rho.index} of slope {rho.slope} >= mu(E) - (alpha-1)"),
        )
    return verdict(
        Status.NONEMPTY_FOR_CHI_SUFFICIENTLY_NEGATIVE,
        extension_data=ext,
        note=(f"general S = {sub}, mu(F_{rho.index}) = {rho.slope} < a/r = {Fraction(a, r)}: "
              "general extension is semistable once b >> 0; exact chi threshold unknown"),
    )
