"""Section counts by explicit linear algebra over a prime field.

Sheaves are modelled concretely: Steiner bundles by a random matrix of
linear forms, ideal sheaves by point sets, and elementary transformations
by a covector killing the matrix along the line ``z = 0``.  ``h0`` is then
a rank computation on spaces of homogeneous forms.  "General" means
uniformly random over ``GF(p)``; a degenerate draw raises
``GenericityFailure`` and the caller retries with another seed.

None of this uses the closed-form section formulas, so agreement with them
is evidence (over a finite field, not a proof in characteristic zero).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Sequence, TypeVar

import numpy as np

from .invariants import section_bound_max
from .steiner import Golden, SteinerData, golden_test

__all__ = [
    "DEFAULT_PRIME",
    "GenericityFailure",
    "InfeasibleQuotient",
    "OracleConfig",
    "PrimeField",
    "GradedMatrix",
    "PointConfig",
    "monomial_basis",
    "rank_mod_p",
    "nullspace_mod_p",
    "random_graded_matrix",
    "multiplication_matrix",
    "random_points",
    "collinear_points",
    "steiner_h0",
    "ideal_h0",
    "SumH0",
    "sum_h0",
    "TransformResult",
    "elementary_transform_h0",
    "h1_report",
    "with_retries",
]

DEFAULT_PRIME = 32003
T = TypeVar("T")


class GenericityFailure(RuntimeError):
    """The random draw landed on a degenerate configuration."""


class InfeasibleQuotient(RuntimeError):
    """No nonzero covector kills the matrix along the line."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        # products of two residues must fit in int64
        if self.p >= 2**31:
            raise ValueError(f"prime {self.p} too large for int64 elimination")

    def check_dims(self, *dims: int) -> None:
        if dims and self.p <= max(dims):
            raise ValueError(f"prime {self.p} must exceed matrix dimension {max(dims)}")


@dataclass(frozen=True)
class OracleConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    retries: int = 5

    @classmethod
    def from_env(cls, **kw) -> "OracleConfig":
        if "prime" not in kw or kw["prime"] is None:
            kw["prime"] = int(os.environ.get("BNCALC_PRIME", DEFAULT_PRIME))
        return cls(**{k: v for k, v in kw.items() if v is not None})

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.prime)


@lru_cache(maxsize=None)
def monomial_basis(d: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent vectors of degree-``d`` monomials in ``x, y, z``, lex descending."""
    if d < 0:
        return ()
    return tuple(
        (i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)
    )


@lru_cache(maxsize=None)
def _monomial_index(d: int) -> dict[tuple[int, int, int], int]:
    return {m: i for i, m in enumerate(monomial_basis(d))}


def rank_mod_p(mat, p: int) -> int:
    """Rank over ``GF(p)`` by Gaussian elimination."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2 or a.size == 0:
        return 0
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = (a[rank] * inv) % p
        below = a[rank + 1:, c].copy()
        nzb = np.nonzero(below)[0]
        if nzb.size:
            idx = rank + 1 + nzb
            a[idx] = (a[idx] - np.outer(below[nzb], a[rank])) % p
        rank += 1
    return rank


def nullspace_mod_p(mat, p: int) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{v : mat @ v = 0}`` over ``GF(p)``."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-a[i, fc]) % p
    return basis


@dataclass(frozen=True)
class GradedMatrix:
    """Matrix of linear forms; ``entries[i, j]`` holds the (x, y, z) coefficients."""

    rows: int
    cols: int
    entries: np.ndarray = field(repr=False, compare=False)
    seed: int
    prime: int = DEFAULT_PRIME


def random_graded_matrix(rows: int, cols: int, seed: int, prime: int = DEFAULT_PRIME) -> GradedMatrix:
    rng = np.random.default_rng(seed)
    ent = rng.integers(0, prime, size=(rows, cols, 3), dtype=np.int64)
    return GradedMatrix(rows, cols, ent, seed, prime)


def multiplication_matrix(m: GradedMatrix, source_degree: int) -> np.ndarray:
    """Matrix of ``H0(O(d))^cols -> H0(O(d+1))^rows`` induced by ``m``.

    Rows are indexed by (target summand, monomial of degree d+1), columns by
    (source summand, monomial of degree d).
    """
    src = monomial_basis(source_degree)
    tgt_idx = _monomial_index(source_degree + 1)
    nt = len(tgt_idx)
    out = np.zeros((m.rows * nt, m.cols * len(src)), dtype=np.int64)
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for j in range(m.cols):
        for s, mono in enumerate(src):
            col = j * len(src) + s
            for v, u in enumerate(units):
                t = tgt_idx[(mono[0] + u[0], mono[1] + u[1], mono[2] + u[2])]
                out[t::nt, col] = (out[t::nt, col] + m.entries[:, j, v]) % m.prime
    return out


def steiner_h0(d: SteinerData, m: int = 0, *, prime: int = DEFAULT_PRIME, seed: int = 0) -> int:
    """``h0(E(m))`` for the cokernel ``E`` of a random linear matrix of Steiner type ``d``.

    ``h0(E(m)) = (a+r) * h0(O(alpha-1+m)) - rank(M on degree alpha-2+m)``,
    valid because line bundles on the plane have no ``H1``.
    """
    if m < 0:
        raise ValueError(f"twist must be >= 0, got {m}")
    fld = PrimeField(prime)
    mat = random_graded_matrix(d.a + d.r, d.a, seed, prime)
    src_deg = d.alpha - 2 + m
    mm = multiplication_matrix(mat, src_deg)
    fld.check_dims(*mm.shape)
    # sheaf injectivity shows up as injectivity on sections in large degree
    chk_deg = max(src_deg, 0) + 2
    chk = multiplication_matrix(mat, chk_deg)
    fld.check_dims(*chk.shape)
    if rank_mod_p(chk, prime) < d.a * comb(chk_deg + 2, 2):
        raise GenericityFailure(f"matrix for {d} not injective (seed {seed})")
    return (d.a + d.r) * comb(d.alpha + m + 1, 2) - rank_mod_p(mm, prime)


def _normalize(pt: Sequence[int], p: int) -> tuple[int, int, int]:
    v = [int(c) % p for c in pt]
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ValueError("(0, 0, 0) is not a projective point")
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in v)


@dataclass(frozen=True)
class PointConfig:
    points: tuple[tuple[int, int, int], ...]
    collinear: bool = False
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        pts = tuple(_normalize(q, self.prime) for q in self.points)
        if len(set(pts)) != len(pts):
            raise ValueError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        if self.collinear and len(pts) > 2 and rank_mod_p(pts, self.prime) > 2:
            raise ValueError("points flagged collinear do not lie on a line")

    def __len__(self):
        return len(self.points)


def random_points(n: int, seed: int, prime: int = DEFAULT_PRIME, general: bool = False) -> PointConfig:
    """``n`` distinct points in the affine chart ``z = 1``.

    With ``general=True`` no three of them are collinear.
    """
    rng = np.random.default_rng(seed)
    pts: list[tuple[int, int, int]] = []
    while len(pts) < n:
        x, y = (int(c) for c in rng.integers(0, prime, size=2))
        q = (x, y, 1)
        if q in pts:
            continue
        if general and any(rank_mod_p([u, v, q], prime) < 3 for u, v in itertools.combinations(pts, 2)):
            continue
        pts.append(q)
    return PointConfig(tuple(pts), prime=prime)


def collinear_points(n: int, seed: int, prime: int = DEFAULT_PRIME, line: str = "random") -> PointConfig:
    """``n`` distinct points on a line: ``z = 0`` if ``line == "z"``, else a random line."""
    rng = np.random.default_rng(seed)
    if line == "z":
        base, direc = (1, 0, 0), (0, 1, 0)
    else:
        while True:
            base, direc = (tuple(int(c) for c in rng.integers(0, prime, size=3)) for _ in range(2))
            if rank_mod_p([base, direc], prime) == 2:
                break
    ts = rng.choice(prime, size=n, replace=False)
    pts = []
    for t in ts:
        t = int(t)
        pts.append(tuple((b + t * dd) % prime for b, dd in zip(base, direc)))
    return PointConfig(tuple(pts), collinear=True, prime=prime)


def _eval_matrix(points: Sequence[tuple[int, int, int]], k: int, p: int) -> np.ndarray:
    basis = monomial_basis(k)
    out = np.zeros((len(points), len(basis)), dtype=np.int64)
    for i, (x, y, z) in enumerate(points):
        for j, (e1, e2, e3) in enumerate(basis):
            out[i, j] = pow(x, e1, p) * pow(y, e2, p) % p * pow(z, e3, p) % p
    return out


def ideal_h0(z: PointConfig, k: int) -> int:
    """``h0(I_Z(k))``: degree-``k`` forms vanishing on the reduced points ``Z``."""
    if k < 0:
        return 0
    n = comb(k + 2, 2)
    if not z.points:
        return n
    ev = _eval_matrix(z.points, k, z.prime)
    PrimeField(z.prime).check_dims(*ev.shape)
    return n - rank_mod_p(ev, z.prime)


@dataclass(frozen=True)
class SumH0:
    h0: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.h0 <= self.bound

    @property
    def deficiency(self) -> int:
        return self.bound - self.h0


def sum_h0(components: Sequence[tuple[PointConfig, int]]) -> SumH0:
    """``h0`` of ``sum_j I_(Z_j)(k_j)`` against the section bound at ``mu_max = max k_j``."""
    if not components:
        raise ValueError("need at least one summand")
    for _, k in components:
        if k < -1:
            raise ValueError(f"twists must be >= -1, got {k}")
    h0 = sum(ideal_h0(z, k) for z, k in components)
    bound = section_bound_max(len(components), max(k for _, k in components))
    return SumH0(h0, bound)


@dataclass(frozen=True)
class TransformResult:
    h0: int
    rank_drop: int
    h0_steiner: int


def elementary_transform_h0(
    d: SteinerData, num_points: int, *, prime: int = DEFAULT_PRIME, seed: int = 0
) -> TransformResult:
    """Sections of the kernel ``F'`` of ``F -> F|_L -> O_L(alpha-1) -> O_Z``.

    ``F`` is the Steiner bundle of a random matrix ``M``, ``L`` is ``z = 0``,
    the quotient ``F|_L -> O_L(alpha-1)`` is a constant covector ``w`` with
    ``w.M = 0`` modulo ``z``, and ``Z`` is ``num_points`` distinct points of
    ``L``.  Returns ``h0(F) - rank(H0(F) -> H0(O_Z))`` and that rank.
    """
    if golden_test(d.a, d.r) is not Golden.ABOVE:
        raise ValueError(f"need a/r > phi - 1 for {d}")
    if num_points < 1:
        raise ValueError("need at least one point")
    fld = PrimeField(prime)
    nt = d.a + d.r
    mat = random_graded_matrix(nt, d.a, seed, prime)

    # w . M[:, j] has no x or y coefficient: 2a conditions on a+r unknowns
    cond = np.concatenate([mat.entries[:, :, 0].T, mat.entries[:, :, 1].T], axis=0)
    ker = nullspace_mod_p(cond, prime)
    if ker.shape[0] == 0:
        raise InfeasibleQuotient(f"no covector kills M along L for {d}")
    rng = np.random.default_rng([seed, 1])
    coeffs = rng.integers(0, prime, size=ker.shape[0], dtype=np.int64)
    w = (coeffs @ ker) % prime
    if not w.any():
        raise GenericityFailure("zero covector drawn")

    h0_f = steiner_h0(d, 0, prime=prime, seed=seed)
    zpts = collinear_points(num_points, seed, prime, line="z").points

    # evaluation of sum_i w_i s_i at Z, on the free module H0(O(alpha-1))^(a+r)
    ev = _eval_matrix(zpts, d.alpha - 1, prime)
    nb = ev.shape[1]
    comp = np.zeros((num_points, nt * nb), dtype=np.int64)
    for i in range(nt):
        comp[:, i * nb:(i + 1) * nb] = ev * w[i] % prime
    fld.check_dims(*comp.shape)

    # the composite must vanish on the image of M, i.e. descend to H0(F)
    img = multiplication_matrix(mat, d.alpha - 2)
    if img.size and ((comp @ img) % prime).any():
        raise AssertionError("evaluation does not kill the image of M")

    rk = rank_mod_p(comp, prime)
    return TransformResult(h0_f - rk, rk, h0_f)


def h1_report(d: SteinerData, chi: int | None = None, *, prime: int = DEFAULT_PRIME, seed: int = 0) -> int:
    """``h1 = h0 - chi`` (``h2`` vanishes for these families).

    With ``chi is None`` this is the plain Steiner bundle; otherwise the
    elementary transformation along ``chi(F) - chi`` points of a line.
    ``chi(F)`` is read off the resolution, not from the oracle's ``h0``.
    """
    chi_f = (d.a + d.r) * comb(d.alpha + 1, 2) - d.a * comb(d.alpha, 2)
    if chi is None:
        return steiner_h0(d, 0, prime=prime, seed=seed) - chi_f
    t = elementary_transform_h0(d, chi_f - chi, prime=prime, seed=seed)
    return t.h0 - chi


def with_retries(fn: Callable[[int], T], seed: int = 0, retries: int = 5) -> T:
    """Call ``fn(seed)``, moving to the next seed on ``GenericityFailure``."""
    last = None
    for s in range(seed, seed + retries):
        try:
            return fn(s)
        except GenericityFailure as exc:
            last = exc
    raise GenericityFailure(f"{retries} seeds from {seed} all degenerate") from last
