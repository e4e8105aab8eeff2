"""Integer sublattices of Z^n in Hermite normal form, with coset canonicalization.

The quotient graph that the solver works in is the grid graph modulo the
sublattice spanned by the abelianized constants.  A Hermite-normal-form basis
gives a unique representative per coset: pivot entries are positive, entries
above each pivot are reduced into [0, pivot), and pivot columns strictly
increase row by row.  Exact integer arithmetic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .flows import LatticePoint


@dataclass(frozen=True)
class QuotientSpec:
    """A sublattice of Z^rank: original generators plus an HNF basis with pivots."""

    rank: int
    generators: tuple[LatticePoint, ...]
    basis: tuple[LatticePoint, ...]
    pivots: tuple[int, ...]

    @property
    def is_trivial(self) -> bool:
        return not self.basis


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (x, y, g) with x*a + y*b == g == gcd(a, b), g >= 0 for (a, b) != (0, 0)
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def build_spec(gens: Iterable[LatticePoint], rank: int) -> QuotientSpec:
    """Compute the HNF basis of the span of gens.

    Insertion keeps the working rows in echelon form (gcd row operations per
    column); a final pass normalizes pivot signs and reduces entries above each
    pivot into [0, pivot).  The result depends only on the spanned lattice, so
    it is deterministic for any generator multiset.
    """
    gens = tuple(tuple(g) for g in gens)
    if any(len(g) != rank for g in gens):
        raise ValueError("rank mismatch")
    rows: list[list[int]] = []  # kept sorted by pivot column
    for g in gens:
        _insert(rows, list(g), rank)
    # reduce above-pivot entries; rows[i] has zeros left of its pivot, so later
    # reductions never disturb earlier pivots
    for i, row in enumerate(rows):
        p = _pivot_col(row)
        for k in range(i):
            q = rows[k][p] // row[p]
            if q:
                for j in range(p, rank):
                    rows[k][j] -= q * row[j]
    basis = tuple(tuple(r) for r in rows)
    pivots = tuple(_pivot_col(r) for r in rows)
    return QuotientSpec(rank, gens, basis, pivots)


def _pivot_col(row: list[int] | tuple[int, ...]) -> int:
    for j, v in enumerate(row):
        if v:
            return j
    raise ValueError("zero row has no pivot")


def _insert(rows: list[list[int]], v: list[int], rank: int) -> None:
    while True:
        j = next((i for i, x in enumerate(v) if x), None)
        if j is None:
            return  # v reduced to zero, nothing to add
        p = next((i for i, r in enumerate(rows) if _pivot_col(r) == j), None)
        if p is None:
            if v[j] < 0:
                v = [-x for x in v]
            where = sum(1 for r in rows if _pivot_col(r) < j)
            rows.insert(where, v)
            return
        row = rows[p]
        a, b = row[j], v[j]
        if b % a == 0:
            q = b // a
            for i in range(j, rank):
                v[i] -= q * row[i]
        else:
            x, y, g = _xgcd(a, b)
            ag, bg = a // g, b // g
            for i in range(j, rank):
                ri, vi = row[i], v[i]
                row[i] = x * ri + y * vi
                v[i] = ag * vi - bg * ri


def canonicalize(v: LatticePoint, spec: QuotientSpec) -> LatticePoint:
    """The unique coset representative of v + L, reducing against pivots in order."""
    if len(v) != spec.rank:
        raise ValueError("rank mismatch")
    if not spec.basis:
        return tuple(v)
    w = list(v)
    for row, p in zip(spec.basis, spec.pivots):
        q = w[p] // row[p]
        if q:
            for j in range(p, spec.rank):
                w[j] -= q * row[j]
    return tuple(w)


def contains(v: LatticePoint, spec: QuotientSpec) -> bool:
    """True iff v lies in the sublattice."""
    return not any(canonicalize(v, spec))
