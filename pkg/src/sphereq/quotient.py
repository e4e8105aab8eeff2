"""Sparse 1-chains on the quotient of the grid graph by a sublattice.

Edge bases are kept canonical under the owning QuotientSpec at all times, so
chain equality is a plain sparse-map comparison.  Operations refuse to mix
chains built over different specs: silent cross-quotient arithmetic is the
most likely correctness hazard in this code base.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flows import Element, GridEdge, LatticePoint, add_points
from .lattice import QuotientSpec, canonicalize


@dataclass(frozen=True)
class QuotientChain:
    spec: QuotientSpec
    coeffs: dict[GridEdge, int]

    def __eq__(self, other):
        if not isinstance(other, QuotientChain):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def items_canonical(self):
        return sorted(self.coeffs.items())


def chain_from_items(spec: QuotientSpec, items) -> QuotientChain:
    """Build a chain, canonicalizing bases and merging coinciding edges."""
    coeffs: dict[GridEdge, int] = {}
    get = coeffs.get
    for (b, d), k in items:
        key = (canonicalize(b, spec), d)
        c = get(key, 0) + k
        if c:
            coeffs[key] = c
        else:
            del coeffs[key]
    return QuotientChain(spec, coeffs)


def zero_chain(spec: QuotientSpec) -> QuotientChain:
    return QuotientChain(spec, {})


def project(g: Element, spec: QuotientSpec) -> QuotientChain:
    """Image of an element's grid chain in the quotient graph."""
    if g.rank != spec.rank:
        raise ValueError("rank mismatch")
    return chain_from_items(spec, g.chain.coeffs.items())


def shift_chain(t: QuotientChain, v: LatticePoint) -> QuotientChain:
    """Translate by v; shifts by lattice vectors leave the chain unchanged."""
    if len(v) != t.spec.rank:
        raise ValueError("rank mismatch")
    if not any(v):
        return t
    return chain_from_items(
        t.spec, (((add_points(b, v), d), k) for (b, d), k in t.coeffs.items())
    )


def add_chains(t1: QuotientChain, t2: QuotientChain) -> QuotientChain:
    if t1.spec != t2.spec:
        raise ValueError("chains built over different quotient specs")
    coeffs = dict(t1.coeffs)
    get = coeffs.get
    for key, k in t2.coeffs.items():
        c = get(key, 0) + k
        if c:
            coeffs[key] = c
        else:
            del coeffs[key]
    return QuotientChain(t1.spec, coeffs)


def negate_chain(t: QuotientChain) -> QuotientChain:
    return QuotientChain(t.spec, {key: -k for key, k in t.coeffs.items()})


def support(t: QuotientChain) -> set[GridEdge]:
    """Edges with nonzero coefficient (multiplicity ignored)."""
    return set(t.coeffs)


def dump_chain(t: QuotientChain) -> str:
    """Same debug format as flows.dump_flow, with canonical bases."""
    lines = []
    for (b, d), k in t.items_canonical():
        coords = ",".join(str(x) for x in b)
        lines.append(f"({coords};{d}) {k}")
    return "\n".join(lines)
