"""Integer flows on the Cayley graph of Z^n and exact group-element arithmetic.

A word traces an edge path in the grid graph on Z^n; summing +-1 per traversed
edge gives a sparse integer 1-chain.  The pair (chain, endpoint) is a faithful
canonical form for elements of the free metabelian group, so equality, products
and inverses of group elements reduce to sparse-chain arithmetic.

Edges are stored in positive orientation only: the key ``(base, dir)`` stands
for the edge base -> base + e_dir, and traversing it backwards contributes a
-1 coefficient.  Canonical edge order is lexicographic on (base, dir).
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import GroupWord

LatticePoint = tuple[int, ...]
GridEdge = tuple[LatticePoint, int]


@dataclass(frozen=True)
class Flow:
    """Sparse 1-chain: no zero coefficients are stored."""

    rank: int
    coeffs: dict[GridEdge, int]

    def __eq__(self, other):
        if not isinstance(other, Flow):
            return NotImplemented
        return self.rank == other.rank and self.coeffs == other.coeffs

    def items_canonical(self):
        return sorted(self.coeffs.items())


@dataclass(frozen=True)
class Element:
    """Canonical form of a free metabelian group element: chain plus endpoint."""

    chain: Flow
    endpoint: LatticePoint

    @property
    def rank(self) -> int:
        return self.chain.rank


def zero_point(rank: int) -> LatticePoint:
    return (0,) * rank


def add_points(u: LatticePoint, v: LatticePoint) -> LatticePoint:
    return tuple(a + b for a, b in zip(u, v))


def sub_points(u: LatticePoint, v: LatticePoint) -> LatticePoint:
    return tuple(a - b for a, b in zip(u, v))


def neg_point(v: LatticePoint) -> LatticePoint:
    return tuple(-a for a in v)


def l1_norm(v: LatticePoint) -> int:
    return sum(abs(a) for a in v)


def element(w: GroupWord) -> Element:
    """Walk the path labeled by w from the origin and collect its edge chain.

    One pass, O(length) sparse updates; invariant under free reduction of w.
    A positive letter adds +1 on the edge based at the current vertex, a
    negative letter adds -1 on the edge based at the destination.
    """
    rank = w.rank
    coeffs: dict[GridEdge, int] = {}
    pos = [0] * rank
    get = coeffs.get
    for g, s in w.letters:
        i = g - 1
        if s > 0:
            key = (tuple(pos), g)
            pos[i] += 1
        else:
            pos[i] -= 1
            key = (tuple(pos), g)
        c = get(key, 0) + s
        if c:
            coeffs[key] = c
        else:
            del coeffs[key]
    return Element(Flow(rank, coeffs), tuple(pos))


def identity(rank: int) -> Element:
    return Element(Flow(rank, {}), zero_point(rank))


def shift(c: Flow, v: LatticePoint) -> Flow:
    """Translate every edge base by v; coefficients are unchanged."""
    if len(v) != c.rank:
        raise ValueError("rank mismatch")
    if not any(v):
        return c
    return Flow(c.rank, {(add_points(b, v), d): k for (b, d), k in c.coeffs.items()})


def _merge(dst: dict, src: dict, v: LatticePoint | None = None, sign: int = 1) -> None:
    # dst += sign * (src shifted by v), in place
    get = dst.get
    if v is None or not any(v):
        for key, k in src.items():
            c = get(key, 0) + sign * k
            if c:
                dst[key] = c
            else:
                del dst[key]
    else:
        for (b, d), k in src.items():
            key = (add_points(b, v), d)
            c = get(key, 0) + sign * k
            if c:
                dst[key] = c
            else:
                del dst[key]


def multiply(g: Element, h: Element) -> Element:
    """Product rule: the second factor's chain is shifted by the first endpoint."""
    if g.rank != h.rank:
        raise ValueError("rank mismatch")
    coeffs = dict(g.chain.coeffs)
    _merge(coeffs, h.chain.coeffs, g.endpoint)
    return Element(Flow(g.rank, coeffs), add_points(g.endpoint, h.endpoint))


def invert(g: Element) -> Element:
    """Inverse element: negated chain shifted back by the endpoint."""
    coeffs: dict[GridEdge, int] = {}
    _merge(coeffs, g.chain.coeffs, neg_point(g.endpoint), -1)
    return Element(Flow(g.rank, coeffs), neg_point(g.endpoint))


def boundary(c: Flow) -> dict[LatticePoint, int]:
    """0-chain boundary: each edge (b; i) with coefficient k gives +k at b+e_i, -k at b."""
    out: dict[LatticePoint, int] = {}
    get = out.get
    for (b, d), k in c.coeffs.items():
        head = b[: d - 1] + (b[d - 1] + 1,) + b[d:]
        v = get(head, 0) + k
        if v:
            out[head] = v
        else:
            del out[head]
        v = get(b, 0) - k
        if v:
            out[b] = v
        else:
            del out[b]
    return out


def words_equal(u: GroupWord, w: GroupWord) -> bool:
    """True iff u and w represent the same free metabelian group element."""
    if u.rank != w.rank:
        raise ValueError("rank mismatch")
    return element(u) == element(w)


def element_key(g: Element):
    """Hashable canonical key for an element (used for deduplication)."""
    return (tuple(g.chain.items_canonical()), g.endpoint)


def dump_flow(c: Flow) -> str:
    """Debug dump, one line per edge in canonical order: ``(<coords>;<dir>) <coeff>``."""
    lines = []
    for (b, d), k in c.items_canonical():
        coords = ",".join(str(x) for x in b)
        lines.append(f"({coords};{d}) {k}")
    return "\n".join(lines)
