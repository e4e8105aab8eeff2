"""Independent brute-force search for solution tuples, plus kernel generators.

This module validates the solver and deliberately shares none of its search
machinery: everything here is direct word-level arithmetic through the
canonical element form.  Breadth-first enumeration over the 2n-letter
alphabet, deduplicated by element, covers every group element of bounded
length exactly once; substituted tuples are then checked by multiplying the
conjugated constants together.  Exponential by design, desk-scale only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .flows import (
    Element,
    LatticePoint,
    element,
    element_key,
    identity,
    invert,
    multiply,
    shift,
)
from .solver import SphericalEquation
from .words import GroupWord, Letter, commutator, concat, conjugate, identity_word, inverse


@dataclass(frozen=True)
class WitnessTuple:
    words: tuple[GroupWord, ...]


_ELEMENT_CACHE: dict[tuple[int, int], list] = {}


def enumerate_elements(rank: int, max_len: int) -> list[tuple[GroupWord, Element]]:
    """All distinct group elements with a representative of length <= max_len.

    BFS over freely reduced words; each element is kept with its first
    (shortest, lex-least) representative.  Results are cached; treat the
    returned list as read-only.
    """
    cached = _ELEMENT_CACHE.get((rank, max_len))
    if cached is not None:
        return cached
    ident = (identity_word(rank), identity(rank))
    out = [ident]
    seen = {element_key(ident[1])}
    frontier = [ident]
    gens = [(g, s) for g in range(1, rank + 1) for s in (1, -1)]
    gen_elements = {(g, s): element(GroupWord(rank, (Letter(g, s),))) for g, s in gens}
    for _ in range(max_len):
        next_frontier = []
        for w, img in frontier:
            for g, s in gens:
                if w.letters and w.letters[-1] == (g, -s):
                    continue  # appending the inverse of the last letter cancels
                nimg = multiply(img, gen_elements[(g, s)])
                key = element_key(nimg)
                if key in seen:
                    continue
                seen.add(key)
                next_frontier.append((GroupWord(rank, w.letters + (Letter(g, s),)), nimg))
        out.extend(next_frontier)
        frontier = next_frontier
    _ELEMENT_CACHE[(rank, max_len)] = out
    return out


def _chain_key(coeffs: dict):
    return tuple(sorted(coeffs.items()))


def _add_dicts(a: dict, b: dict) -> dict:
    out = dict(a)
    get = out.get
    for key, k in b.items():
        c = get(key, 0) + k
        if c:
            out[key] = c
        else:
            del out[key]
    return out


def _shifted_conjugate_chains(c: GroupWord, offset, elements) -> dict:
    """chain key of (u c u^-1 shifted by offset) -> (first u, that chain).

    Conjugation preserves the abelianization, so within one slot the shifted
    chain determines the conjugate value and first-seen deduplication keeps
    one witness per value.
    """
    cimg = element(c)
    table: dict = {}
    for u, uimg in elements:
        val = multiply(multiply(uimg, cimg), invert(uimg))
        coeffs = shift(val.chain, offset).coeffs
        key = _chain_key(coeffs)
        if key not in table:
            table[key] = (u, coeffs)
    return table


def iter_witnesses(
    eq: SphericalEquation,
    max_len: int,
    endpoint_filters: Sequence[Callable[[LatticePoint], bool]] | None = None,
) -> Iterator[WitnessTuple]:
    """Witness tuples (one u_i per distinct conjugate value), lazily.

    The substituted word's abelianization is the sum of the constants' ones
    whatever the u_i are, so a nonzero sum means no witnesses at all.
    Otherwise the product's chain decomposes as a sum of the conjugates'
    chains shifted by fixed prefix offsets; tuples over all slots but one are
    scanned and the remaining chain is solved for by hash lookup, with the
    largest conjugate set as the looked-up one.

    endpoint_filters optionally restricts, per slot, which conjugators u are
    admitted (by their abelianization).
    """
    m = len(eq.constants)
    rank = eq.rank
    offsets = []
    total = [0] * rank
    for c in eq.constants:
        offsets.append(tuple(total))
        for g, s in c.letters:
            total[g - 1] += s
    if any(total):
        return
    elements = enumerate_elements(rank, max_len)
    pools = [elements] * m
    if endpoint_filters is not None:
        pools = [
            [(u, img) for u, img in elements if f(img.endpoint)]
            for f in endpoint_filters
        ]
    tables = [
        _shifted_conjugate_chains(c, off, pool)
        for c, off, pool in zip(eq.constants, offsets, pools)
    ]
    solved = max(range(m), key=lambda i: len(tables[i]))
    scan = [i for i in range(m) if i != solved]
    # lookup table for the solved slot, keyed by the negated chain
    negated = {}
    for u, coeffs in tables[solved].values():
        nkey = _chain_key({e: -k for e, k in coeffs.items()})
        if nkey not in negated:
            negated[nkey] = u
    sizes = {len(key) for key in negated}

    def rec(pos, partial, chosen):
        if pos == len(scan):
            if len(partial) not in sizes:
                return
            hit = negated.get(_chain_key(partial))
            if hit is not None:
                witness = [None] * m
                witness[solved] = hit
                for i, u in zip(scan, chosen):
                    witness[i] = u
                yield WitnessTuple(tuple(witness))
            return
        i = scan[pos]
        for u, coeffs in tables[i].values():
            yield from rec(pos + 1, _add_dicts(partial, coeffs), chosen + [u])

    yield from rec(0, {}, [])


def brute_force_solve(eq: SphericalEquation, max_len: int) -> Optional[WitnessTuple]:
    """First witness tuple with all |u_i| <= max_len, or None."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    for witness in iter_witnesses(eq, max_len):
        return witness
    return None


def substitute(eq: SphericalEquation, witness: WitnessTuple) -> GroupWord:
    """The literal word u_1 c_1 u_1^-1 ... u_m c_m u_m^-1."""
    parts = [concat(u, c, inverse(u)) for u, c in zip(witness.words, eq.constants)]
    return concat(*parts)


def kernel_generator_a(
    i: int, j: int, h: GroupWord, k: int, eq: SphericalEquation
) -> GroupWord:
    """The word [[a_i, a_j]^h, c_k]; its chain vanishes in the instance's quotient."""
    rank = eq.rank
    if not (1 <= i <= rank and 1 <= j <= rank):
        raise IndexError(f"generator indices ({i}, {j}) out of range 1..{rank}")
    if not (1 <= k <= len(eq.constants)):
        raise IndexError(f"constant index {k} out of range 1..{len(eq.constants)}")
    basic = commutator(
        GroupWord(rank, (Letter(i, 1),)), GroupWord(rank, (Letter(j, 1),))
    )
    return commutator(conjugate(basic, h), eq.constants[k - 1])


def kernel_generator_b(i: int, j: int, eq: SphericalEquation) -> GroupWord:
    """The word [c_i, c_j]; its chain vanishes in the instance's quotient."""
    m = len(eq.constants)
    if not (1 <= i <= m and 1 <= j <= m):
        raise IndexError(f"constant indices ({i}, {j}) out of range 1..{m}")
    return commutator(eq.constants[i - 1], eq.constants[j - 1])
