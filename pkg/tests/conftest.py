"""Shared generators for words and desk-scale equation instances."""

from __future__ import annotations

import random
from itertools import product

from sphereq.words import GroupWord, Letter, from_ints


def all_words(rank: int, max_len: int):
    """Every word (reduced or not) of length <= max_len, shortest first."""
    alphabet = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    for length in range(max_len + 1):
        for combo in product(alphabet, repeat=length):
            yield from_ints(rank, combo)


def all_reduced_words(rank: int, max_len: int):
    """Every freely reduced word of length <= max_len, shortest first."""
    alphabet = [s * g for g in range(1, rank + 1) for s in (1, -1)]
    frontier = [()]
    yield from_ints(rank, ())
    for _ in range(max_len):
        next_frontier = []
        for w in frontier:
            for x in alphabet:
                if w and w[-1] == -x:
                    continue
                nw = w + (x,)
                next_frontier.append(nw)
                yield from_ints(rank, nw)
        frontier = next_frontier


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> GroupWord:
    n = rng.randint(min_len, max_len)
    return from_ints(
        rank, [rng.choice((1, -1)) * rng.randint(1, rank) for _ in range(n)]
    )


def random_instance_words(rng: random.Random, rank: int, m: int, max_len: int):
    """m nonempty constants of length 1..max_len each."""
    return tuple(random_word(rng, rank, max_len, min_len=1) for _ in range(m))
