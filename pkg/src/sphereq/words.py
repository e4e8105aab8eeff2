"""Words over the free generators a_1..a_n and their formal inverses.

A word is a finite sequence of letters; tokens are written ``a<k>`` for the
generator a_k and ``A<k>`` for its inverse, whitespace separated, so any rank
is representable.  Words are *not* reduced implicitly anywhere: the letter
sequence as supplied is the unit of length accounting downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class WordSyntaxError(ValueError):
    """Malformed word text or a generator index outside 1..rank."""


class Letter(NamedTuple):
    gen: int   # generator index, 1-based
    sign: int  # +1 for a<k>, -1 for A<k>


@dataclass(frozen=True)
class GroupWord:
    rank: int
    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)


_TOKEN = re.compile(r"^([aA])([0-9]+)$")


def parse_word(text: str, rank: int) -> GroupWord:
    """Parse whitespace-separated ``a<k>``/``A<k>`` tokens into a GroupWord.

    The empty string parses to the identity.  No free reduction is applied.
    """
    if rank < 1:
        raise ValueError(f"rank must be positive, got {rank}")
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if m is None:
            raise WordSyntaxError(f"malformed token {token!r}")
        gen = int(m.group(2))
        if gen < 1 or gen > rank:
            raise WordSyntaxError(
                f"generator index {gen} out of range 1..{rank} in token {token!r}"
            )
        letters.append(Letter(gen, 1 if m.group(1) == "a" else -1))
    return GroupWord(rank, tuple(letters))


def format_word(w: GroupWord) -> str:
    """Inverse of parse_word: the identity formats as the empty string."""
    return " ".join(f"a{g}" if s > 0 else f"A{g}" for g, s in w.letters)


def free_reduce(w: GroupWord) -> GroupWord:
    """Cancel adjacent inverse pairs until none remain.  Idempotent."""
    stack: list[Letter] = []
    for let in w.letters:
        if stack and stack[-1].gen == let.gen and stack[-1].sign == -let.sign:
            stack.pop()
        else:
            stack.append(let)
    return GroupWord(w.rank, tuple(stack))


def identity_word(rank: int) -> GroupWord:
    return GroupWord(rank, ())


def from_ints(rank: int, signed: Iterable[int]) -> GroupWord:
    """Build a word from signed generator indices (+k means a_k, -k means A_k)."""
    letters = []
    for v in signed:
        if v == 0 or abs(v) > rank:
            raise WordSyntaxError(f"signed index {v} out of range for rank {rank}")
        letters.append(Letter(abs(v), 1 if v > 0 else -1))
    return GroupWord(rank, tuple(letters))


def concat(*ws: GroupWord) -> GroupWord:
    if not ws:
        raise ValueError("concat needs at least one word")
    rank = ws[0].rank
    if any(w.rank != rank for w in ws):
        raise ValueError("rank mismatch")
    letters: tuple[Letter, ...] = ()
    for w in ws:
        letters += w.letters
    return GroupWord(rank, letters)


def inverse(w: GroupWord) -> GroupWord:
    return GroupWord(w.rank, tuple(Letter(g, -s) for g, s in reversed(w.letters)))


def generator_power(rank: int, gen: int, power: int) -> GroupWord:
    """The word a_gen^power (A_gen letters for negative powers)."""
    if gen < 1 or gen > rank:
        raise WordSyntaxError(f"generator index {gen} out of range 1..{rank}")
    sign = 1 if power >= 0 else -1
    return GroupWord(rank, (Letter(gen, sign),) * abs(power))


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    """The literal word x y x^-1 y^-1."""
    return concat(x, y, inverse(x), inverse(y))


def conjugate(x: GroupWord, h: GroupWord) -> GroupWord:
    """The literal word h^-1 x h."""
    return concat(inverse(h), x, h)
