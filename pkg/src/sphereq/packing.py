"""Square packing puzzles as spherical equations, and an independent geometric solver.

A set of squares exactly tiles a box of matching area iff the equation whose
constants are one reversed box contour and one contour per piece is solvable:
the commutator word with exponent s traces the counterclockwise contour of
the grid square [0, s]^2, and a sum of piece contours equals the box contour
exactly when the pieces tile the box (interior edges cancel in pairs).

The geometric search here never touches chain machinery, so it cross-checks
the reduction itself.  Side lengths are unary-size inputs for complexity
accounting: instance size is the sum of the sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .flows import LatticePoint, sub_points
from .solver import Certificate, SphericalEquation, SolverInstance, verify_certificate
from .words import GroupWord, commutator, generator_power


class NotPerfectSquareError(ValueError):
    """The side lengths' total area has no integer square root."""


class CertificateInvalidError(ValueError):
    """A certificate that does not decode to a valid placement."""


@dataclass(frozen=True)
class PackingInstance:
    sides: tuple[int, ...]
    box: int

    def __post_init__(self):
        if not self.sides or any(s < 1 for s in self.sides):
            raise ValueError("sides must be positive integers")
        if self.box * self.box != sum(s * s for s in self.sides):
            raise ValueError("box area does not match the total piece area")

    @property
    def unary_size(self) -> int:
        return sum(self.sides)


def make_instance(sides) -> PackingInstance:
    sides = tuple(int(s) for s in sides)
    area = sum(s * s for s in sides)
    box = math.isqrt(area)
    if box * box != area:
        raise NotPerfectSquareError(f"total area {area} is not a perfect square")
    return PackingInstance(sides, box)


@dataclass(frozen=True)
class Placement:
    box: int
    offsets: tuple[LatticePoint, ...]


def _square_contour_word(rank2_first: int, rank2_second: int, side: int) -> GroupWord:
    return commutator(
        generator_power(2, rank2_first, side), generator_power(2, rank2_second, side)
    )


def encode(sides) -> SphericalEquation:
    """Constants: reversed box contour first, then one piece contour per side."""
    inst = make_instance(sides)
    constants = [_square_contour_word(2, 1, inst.box)]
    constants += [_square_contour_word(1, 2, s) for s in inst.sides]
    eq = SphericalEquation(2, tuple(constants))
    # commutators abelianize to zero, so the quotient lattice must be trivial
    assert all(
        sum(s for g, s in c.letters if g == 1) == 0
        and sum(s for g, s in c.letters if g == 2) == 0
        for c in eq.constants
    )
    return eq


def pack_brute_force(inst: PackingInstance) -> Placement | None:
    """First-found exact packing under scanline order, or None.

    Pieces are taken largest first; each step targets the lowest-leftmost
    empty cell, which the next piece's lower-left corner must cover.
    """
    n0 = inst.box
    order = sorted(range(len(inst.sides)), key=lambda i: -inst.sides[i])
    grid = [[False] * n0 for _ in range(n0)]  # grid[y][x]
    offsets: dict[int, tuple[int, int]] = {}

    def next_empty():
        for y in range(n0):
            for x in range(n0):
                if not grid[y][x]:
                    return x, y
        return None

    def fits(x, y, s):
        if x + s > n0 or y + s > n0:
            return False
        return all(not grid[y + dy][x + dx] for dy in range(s) for dx in range(s))

    def fill(x, y, s, value):
        for dy in range(s):
            for dx in range(s):
                grid[y + dy][x + dx] = value

    def rec(remaining):
        if not remaining:
            return True
        cell = next_empty()
        if cell is None:
            return False
        x, y = cell
        tried_sizes = set()
        for pos, idx in enumerate(remaining):
            s = inst.sides[idx]
            if s in tried_sizes:
                continue  # identical pieces are interchangeable
            tried_sizes.add(s)
            if not fits(x, y, s):
                continue
            fill(x, y, s, True)
            offsets[idx] = (x, y)
            if rec(remaining[:pos] + remaining[pos + 1 :]):
                return True
            fill(x, y, s, False)
            del offsets[idx]
        return False

    if rec(order):
        return Placement(n0, tuple(offsets[i] for i in range(len(inst.sides))))
    return None


def validate_placement(inst: PackingInstance, placement: Placement) -> None:
    """Raise CertificateInvalidError unless the placement is an exact packing."""
    n0 = inst.box
    if placement.box != n0 or len(placement.offsets) != len(inst.sides):
        raise CertificateInvalidError("placement shape does not match the instance")
    covered = [[0] * n0 for _ in range(n0)]
    for (x, y), s in zip(placement.offsets, inst.sides):
        if x < 0 or y < 0 or x + s > n0 or y + s > n0:
            raise CertificateInvalidError(f"piece of side {s} at ({x}, {y}) leaves the box")
        for dy in range(s):
            for dx in range(s):
                covered[y + dy][x + dx] += 1
    if any(c != 1 for row in covered for c in row):
        raise CertificateInvalidError("pieces overlap or leave gaps")


def decode_certificate(
    inst: PackingInstance,
    cert: Certificate,
    solver_instance: SolverInstance | None = None,
) -> Placement:
    """Read piece offsets out of a verifying certificate.

    The equation is invariant under a common shift of all alphas, so the box's
    alpha is subtracted first; piece i then sits with its lower-left corner at
    alpha_i - alpha_0.  The decoded placement is validated and failure raises.
    """
    if solver_instance is None:
        from .solver import build_instance

        solver_instance = build_instance(encode(inst.sides))
    if not verify_certificate(solver_instance, cert):
        raise CertificateInvalidError("certificate does not verify against the equation")
    alpha0 = cert.alphas[0]
    offsets = tuple(sub_points(a, alpha0) for a in cert.alphas[1:])
    placement = Placement(inst.box, offsets)
    validate_placement(inst, placement)
    return placement


def placement_to_dict(placement: Placement) -> dict:
    return {"box": placement.box, "offsets": [list(o) for o in placement.offsets]}


def render_ascii(inst: PackingInstance, placement: Placement) -> str:
    """Character grid of the packing, top row printed first."""
    n0 = inst.box
    symbols = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    grid = [["."] * n0 for _ in range(n0)]
    for i, ((x, y), s) in enumerate(zip(placement.offsets, inst.sides)):
        ch = symbols[i % len(symbols)]
        for dy in range(s):
            for dx in range(s):
                grid[y + dy][x + dx] = ch
    return "\n".join("".join(row) for row in reversed(grid))
