"""Spherical quadratic equations in free metabelian groups.

Elements are represented faithfully as integer flows on the Cayley graph of
Z^n; an equation z_1 c_1 z_1^-1 ... z_m c_m z_m^-1 = 1 is decided by searching
for shifts of the constants' quotient chains with zero sum, inside a proven
l1 bound.  Includes certificate verification, brute-force oracles and a
square-packing encoder.
"""

from .flows import (
    Element,
    Flow,
    boundary,
    dump_flow,
    element,
    identity,
    invert,
    multiply,
    shift,
    words_equal,
)
from .lattice import QuotientSpec, build_spec, canonicalize, contains
from .oracle import (
    WitnessTuple,
    brute_force_solve,
    enumerate_elements,
    iter_witnesses,
    kernel_generator_a,
    kernel_generator_b,
    substitute,
)
from .packing import (
    CertificateInvalidError,
    NotPerfectSquareError,
    PackingInstance,
    Placement,
    decode_certificate,
    encode,
    make_instance,
    pack_brute_force,
)
from .quotient import (
    QuotientChain,
    add_chains,
    dump_chain,
    negate_chain,
    project,
    shift_chain,
    support,
)
from .solver import (
    Certificate,
    SolverInstance,
    SphericalEquation,
    Verdict,
    build_instance,
    solve,
    solve_conjugacy,
    verify_certificate,
)
from .words import (
    GroupWord,
    Letter,
    WordSyntaxError,
    commutator,
    concat,
    conjugate,
    format_word,
    free_reduce,
    from_ints,
    generator_power,
    identity_word,
    inverse,
    parse_word,
)

__version__ = "0.1.0"
