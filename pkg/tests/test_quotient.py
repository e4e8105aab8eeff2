import random

import pytest

from sphereq.flows import element, multiply
from sphereq.lattice import build_spec
from sphereq.quotient import (
    add_chains,
    dump_chain,
    negate_chain,
    project,
    shift_chain,
    support,
    zero_chain,
)
from sphereq.words import commutator, parse_word

from conftest import random_word


def test_project_trivial_spec_keeps_chain():
    spec = build_spec([], 2)
    g = element(parse_word("a1 a2 A1 A2", 2))
    t = project(g, spec)
    assert t.coeffs == g.chain.coeffs


def test_project_wraps_line():
    spec = build_spec([(1, 0)], 2)
    t = project(element(parse_word("a1 a1 a1", 2)), spec)
    assert t.coeffs == {((0, 0), 1): 3}


def test_project_kernel_word_vanishes():
    spec = build_spec([(1, 0)], 2)
    w = commutator(commutator(parse_word("a1", 2), parse_word("a2", 2)), parse_word("a1", 2))
    assert project(element(w), spec).is_zero()


def test_shift_chain_examples():
    spec = build_spec([], 2)
    t = project(element(parse_word("a1", 2)), spec)
    assert shift_chain(t, (0, 0)) == t
    assert shift_chain(t, (1, 0)).coeffs == {((1, 0), 1): 1}


def test_shift_chain_lattice_invariance():
    spec = build_spec([(1, 0)], 2)
    rng = random.Random(17)
    for _ in range(50):
        t = project(element(random_word(rng, 2, 6)), spec)
        assert shift_chain(t, (3, 2)) == shift_chain(t, (0, 2))
        assert shift_chain(t, (5, 0)) == t


def test_shift_chain_composes():
    spec = build_spec([(2, 1)], 2)
    rng = random.Random(18)
    for _ in range(50):
        t = project(element(random_word(rng, 2, 6)), spec)
        u = (rng.randint(-3, 3), rng.randint(-3, 3))
        v = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert shift_chain(shift_chain(t, u), v) == shift_chain(t, tuple(a + b for a, b in zip(u, v)))


def test_support():
    spec = build_spec([], 2)
    assert support(zero_chain(spec)) == set()
    sq = project(element(parse_word("a1 a2 A1 A2", 2)), spec)
    assert support(sq) == {((0, 0), 1), ((1, 0), 2), ((0, 1), 1), ((0, 0), 2)}
    line = project(element(parse_word("a1 a1 a1", 2)), build_spec([(1, 0)], 2))
    assert support(line) == {((0, 0), 1)}


def test_project_additive_on_cycles():
    spec = build_spec([(2, 0)], 2)
    rng = random.Random(19)
    count = 0
    while count < 50:
        u = random_word(rng, 2, 6)
        w = random_word(rng, 2, 6)
        g, h = element(u), element(w)
        if any(g.endpoint) or any(h.endpoint):
            continue
        count += 1
        assert project(multiply(g, h), spec) == add_chains(project(g, spec), project(h, spec))


def test_operations_refuse_spec_mixing():
    t1 = project(element(parse_word("a1", 2)), build_spec([], 2))
    t2 = project(element(parse_word("a1", 2)), build_spec([(1, 0)], 2))
    with pytest.raises(ValueError):
        add_chains(t1, t2)


def test_negate_chain():
    spec = build_spec([], 2)
    t = project(element(parse_word("a1 a2", 2)), spec)
    assert add_chains(t, negate_chain(t)).is_zero()


def test_dump_chain_matches_flow_format():
    spec = build_spec([(1, 0)], 2)
    t = project(element(parse_word("a1 a1 a1", 2)), spec)
    assert dump_chain(t) == "(0,0;1) 3"


def test_vanishing_projection_forces_cycle():
    # over the trivial lattice a vanishing projection is literally a vanishing
    # chain, which forces the endpoint to the origin; over any lattice the
    # endpoint must land in it
    from sphereq.flows import boundary
    from sphereq.lattice import contains
    from sphereq.words import commutator, concat, inverse

    trivial = build_spec([], 2)
    rng = random.Random(26)
    for _ in range(50):
        u = random_word(rng, 2, 5)
        v = random_word(rng, 2, 5)
        x = random_word(rng, 2, 5)
        y = random_word(rng, 2, 5)
        relator = commutator(commutator(u, v), commutator(x, y))
        g = element(concat(relator, u, inverse(u)))
        t = project(g, trivial)
        assert t.is_zero()
        assert g.endpoint == (0, 0)
        assert boundary(g.chain) == {}
    spec = build_spec([(2, 1)], 2)
    for _ in range(200):
        g = element(random_word(rng, 2, 6))
        if project(g, spec).is_zero():
            assert contains(g.endpoint, spec)
