import random

import pytest

from clusterens import catalog
from clusterens.arith import parse, render
from clusterens.modular import (
    BaseMismatch,
    ExchangeClassExceeded,
    GroupElement,
    InvariantRecord,
    NotAnIsomorphism,
    act,
    commute,
    compose,
    exchange_class,
    identity,
    inverse,
    is_trivial,
    order,
    power,
    single_mutation_elements,
    transport,
    verify_invariant,
)
from clusterens.quiver import find_path

A3 = catalog.build("a3_cycle")
A2 = catalog.build("a2")
MARKOV = catalog.build("markov")

NAMES3 = A3.a_labels
F_A3 = parse("(a1 + a2 + a3)/(a1*a2*a3)", NAMES3)
T = GroupElement(A3.quiver, (0, 1, 2, 0), (0, 2, 1))
R = GroupElement(A3.quiver, (), (1, 2, 0))
GAMMA_A2 = GroupElement(A2.quiver, (0,), (1, 0))


def test_element_validation():
    with pytest.raises(NotAnIsomorphism):
        GroupElement(A3.quiver, (0,), (0, 1, 2))  # single mutation needs a swap
    with pytest.raises(NotAnIsomorphism):
        GroupElement(A3.quiver, (), (0, 2, 1))  # reflection reverses arrows
    frozen = catalog.build("markov_frozen3")
    with pytest.raises(NotAnIsomorphism):
        GroupElement(frozen.quiver, (), (2, 1, 0))  # must fix frozen nodes


def test_worked_action_pins():
    assert act(T, F_A3) == F_A3.inverse()
    assert act(R, F_A3) == F_A3
    c = parse("7", NAMES3)
    assert act(T, c) == c


def test_compose_is_action_homomorphism():
    f = parse("(a1 + 2*a2 + 3*a3)/(a1*a2*a3)", NAMES3)
    for g1 in (T, R, compose(T, R)):
        for g2 in (T, R, inverse(T)):
            assert act(compose(g1, g2), f) == act(g1, act(g2, f))


def test_identity_and_inverse():
    e = identity(A3.quiver)
    assert compose(T, e).path == T.path
    assert is_trivial(compose(T, inverse(T)))
    assert is_trivial(compose(inverse(R), R))
    with pytest.raises(BaseMismatch):
        compose(T, GAMMA_A2)


def test_pentagon_relation():
    assert order(GAMMA_A2, 10) == 5
    assert not is_trivial(GAMMA_A2)
    assert not is_trivial(power(GAMMA_A2, 2))
    assert is_trivial(power(GAMMA_A2, 5))


def test_hexagon_relations():
    assert order(T, 10) == 2
    assert order(R, 10) == 3
    assert commute(T, R)
    assert order(identity(A3.quiver), 10) == 1
    f = parse("(a1 + 2*a2 + 3*a3)/(a1*a2*a3)", NAMES3)
    images = {act(compose(power(T, a), power(R, b)), f) for a in range(2) for b in range(3)}
    assert len(images) == 6


def test_infinite_order_detected_as_absence():
    gens = {g.perm: g for g in single_mutation_elements(MARKOV.quiver, 0)}
    # the closure moving the mutated node generates a free-ish factor
    assert order(gens[(1, 0, 2)], 50) is None
    # while the closure fixing it squares to the empty path
    assert order(gens[(0, 2, 1)], 10) == 2


def test_act_is_a_field_automorphism():
    rng = random.Random(9)
    f = parse("(a1^2 + 2*a3)/(a2 + a3)", NAMES3)
    h = parse("(a2 - a3)/a1", NAMES3)
    for g in (T, R, compose(R, T)):
        assert act(g, f * h) == act(g, f) * act(g, h)
        assert act(g, f + h) == act(g, f) + act(g, h)


def test_triviality_implies_fixing_a_side():
    g5 = power(GAMMA_A2, 5)
    assert is_trivial(g5)
    for text in ("a1", "a2", "(a1 + a2)/(a1*a2)", "(a1^2 + 1)/a2"):
        f = parse(text, A2.a_labels)
        assert act(g5, f) == f


def test_verify_invariant():
    markov_f = parse("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", MARKOV.a_labels)
    gens = []
    for i in range(3):
        gens.extend(single_mutation_elements(MARKOV.quiver, i))
    assert len(gens) == 9
    assert verify_invariant(markov_f, gens, "a")
    markov_g = parse("x1*x2*x3", MARKOV.x_labels)
    assert verify_invariant(markov_g, gens, "x")
    a1 = parse("a1", A2.a_labels)
    assert not verify_invariant(a1, [GAMMA_A2], "a")


def test_exchange_class():
    c = parse("5", NAMES3)
    assert exchange_class(c, [T, R], 16, "a") == {c}
    cls = exchange_class(F_A3, [T, R], 16, "a")
    assert cls == {F_A3, F_A3.inverse()}
    with pytest.raises(ExchangeClassExceeded):
        f = parse("a1", NAMES3)
        exchange_class(f, [T, R], 1, "a")


def test_invariant_record_verifies_on_construction():
    markov_f = parse("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", MARKOV.a_labels)
    gens = tuple(single_mutation_elements(MARKOV.quiver, 0))
    rec = InvariantRecord("F", MARKOV.quiver, markov_f, "a", gens)
    assert rec.denominator_vector == (1, 1, 1)
    with pytest.raises(ValueError):
        InvariantRecord("bad", MARKOV.quiver,
                        parse("a1", MARKOV.a_labels), "a", gens)


def test_transport_conjugates_to_a_new_base():
    from clusterens.modular import _screen_trivial

    q1 = catalog.build("d4_11_q1")
    q4 = catalog.build("d4_11_q4")
    g = GroupElement(q1.quiver, (), (0, 2, 1, 3, 4, 5))
    path, tau = find_path(q4.quiver, q1.quiver)
    moved = transport(g, path, tau, q4.quiver)
    assert moved.quiver == q4.quiver  # constructor revalidated the closure
    # conjugation preserves order: the square acts trivially.  Exact X-side
    # triviality along the 12-step path is expensive, so pin the action on
    # functions exactly and screen the X side numerically.
    squared = power(moved, 2)
    f = parse("(a1*a4 + a2*a5 + a3*a6)/(a1*a2*a3)", q4.a_labels)
    assert act(squared, f, "a") == f
    assert _screen_trivial(squared)
    assert not _screen_trivial(moved) or is_trivial(moved)


def test_group_element_json():
    assert T.to_dict() == {"path": [0, 1, 2, 0], "perm": [0, 2, 1]}
    assert T.describe() == "{1231,(23)}"
    assert R.describe() == "{<>,(123)}"
