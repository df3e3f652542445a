"""Acceptance suite: one test per shipped exit criterion.

Each test prints a single pass line (visible with -s or in failure output);
tolerances are pinned here, not configurable.  Everything is exact integer
or rational arithmetic except the floating-point limit criterion, whose
tolerances are stated inline.
"""

import math
import random
from fractions import Fraction

from clusterens import catalog as C
from clusterens.arith import parse, render
from clusterens.ensemble import ASeed, mutate_a, rho_pullback
from clusterens.modular import (
    act,
    commute,
    compose,
    exchange_class,
    inverse,
    is_trivial,
    order,
    power,
    verify_invariant,
)
from clusterens.quiver import Quiver, mutate

ALL_ENTRIES = [
    "a2", "a3_cycle", "a1_affine", "markov", "markov_frozen3", "bc21",
    "bc24", "g2_affine", "g2_33", "somos4", "somos5", "somos6",
    "d4_11_q1", "d4_11_q2", "d4_11_q3", "d4_11_q4",
    "d_cycle(5)", "t_pqr(2,2,2)", "a_n(4)",
]


def ok(line):
    print(f"ACCEPTANCE {line}: PASS")


def test_c1_exchange_matrix_pin():
    g2 = C.build("g2_affine").quiver
    assert mutate(g2, 1).matrix == ((0, -3, 3), (1, 0, -1), (-1, 1, 0))

    rng = random.Random(20260809)
    quivers = [C.build(n).quiver for n in ALL_ENTRIES]
    for _ in range(1000):
        q = quivers[rng.randrange(len(quivers))]
        k = rng.choice(q.mutable)
        m = mutate(q, k)  # constructor checks skew-symmetrizability exactly
        assert m.multipliers == q.multipliers
        assert mutate(m, k) == q
        d = q.multipliers
        for i in range(q.n):
            for j in range(q.n):
                assert Fraction(m.matrix[i][j], d[j]) == -Fraction(m.matrix[j][i], d[i])
    ok("C1 exchange-matrix pin (worked mutation + 1000 randomized checks)")


def test_c2_group_relations():
    a2 = C.build("a2")
    gamma = C.invariant_records("a1_affine")  # warm nothing; explicit below
    from clusterens.modular import GroupElement

    g = GroupElement(a2.quiver, (0,), (1, 0))
    assert order(g, 20) == 5
    for k in range(1, 5):
        assert not is_trivial(power(g, k))

    a3 = C.build("a3_cycle")
    t = GroupElement(a3.quiver, (0, 1, 2, 0), (0, 2, 1))
    r = GroupElement(a3.quiver, (), (1, 2, 0))
    assert commute(t, r)
    assert order(t, 10) == 2
    assert order(r, 10) == 3
    f = parse("(a1 + 2*a2 + 3*a3)/(a1*a2*a3)", a3.a_labels)
    images = {
        act(compose(power(t, a), power(r, b)), f)
        for a in range(2) for b in range(3)
    }
    assert len(images) == 6
    ok("C2 group relations (pentagon order 5; hexagon 2x3 with 6 images)")


def test_c3_functional_exchange_pin():
    a3 = C.build("a3_cycle")
    from clusterens.modular import GroupElement

    f = parse("(a1 + a2 + a3)/(a1*a2*a3)", a3.a_labels)
    t = GroupElement(a3.quiver, (0, 1, 2, 0), (0, 2, 1))
    r = GroupElement(a3.quiver, (), (1, 2, 0))
    assert act(t, f) == f.inverse()
    assert act(r, f) == f
    ok("C3 functional-exchange pin (four-step walk inverts, rotation fixes)")


def test_c4_invariance_suite():
    # named records, construction-verified and re-checked here
    for name in ("a1_affine", "markov", "bc21", "bc24",
                 "somos4", "somos5", "somos6", "g2_33"):
        for rec in C.invariant_records(name):
            assert verify_invariant(rec.function, rec.generators, rec.flavor), \
                (name, rec.name)

    # double-arrow pair: the monomial map squares the head invariant
    recs = {r.name: r for r in C.invariant_records("a1_affine")}
    assert rho_pullback(recs["G"].function, C.build("a1_affine").quiver) == \
        recs["F"].function ** 2

    # cycle quivers: rotation fixes, the sweep element inverts (n = 3..6)
    for n in (3, 4, 5, 6):
        f = C.d_cycle_invariant(n)
        assert act(C.d_cycle_rotation(n), f) == f
        assert act(C.d_cycle_flip(n), f) == f.inverse()

    # tetrahedral entry: cubed invariant under transported Weyl generators
    for rec in C.invariant_records("d4_11_q4"):
        assert verify_invariant(rec.function, rec.generators, rec.flavor)

    # three-legged quivers: full generating sets for the five leg profiles
    for pqr in ("1,1,1", "2,1,1", "2,2,1", "2,2,2", "3,3,2"):
        name = f"t_pqr({pqr})"
        recs = C.invariant_records(name)
        assert recs
        for rec in recs:
            assert verify_invariant(rec.function, rec.generators, rec.flavor)
        entry = C.build(name)
        p, q, r_ = (int(x) for x in pqr.split(","))
        g = parse("(x2*(x1+1)+1)^2/(x1*x2)", entry.x_labels)
        head = C.theorem_a_basis(p, q, r_)[0]
        assert rho_pullback(g, entry.quiver, entry.a_labels, entry.x_labels) \
            == head * head
    # the displayed square root for legs (2,2,1)
    entry = C.build("t_pqr(2,2,1)")
    assert C.theorem_a_basis(2, 2, 1)[0] == \
        parse("(a1^2 + a2^2 + b2*c2)/(a1*a2)", entry.a_labels)
    ok("C4 invariance suite (all named invariants exact under their generators)")


def test_c5_exchange_class_closure():
    entry = C.build("d4_11_q4")
    a_basis, _ = C.correspondence_basis("d4_11_q4")
    f_sq, f456, ratio = a_basis
    closure = exchange_class(f_sq, list(C.d4_q4_closure_generators()), 64, "a")
    assert len(closure) == 24
    markov_f = parse("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", entry.a_labels)
    blocks = [(0, 3), (1, 4), (2, 5)]
    assert C.fold_check(f_sq, blocks) == markov_f * markov_f
    assert C.fold_check(f456, blocks) == markov_f
    assert C.fold_check(ratio, blocks).is_one()
    ok("C5 exchange class of 24 and the three folding identities")


def _bounded_random_walk(entry_name, steps, cap, rng):
    """A reflecting random walk: when the freshly produced variable grows past
    the cap, the next mutation undoes the last one (still a mutation step)."""
    entry = C.build(entry_name)
    seed = ASeed.initial(entry.quiver, entry.a_labels)
    assert all(v.is_positive_laurent() for v in seed.vars)
    last = None
    force_back = False
    for _ in range(steps):
        if force_back and last is not None:
            k = last
        else:
            k = rng.choice(seed.quiver.mutable)
        seed = mutate_a(seed, k)
        new_var = seed.vars[k]
        assert new_var.is_positive_laurent(), (entry_name, k)
        force_back = len(new_var.num.terms) > cap
        last = k
    assert all(v.is_positive_laurent() for v in seed.vars)


def test_c6_laurent_phenomenon():
    # The reflecting cap keeps expression sizes at desk scale: variable growth
    # along free random walks is doubly exponential, so an uncapped walk of
    # this length is not representable, let alone checkable.
    rng = random.Random(7)
    for name in ALL_ENTRIES:
        # heavier arrow weights square the variables each step; reflect earlier
        heavy = name in ("somos6", "bc24", "d4_11_q4")
        _bounded_random_walk(name, steps=200, cap=15 if heavy else 30, rng=rng)
    ok("C6 Laurent phenomenon (200 bounded random steps per catalog quiver)")


def test_c7_sequences():
    assert C.somos_sequence(4, 20) == C.somos_oracle(4, 20)
    assert C.somos_sequence(5, 20) == C.somos_oracle(5, 20)
    assert all(isinstance(t, int) for t in C.somos_sequence(4, 20))

    triples = C.markov_triples(8)
    assert len(triples) > 100
    for x, y, z in triples:
        assert x * x + y * y + z * z == 3 * x * y * z
        assert x > 0 and y > 0 and z > 0
        assert math.gcd(x, y) == math.gcd(y, z) == math.gcd(x, z) == 1

    for k in (4, 5, 6):
        rec = C.invariant_records(f"somos{k}")[0]
        window = C.somos_sequence(k, 20)
        values = {
            rec.function.evaluate_exact(
                {f"a{i+1}": Fraction(window[s + i]) for i in range(k)})
            for s in range(20 - k)
        }
        assert len(values) == 1
    ok("C7 sequences (Somos oracles, the depth-8 triple tree, constant orbits)")


def test_c8_limits_floating_point():
    orbit = C.a1_affine_orbit(1.0, 1.0, 45)
    lam = (3 + math.sqrt(5)) / 2
    assert abs(C.limit_multiplier(3.0) - lam) < 1e-12
    assert abs(orbit[40] / orbit[39] - lam) <= 1e-9
    # three-term relation, relative tolerance 1e-9 (the terms grow
    # geometrically, so an absolute bound is not meaningful in doubles)
    for n in range(1, 41):
        lhs = orbit[n - 1] + orbit[n + 1]
        rhs = 3.0 * orbit[n]
        assert abs(lhs - rhs) <= 1e-9 * abs(rhs)
    ok("C8 limits (ratio converges to the multiplier; recurrence holds)")


def test_c9_evaluation_maps():
    markov_f = C.invariant("markov.F").function
    image = C.evaluate_frozen_at_one(markov_f, keep=(0, 1))
    assert render(image) == "(a1^2 + a2^2 + 1)/(a1*a2)"
    assert render(image) == render(C.invariant("a1_affine.F").function)

    entry = C.build("t_pqr(2,2,2)")
    basis = C.theorem_x_basis(2, 2, 2)
    tail = [i for i, nm in enumerate(entry.x_labels) if nm[0] in "yzw"]
    images = [C.evaluate_x_at_zero(b, tail) for b in basis]
    g111 = C.invariant_records("t_pqr(1,1,1)")[0].function
    survivors = [i for i in images if not i.is_zero()]
    assert len(survivors) == 1
    assert render(survivors[0]) == render(g111)
    ok("C9 evaluation maps (freeze-at-1 onto the rank-2 invariant; zero maps onto the core field)")


def test_c10_denominator_vectors_and_monomial_rep():
    a_basis, x_basis = C.correspondence_basis("d4_11_q4")
    assert C.denominator_correspondence(a_basis, x_basis)
    assert [f.denominator_vector() for f in a_basis] == [
        (1, 1, 1, 1, 1, 1), (0, 0, 0, 1, 1, 1), (0, 0, 0, 1, 0, 0)]

    f1 = C.invariant("g2_33.F1").function
    f2 = C.invariant("g2_33.F2").function
    tau, r = C.g2_33_rep_generators()
    mats = C.monomial_rep([tau, r], [f1, f2], "a")
    assert mats == [((1, 1), (0, -1)), ((1, 1), (-1, 0))]
    _, xb = C.correspondence_basis("g2_33")
    assert C.monomial_rep([tau, r], xb, "x") == mats
    ok("C10 denominator-vector correspondence and the two exponent matrices")
