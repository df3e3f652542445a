import math
from fractions import Fraction

import pytest

from clusterens import catalog as C
from clusterens.arith import parse, render
from clusterens.ensemble import rho_pullback
from clusterens.modular import act, inverse, power, verify_invariant
from clusterens.quiver import Quiver


def test_build_examples():
    g2 = C.build("g2_affine")
    assert g2.quiver.matrix == ((0, 3, 0), (-1, 0, 1), (0, -1, 0))
    assert g2.quiver.multipliers == (1, 3, 3)

    t111 = C.build("t_pqr(1,1,1)")
    assert t111.quiver == C.build("a1_affine").quiver

    markov = C.build("markov")
    assert markov.quiver.n == 3
    assert all(
        abs(markov.quiver.matrix[i][j]) == 2
        for i in range(3) for j in range(3) if i != j
    )

    t = C.build("t_pqr(3,3,2)")
    assert t.labels == ("A1", "A2", "B2", "B3", "C2", "C3", "D2")
    assert t.a_labels == ("a1", "a2", "b2", "b3", "c2", "c3", "d2")

    with pytest.raises(C.UnknownEntry):
        C.build("borcherds")
    with pytest.raises(C.UnknownEntry):
        C.build("t_pqr(0,1,1)")


def test_invariant_lookup():
    rec = C.invariant("markov.F")
    assert render(rec.function) == "(a1^2 + a2^2 + a3^2)/(a1*a2*a3)"
    assert rec.denominator_vector == (1, 1, 1)
    f4 = C.invariant("somos4.F4")
    assert verify_invariant(f4.function, f4.generators, "a")
    with pytest.raises(C.UnknownEntry):
        C.invariant("markov.H")


def test_theorem_bases_shape():
    basis = C.theorem_x_basis(3, 3, 2)
    assert len(basis) == 6  # rank 7 ensemble: one fewer independent invariant
    heads = [render(b) for b in basis]
    assert heads[0] == "(x1^2*x2^2 + 2*x1*x2^2 + 2*x1*x2 + x2^2 + 2*x2 + 1)/(x1*x2)"
    a_basis = C.theorem_a_basis(2, 2, 1)
    assert render(a_basis[0]) == "(a1^2 + a2^2 + b2*c2)/(a1*a2)"


def test_casimirs():
    markov = C.build("markov")
    cas = C.casimirs(markov.quiver)
    assert [render(c) for c in cas] == ["x1*x2*x3"]
    a2 = C.build("a2")
    assert C.casimirs(a2.quiver) == []
    path3 = C.build("a_n(3)")
    assert [render(c) for c in C.casimirs(path3.quiver)] == ["x1*x3"]
    g233 = C.build("g2_33")
    g233_cas = C.casimirs(g233.quiver)
    assert len(g233_cas) == 2
    # the kernel lattice contains the two monomials matching the invariants
    found = set()
    for a in range(-3, 4):
        for b in range(-3, 4):
            v = g233_cas[0] ** a * g233_cas[1] ** b
            if v.inverse().is_laurent():
                found.add(v.inverse().denominator_vector())
    assert {(2, 2, 1, 1), (1, 1, 2, 0)} <= found
    # fixed by every single-mutation element, including the relabeling
    from clusterens.modular import single_mutation_elements

    for c in cas:
        for i in range(3):
            for g in single_mutation_elements(markov.quiver, i):
                assert act(g, c, "x") == c


def test_evaluation_maps():
    entry = C.build("g2_33")
    f2 = C.invariant("g2_33.F2").function
    out = C.evaluate_frozen_at_one(f2, keep=(0, 1))
    assert out == parse("((a1 + a2)^2 + 1)/(a1*a2)", entry.a_labels)
    const = parse("9", entry.a_labels)
    assert C.evaluate_frozen_at_one(const, keep=()) == const

    markov_f = C.invariant("markov.F").function
    frozen = C.evaluate_frozen_at_one(markov_f, keep=(0, 1))
    assert render(frozen) == "(a1^2 + a2^2 + 1)/(a1*a2)"
    assert render(frozen) == render(C.invariant("a1_affine.F").function)


def test_zero_evaluation():
    basis = C.theorem_x_basis(2, 2, 2)
    names = C.build("t_pqr(2,2,2)").x_labels
    tail = [i for i, nm in enumerate(names) if nm[0] in "yzw"]
    images = [C.evaluate_x_at_zero(b, tail) for b in basis]
    g = basis[0]
    assert images[0] == g
    assert all(i.is_zero() for i in images[1:])
    with pytest.raises(ZeroDivisionError):
        C.evaluate_x_at_zero(parse("1/x1", names), [0])


def test_fold_identities():
    entry = C.build("d4_11_q4")
    a_basis, _ = C.correspondence_basis("d4_11_q4")
    f_sq, f456, ratio = a_basis
    markov_f = parse("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", entry.a_labels)
    blocks = [(0, 3), (1, 4), (2, 5)]
    assert C.fold_check(f_sq, blocks) == markov_f * markov_f
    assert C.fold_check(f456, blocks) == markov_f
    assert C.fold_check(ratio, blocks).is_one()
    with pytest.raises(ValueError):
        C.fold_check(ratio, [(0, 99)])


def test_markov_triples():
    assert C.markov_triples(0) == [(1, 1, 1)]
    triples = C.markov_triples(2)
    assert (1, 2, 5) in triples
    for x, y, z in C.markov_triples(5):
        assert x * x + y * y + z * z == 3 * x * y * z
        assert math.gcd(x, y) == math.gcd(y, z) == math.gcd(x, z) == 1
        assert x > 0 and y > 0 and z > 0
    with pytest.raises(ValueError):
        C.markov_triples(-1)


def test_somos_sequences():
    assert C.somos_sequence(4, 8) == [1, 1, 1, 1, 2, 3, 7, 23]
    assert C.somos_sequence(5, 7) == [1, 1, 1, 1, 1, 2, 3]
    for k in (4, 5, 6):
        assert C.somos_sequence(k, 20) == C.somos_oracle(k, 20)
    with pytest.raises(ValueError):
        C.somos_sequence(7, 10)
    with pytest.raises(ValueError):
        C.somos_sequence(4, 2)


def test_somos_orbit_invariance():
    for k in (4, 5, 6):
        rec = C.invariant_records(f"somos{k}")[0]
        window = C.somos_sequence(k, 18)
        base = rec.function.evaluate_exact(
            {f"a{i+1}": Fraction(1) for i in range(k)})
        for start in range(18 - k):
            point = {f"a{i+1}": Fraction(window[start + i]) for i in range(k)}
            assert rec.function.evaluate_exact(point) == base


def test_limits():
    assert C.limit_multiplier(2.0) == 1.0
    with pytest.raises(ValueError):
        C.limit_multiplier(1.5)
    orbit = C.a1_affine_orbit(1.0, 1.0, 42)
    lam = (3 + math.sqrt(5)) / 2
    assert abs(orbit[40] / orbit[39] - lam) < 1e-9
    f_value = 3.0
    for n in range(1, 30):
        lhs = orbit[n - 1] + orbit[n + 1]
        assert abs(lhs - f_value * orbit[n]) <= 1e-9 * max(1.0, abs(orbit[n]))


def test_horocycle_invariant():
    one_triangle = C.Triangulation(3, ((0, 1, 2),))
    markov_f = parse("(a1^2 + a2^2 + a3^2)/(a1*a2*a3)", ("a1", "a2", "a3"))
    assert C.horocycle_invariant(one_triangle) == markov_f
    torus = C.Triangulation(3, ((0, 1, 2), (0, 1, 2)))
    assert C.horocycle_invariant(torus) == markov_f + markov_f
    empty = C.Triangulation(3, ())
    assert C.horocycle_invariant(empty).is_zero()
    with pytest.raises(ValueError):
        C.Triangulation(2, ((0, 1, 2),))


def test_denominator_correspondence():
    a_basis, x_basis = C.correspondence_basis("d4_11_q4")
    assert C.denominator_correspondence(a_basis, x_basis)
    for name in ("markov", "bc21", "bc24", "somos4", "somos5", "somos6",
                 "a1_affine", "g2_33"):
        ab, xb = C.correspondence_basis(name)
        assert C.denominator_correspondence(ab, xb), name
    # mismatched pair
    assert not C.denominator_correspondence([a_basis[0]], [x_basis[1]])
    with pytest.raises(ValueError):
        C.denominator_correspondence(a_basis, x_basis[:2])


def test_monomial_rep_pins():
    f1 = C.invariant("g2_33.F1").function
    f2 = C.invariant("g2_33.F2").function
    tau, r = C.g2_33_rep_generators()
    mats = C.monomial_rep([tau, r], [f1, f2], "a")
    assert mats == [((1, 1), (0, -1)), ((1, 1), (-1, 0))]
    _, x_basis = C.correspondence_basis("g2_33")
    assert C.monomial_rep([tau, r], x_basis, "x") == mats
    e = C.monomial_rep([C.g2_33_swap_element()], [f1, f2], "a")
    assert e == [((0, 1), (1, 0))]
    from clusterens.modular import identity

    ident = identity(C.build("g2_33").quiver)
    assert C.monomial_rep([ident], [f1, f2], "a") == [((1, 0), (0, 1))]
    with pytest.raises(C.MonomialRepError):
        C.monomial_rep([tau], [f1 + f2, f2], "a")


def test_d_cycle_flips():
    for n in (3, 4, 5, 6):
        flip = C.d_cycle_flip(n)
        f = C.d_cycle_invariant(n)
        assert act(flip, f) == f.inverse()
        rot = C.d_cycle_rotation(n)
        assert act(rot, f) == f


def test_integer_kernel():
    assert C.integer_kernel([[0, 0], [0, 0]]) == [(1, 0), (0, 1)]
    assert C.integer_kernel([[1, 2], [2, 4]]) == [(2, -1)]
    assert C.integer_kernel([[1, 0], [0, 1]]) == []


def test_laurent_action_report():
    rows = C.laurent_action_report("g2_33")
    statuses = {status for _, _, status in rows}
    assert statuses <= {"laurent", "monomial-in-basis"}
    assert "monomial-in-basis" in statuses
    rows = C.laurent_action_report("markov")
    assert rows and all(status == "laurent" for _, _, status in rows)
    rows = C.laurent_action_report("d4_11_q4")
    statuses = {status for _, _, status in rows}
    assert "non-laurent" in statuses  # inverses appear in this exchange class


def test_verify_entry_everything():
    for name in ("a3_cycle", "a1_affine", "markov", "markov_frozen3", "bc21",
                 "bc24", "g2_affine", "g2_33", "somos4", "somos5", "somos6",
                 "d4_11_q1", "d4_11_q4", "d_cycle(4)", "a_n(3)",
                 "t_pqr(1,1,1)", "t_pqr(2,1,1)", "t_pqr(2,2,1)",
                 "t_pqr(2,2,2)", "t_pqr(3,3,2)"):
        results = C.verify_entry(name)
        assert results, name
        assert all(ok for _, ok in results), (name, results)
