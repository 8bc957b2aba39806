import pytest

from orbitpoisson import (
    InvariantComplex,
    LinearForm,
    WeylBoundExceeded,
    admissibility_probe,
    betti_numbers,
    de_rham_betti,
    invariant_basis,
    invariant_dimension,
    kks,
    phi,
    project_to_m,
    solve_recursion,
    tensor_multiplicity,
    theta_split,
    weight_zero_monomials,
)
from orbitpoisson.linalg import SpanSolver

from conftest import get_basis, get_levi, get_rs


def test_weight_zero_enumeration_small():
    levi = get_levi("A", 2)
    tb = get_basis("A", 2)
    assert weight_zero_monomials(levi, tb, 0) == [()]
    assert weight_zero_monomials(levi, tb, 1) == []
    assert len(weight_zero_monomials(levi, tb, 2)) == 3  # opposite pairs
    assert len(weight_zero_monomials(levi, tb, 3)) == 2  # the two signed triangles
    # complements of weight-zero sets are weight-zero
    assert len(weight_zero_monomials(levi, tb, 4)) == 3
    assert len(weight_zero_monomials(levi, tb, 6)) == 1


def test_invariant_dimensions_a2():
    levi = get_levi("A", 2)
    tb = get_basis("A", 2)
    dims = [invariant_dimension(levi, tb, k) for k in range(7)]
    assert dims == [1, 0, 3, 2, 3, 0, 1]


def test_no_invariant_vector_fields():
    for t, r, gamma in [("A", 3, ()), ("A", 3, (2,)), ("B", 2, (2,)), ("D", 4, (1, 2))]:
        levi = get_levi(t, r, gamma)
        tb = get_basis(t, r)
        assert invariant_dimension(levi, tb, 1) == 0


def test_degree_two_invariants_count_quasiroot_classes():
    for t, r, gamma in [("A", 3, (2,)), ("B", 3, (1,)), ("D", 4, (1, 2)), ("B", 2, (2,))]:
        levi = get_levi(t, r, gamma)
        tb = get_basis(t, r)
        assert invariant_dimension(levi, tb, 2) == len(levi.positive_quasiroots)


def test_invariant_vectors_are_killed_by_levi_generators():
    from orbitpoisson.multivec import ad_action
    from orbitpoisson.roots import negate

    levi = get_levi("D", 4, (1, 2))
    tb = get_basis("D", 4)
    for vec in invariant_basis(levi, tb, 3):
        for g in levi.gamma:
            for root in (tb.rs.simple_roots[g - 1], negate(tb.rs.simple_roots[g - 1])):
                assert ad_action(tb, tb.root_vector(root), vec).is_zero()


def test_theta_split_bivectors_all_anti_invariant():
    for t, r, gamma in [("A", 2, ()), ("D", 4, (1, 2))]:
        levi = get_levi(t, r, gamma)
        tb = get_basis(t, r)
        plus, minus = theta_split(tb, invariant_basis(levi, tb, 2))
        assert len(plus) == 0
        assert len(minus) == len(levi.positive_quasiroots)


@pytest.mark.parametrize("gamma", [(1, 2), (2, 3), (2, 4)])
def test_theta_invariant_trivector_line_d4(gamma):
    levi = get_levi("D", 4, gamma)
    tb = get_basis("D", 4)
    plus, minus = theta_split(tb, invariant_basis(levi, tb, 3))
    assert len(plus) == 1
    phim = project_to_m(phi(tb), tb, levi)
    assert SpanSolver([v.terms for v in plus]).contains(phim.terms)


def test_betti_cp1():
    levi = get_levi("A", 1)
    tb = get_basis("A", 1)
    v = kks(levi, LinearForm(levi, [1]))
    assert betti_numbers(levi, tb, v) == [1, 0, 1]


def test_betti_a2_full_flag():
    levi = get_levi("A", 2)
    tb = get_basis("A", 2)
    v = kks(levi, LinearForm(levi, [1, 2]))
    betti = betti_numbers(levi, tb, v)
    assert betti == [1, 0, 2, 0, 2, 0, 1]
    assert betti == de_rham_betti(get_rs("A", 2), ())


def test_betti_recursion_bracket_nonzero_k():
    levi = get_levi("A", 2)
    tb = get_basis("A", 2)
    out = solve_recursion(levi, [1, 2], 1)
    assert out.is_success
    assert betti_numbers(levi, tb, out.solution) == de_rham_betti(get_rs("A", 2), ())


def test_de_rham_oracle():
    assert de_rham_betti(get_rs("A", 2), ()) == [1, 0, 2, 0, 2, 0, 1]
    a3 = de_rham_betti(get_rs("A", 3), (2,))
    assert a3[2] == 2  # one Betti class per removed node
    assert sum(a3) == 12  # Euler characteristic equals the coset count
    assert de_rham_betti(get_rs("A", 2), (1, 2)) == [1]
    with pytest.raises(WeylBoundExceeded):
        de_rham_betti(get_rs("E", 6), (), weyl_bound=100)


def test_de_rham_euler_is_weyl_quotient():
    rs = get_rs("D", 4)
    assert sum(de_rham_betti(rs, (1, 2))) == 192 // 6


def test_differential_squares_to_zero_via_complex():
    levi = get_levi("A", 3, (2,))
    tb = get_basis("A", 3)
    v = kks(levi, LinearForm(levi, [1, 1]))
    complex_ = InvariantComplex(levi, tb, v)
    betti = complex_.betti_numbers()  # internally asserts the square is zero
    assert betti == de_rham_betti(get_rs("A", 3), (2,))
    assert all(b == 0 for b in betti[1::2])


def test_tensor_multiplicity_d4():
    levi = get_levi("D", 4, (1, 2))
    tb = get_basis("D", 4)
    simple = [q for q in levi.positive_quasiroots if sum(q) == 1]
    assert tensor_multiplicity(levi, tb, simple[0], simple[1]) == 1
    assert tensor_multiplicity(levi, tb, simple[1], simple[0]) == 1
    with pytest.raises(ValueError):
        tensor_multiplicity(levi, tb, simple[0], simple[0])


def test_euler_characteristic_of_invariant_complex():
    levi = get_levi("A", 2)
    tb = get_basis("A", 2)
    dims = [invariant_dimension(levi, tb, k) for k in range(7)]
    euler = sum((-1) ** k * d for k, d in enumerate(dims))
    assert euler == sum(de_rham_betti(get_rs("A", 2), ()))


def test_admissibility_probe_matches_on_a2():
    levi = get_levi("A", 2)
    tb = get_basis("A", 2)
    results = admissibility_probe(levi, tb, samples=3, rng_seed=1)
    for record in results:
        assert any(
            record.get(f"attempt{k}", {}).get("match") for k in (0, 1)
        )
