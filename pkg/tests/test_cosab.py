import random

import pytest
from hypothesis import given, settings, strategies as st

from cosimplex.abelian import AbHom, FGAbGroup, hom_equal
from cosimplex.corpus import random_cosimp_ab, random_cosimp_set
from cosimplex.cosab import (ALL, MatchingGroup, TruncCosimpAb, bk_fibration_check, cn_subcomplex,
                             cohomology_H, constant_ab, contracting_homotopy_check, derived_limit_cobar,
                             enumerate_cochain_maps, external_product, external_product_map,
                             limit_by_cones, matching_splitting, moore_complex, normalization_report,
                             pi0_hom_delta_K, pi_k_hom_delta_K)
from cosimplex.cosimplicial import CosimpSetMap
from cosimplex.errors import DegreeError, ValidationError
from cosimplex.simplicial import SimplicialMap, standard_simplex

Z = FGAbGroup.free(1)
Z2 = FGAbGroup.from_invariants([2], 0)


def inv(G):
    return G.invariants()


def test_constant_cohomology():
    for G, h0 in ((Z, "ℤ"), (Z2, "ℤ/2")):
        A = constant_ab(G, 4)
        assert str(cohomology_H(A, 0)) == h0
        assert all(cohomology_H(A, n).is_trivial() for n in range(1, 4))


def test_zero_structure_maps_violate_identities():
    # s^0 d^0 must be the identity, so a nonzero level cannot pass through 0
    O = FGAbGroup.trivial()
    G = FGAbGroup.from_invariants([3], 1)
    with pytest.raises(ValidationError) as e:
        TruncCosimpAb(1, [G, O], {(1, 0): AbHom.zero(G, O), (1, 1): AbHom.zero(G, O)},
                      {(0, 0): AbHom.zero(O, G)})
    assert "s^0d^0" in e.value.law


def test_cohomology_degree_margin():
    with pytest.raises(DegreeError):
        cohomology_H(constant_ab(Z, 2), 2)


def test_matching_splitting_on_diagonal_tuple():
    A = constant_ab(Z, 3)
    for n in range(1, 4):
        M = MatchingGroup(A, n)
        j = matching_splitting(A, n, M)
        assert M.group.ngens == 1  # the diagonal
        assert M.tuple_of([1]) == [[1]] * n
        assert j([1]) == [1] and j([0]) == [0]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_matching_splitting_is_a_section(seed):
    rng = random.Random(seed)
    A = random_cosimp_ab(rng, rng.randint(1, 3), max_gens=16)
    for n in range(1, A.trunc + 1):
        M = MatchingGroup(A, n)
        j = matching_splitting(A, n, M)
        assert hom_equal(M.s @ j, AbHom.identity(M.group))


def test_cn_of_constant():
    C, _ = cn_subcomplex(constant_ab(Z, 3), ALL)
    assert C.groups[0].isomorphic(Z)
    assert all(G.is_trivial() for G in C.groups[1:])


def test_cn_minus_one_is_moore():
    A = random_cosimp_ab(random.Random(5), 3)
    C, incl = cn_subcomplex(A, -1)
    D = moore_complex(A)
    assert [G.ngens for G in C.groups] == [G.ngens for G in D.groups]
    for n in range(A.trunc):
        assert inv(C.groups[n]) == inv(D.groups[n])


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_normalization_preserves_cohomology(seed):
    rng = random.Random(seed)
    A = random_cosimp_ab(rng, rng.randint(1, 3), max_gens=16)
    for k in list(range(A.trunc + 1)) + [ALL]:
        for _n, hc, ha, iso in normalization_report(A, k):
            assert hc == ha and iso
    for k in range(-1, A.trunc):
        assert contracting_homotopy_check(A, k) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_moore_differential_squares_to_zero(seed):
    rng = random.Random(seed)
    A = random_cosimp_ab(rng, rng.randint(2, 4), max_gens=16)
    C = moore_complex(A)
    for n in range(A.trunc - 1):
        assert (C.differential(n + 1) @ C.differential(n)).is_zero()


def test_pi0_examples():
    A = constant_ab(Z, 3)
    assert str(pi0_hom_delta_K(A, 0)) == "ℤ"
    assert pi0_hom_delta_K(A, 1).is_trivial() and pi0_hom_delta_K(A, 2).is_trivial()


def test_pi_k_examples():
    A = random_cosimp_ab(random.Random(11), 3)
    for n in range(3):
        assert inv(pi_k_hom_delta_K(A, n, 0)) == inv(pi0_hom_delta_K(A, n))
        assert inv(pi_k_hom_delta_K(A, n, n)) == inv(cohomology_H(A, 0))
        assert pi_k_hom_delta_K(A, n, n + 1).is_trivial()


def test_enumerate_cochain_maps_examples():
    maps, classes = enumerate_cochain_maps(constant_ab(Z2, 3), 1)
    assert classes == cohomology_H(constant_ab(Z2, 3), 1).order() == 1
    O = FGAbGroup.trivial()
    assert enumerate_cochain_maps(constant_ab(O, 2), 1) == (1, 1)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_cochain_classes_match_pi0(seed):
    rng = random.Random(seed)
    A = random_cosimp_ab(rng, 2, finite=True, max_gens=6)
    for n in range(2):
        if max(A.levels[m].order() for m in range(max(n - 1, 0), n + 2)) > 2000:
            continue
        assert enumerate_cochain_maps(A, n)[1] == pi0_hom_delta_K(A, n).order()


def test_derived_limit_constant():
    A = constant_ab(Z, 3)
    assert str(derived_limit_cobar(A, 0)) == "ℤ"
    assert derived_limit_cobar(A, 1).is_trivial()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_derived_limit_zero_is_the_limit(seed):
    rng = random.Random(seed)
    A = random_cosimp_ab(rng, 2, max_gens=8)
    assert inv(derived_limit_cobar(A, 0)) == inv(limit_by_cones(A))
    assert inv(derived_limit_cobar(A, 0, method="resolution")) == inv(cohomology_H(A, 0))


def test_derived_limit_margin():
    with pytest.raises(DegreeError):
        derived_limit_cobar(constant_ab(Z, 3), 2)


def test_bk_fibration_identity_and_negative():
    X = random_cosimp_set(random.Random(2), 1)
    Y = standard_simplex(1, 2)
    f = external_product_map(CosimpSetMap(X, X, [{x: x for x in lv} for lv in X.levels]),
                             SimplicialMap.identity(Y), Z)
    assert bk_fibration_check(f)
    from cosimplex.corpus import engineered_non_fibration
    ok, failures = bk_fibration_check(engineered_non_fibration(), report=True)
    assert not ok and failures
    A = external_product(X, Y, Z)
    assert A.trunc == 1 and A.simp_trunc == 2
