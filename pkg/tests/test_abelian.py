import pytest
from hypothesis import given, settings, strategies as st

from cosimplex import intmat
from cosimplex.abelian import (AbHom, CochainComplex, FGAbGroup, cohomology, hom_equal,
                               is_isomorphism, kernel, cokernel)
from cosimplex.cosab import cohomology_H, constant_ab, moore_complex
from cosimplex.errors import DegreeError


def snf_diag(rows):
    cols = intmat.from_rows(rows)
    d, U, V, _Ui = intmat.smith_normal_form(cols, len(rows))
    return d, U, V, cols


def diag_matrix(d, nrows, ncols):
    S = intmat.zeros(nrows, ncols)
    for i, x in enumerate(d):
        S[i][i] = x
    return S


def check_snf(rows):
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    d, U, V, A = snf_diag(rows)
    UAV = intmat.mul(intmat.mul(U, A, nrows), V, nrows)
    assert UAV == diag_matrix(d, nrows, ncols)
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert abs(intmat.determinant(U)) == 1
    assert abs(intmat.determinant(V)) == 1
    return d


def test_snf_diag_2_3():
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]


def test_snf_identity():
    assert check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_snf_gcd_two():
    assert check_snf([[4, 6], [2, 2]]) == [2, 2]


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_snf_properties(rows):
    d = check_snf(rows)
    # the product of invariant factors equals the gcd of maximal minors when square and full rank
    if len(rows) == len(rows[0]) and len(d) == len(rows):
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(intmat.determinant(intmat.from_rows(rows)))


def test_group_equality_via_relations():
    G = FGAbGroup(2, [[2, 0], [0, 3]])
    assert G.equal([1, 1], [3, 4])
    assert not G.equal([1, 0], [0, 0])
    assert str(G) == "ℤ/6"


def test_cohomology_times_two_at_top():
    Z = FGAbGroup.free(1)
    C = CochainComplex(0, [Z, Z], [AbHom(Z, Z, [[2]])], bounded_above=True)
    assert str(cohomology(C, 1)) == "ℤ/2"
    assert str(cohomology(C, 0)) == "0"


def test_cohomology_zero_differentials():
    G = FGAbGroup.from_invariants([2], 1)
    C = CochainComplex(0, [G, G, G], [AbHom.zero(G, G), AbHom.zero(G, G)], bounded_above=True)
    for n in range(3):
        assert cohomology(C, n).isomorphic(G)


def test_cohomology_needs_outgoing_differential():
    Z = FGAbGroup.free(1)
    C = CochainComplex(0, [Z, Z], [AbHom(Z, Z, [[2]])])
    with pytest.raises(DegreeError):
        cohomology(C, 1)
    with pytest.raises(DegreeError):
        cohomology(C, 2)


def test_moore_complex_constant_z():
    A = constant_ab(FGAbGroup.free(1), 4)
    C = moore_complex(A)
    # δ^n is the alternating sum of n + 2 identities: 0, id, 0, id
    assert [C.differential(n).rows() for n in range(4)] == [[[0]], [[1]], [[0]], [[1]]]
    assert str(cohomology_H(A, 0)) == "ℤ"
    assert all(cohomology_H(A, n).is_trivial() for n in range(1, 4))


def test_hom_equal_examples():
    Z, Z2 = FGAbGroup.free(1), FGAbGroup.from_invariants([2], 0)
    f = AbHom(Z, Z, [[1]])
    assert hom_equal(f, AbHom(Z, Z, [[1]]))
    assert hom_equal(AbHom(Z, Z2, [[1]]), AbHom(Z, Z2, [[3]]))
    assert not hom_equal(f, AbHom(Z, Z, [[2]]))


def test_hom_well_definedness_checked():
    Z2 = FGAbGroup.from_invariants([2], 0)
    with pytest.raises(ValueError):
        AbHom(Z2, FGAbGroup.free(1), [[1]])


def test_kernel_cokernel_of_times_two():
    Z = FGAbGroup.free(1)
    f = AbHom(Z, Z, [[2]])
    K, _ = kernel(f)
    Q, _ = cokernel(f)
    assert K.is_trivial() and str(Q) == "ℤ/2"
    assert is_isomorphism(AbHom.identity(Z))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 6]), max_size=3), st.integers(0, 2))
def test_invariants_normal_form(tors, rank):
    G = FGAbGroup.from_invariants(tors, rank)
    t, f = G.invariants()
    assert f == rank
    assert all(b % a == 0 for a, b in zip(t, t[1:]))
    order = 1
    for x in tors:
        order *= x
    got = 1
    for x in t:
        got *= x
    assert got == order
