import random
from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from cosimplex.abelian import FGAbGroup, NNChainComplex
from cosimplex.corpus import (chain_complex_from_pieces, random_chain_complex, random_two_stage,
                              sphere_model_input)
from cosimplex.errors import DegreeError, HypothesisFailed
from cosimplex.postnikov import (SSetDiagramMap, constant_diagram, dk_chain_round_trip,
                                 dk_simplicial_round_trip, em_model, gamma_dk, k_invariant_ab,
                                 normalize_dk, point_category, postnikov_section_ab, simp_ab_homology)
from cosimplex.simplicial import SimplicialMap, free_abelian, point, standard_simplex

Z = FGAbGroup.free(1)


def surjections(m, n):
    return sum(1 for f in iproduct(range(n + 1), repeat=m + 1)
               if all(a <= b for a, b in zip(f, f[1:])) and set(f) == set(range(n + 1)))


def z_in_degree(n):
    return chain_complex_from_pieces([("free", n)], n)


def test_normalize_constant_z():
    C = normalize_dk(free_abelian(point(3)))
    assert str(C.group(0)) == "ℤ"
    assert all(C.group(k).is_trivial() for k in range(1, 4))


def test_normalize_interval():
    C = normalize_dk(free_abelian(standard_simplex(1, 2)))
    assert C.group(0).invariants() == ((), 2) and C.group(1).invariants() == ((), 1)
    assert sorted(C.boundary(1).matrix[0]) == [-1, 1]
    assert str(simp_ab_homology(free_abelian(standard_simplex(1, 2)), 0)) == "ℤ"
    assert simp_ab_homology(free_abelian(standard_simplex(1, 2)), 1).is_trivial()


def test_homology_needs_next_level():
    with pytest.raises(DegreeError):
        simp_ab_homology(free_abelian(point(2)), 2)


def test_gamma_of_z_in_degree_zero_is_constant():
    A = gamma_dk(z_in_degree(0), 3)
    assert all(G.ngens == 1 for G in A.levels)
    assert all(A.faces[k].rows() == [[1]] for k in A.faces)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gamma_level_ranks_count_surjections(n):
    A = gamma_dk(z_in_degree(n), n + 2)
    assert [G.invariants()[1] for G in A.levels] == [surjections(m, n) for m in range(n + 3)]
    assert A.levels[n].invariants() == ((), 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_dold_kan_round_trips(seed, top):
    rng = random.Random(seed)
    C = random_chain_complex(rng, top)
    assert dk_chain_round_trip(C, top + 1)
    assert dk_simplicial_round_trip(gamma_dk(C, top + 1))


def test_postnikov_above_top_homology_is_equivalence():
    A = gamma_dk(chain_complex_from_pieces([("free", 0), ("pair", 0, 2), ("free", 1)], 2), 3)
    _P, _q, rep = postnikov_section_ab(A, 2)
    assert rep["pass"]
    assert [r["H(A)"] == r["H(P)"] for r in rep["rows"]] == [True] * 3


def test_postnikov_zero_section_is_h0():
    A = free_abelian(standard_simplex(1, 3))
    P, _q, rep = postnikov_section_ab(A, 0)
    assert rep["pass"] and rep["rows"][0]["H(P)"] == "ℤ"
    NP = normalize_dk(P)
    assert all(NP.homology(k).is_trivial() for k in (1, 2))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 2))
def test_postnikov_kills_homology_above_n(seed, n):
    rng = random.Random(seed)
    A = gamma_dk(random_chain_complex(rng, 3), 4)
    P, _q, rep = postnikov_section_ab(A, n)
    assert rep["pass"]
    NP = normalize_dk(P)
    assert all(NP.homology(k).is_trivial() for k in range(n + 1, 4))


def test_postnikov_degree_margin():
    with pytest.raises(DegreeError):
        postnikov_section_ab(free_abelian(point(2)), 2)


def test_k_invariant_single_stage():
    A = gamma_dk(z_in_degree(3), 5)
    rep = k_invariant_ab(A, 3)
    assert rep["pass"]
    assert all(rep["target"].homology(k).is_trivial() for k in range(rep["target"].top))


def test_k_invariant_two_stage_z():
    C = chain_complex_from_pieces([("free", 2), ("free", 3)], 4)
    rep = k_invariant_ab(gamma_dk(C, 5), 3)
    assert rep["pass"] and str(rep["target"].homology(4)) == "ℤ"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([3, 4]))
def test_k_invariant_exactness_on_two_stage(seed, n):
    C = random_two_stage(random.Random(seed), n)
    rep = k_invariant_ab(gamma_dk(C, n + 1), n)
    assert rep["pass"] and all(r["exact"] for r in rep["rows"])


def test_k_invariant_hypotheses():
    with pytest.raises(HypothesisFailed):
        k_invariant_ab(gamma_dk(z_in_degree(1), 3), 1)
    with pytest.raises(HypothesisFailed):
        k_invariant_ab(gamma_dk(chain_complex_from_pieces([("free", 0)], 0), 4), 2)


def test_em_model_sphere():
    rep = em_model(*sphere_model_input())
    assert rep["pass"] and rep["coefficients"] == {"*": "ℤ"}


def test_em_model_arrow_transition_is_iso():
    rep = em_model(*sphere_model_input(arrow=True))
    assert rep["pass"] and set(rep["coefficients"].values()) == {"ℤ"}
    assert rep["transitions"]["a"]["iso"] and abs(rep["transitions"]["a"]["matrix"][0][0]) == 1


def test_em_model_u_equals_v():
    X = point(3)
    D = constant_diagram(point_category(), X)
    ident = SSetDiagramMap(D, D, {"*": SimplicialMap.identity(X)})
    rep = em_model(point_category(), D, D, D, ident, ident, 2)
    assert rep["pass"] and rep["coefficients"]["*"] == "0"


def test_em_model_rejects_low_n():
    with pytest.raises(HypothesisFailed):
        args = list(sphere_model_input())
        args[-1] = 1
        em_model(*args)


def test_complex_shapes_from_pieces():
    C = chain_complex_from_pieces([("pair", 0, 3), ("tors", 1, 2)], 1)
    assert isinstance(C, NNChainComplex)
    assert str(C.homology(0)) == "ℤ/3" and str(C.homology(1)) == "ℤ/2"
