import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from cosimplex.errors import CapExceeded, ValidationError
from cosimplex.groupoid import (FinGroupoid, GpdFunctor, SetFunctor, comma_to_object, grothendieck,
                                hom_counts, is_contractible, is_equivalence, nerve, translation_groupoid)
from cosimplex.ordinals import cosimplicial_identities, monotone_maps, simplicial_identities
from cosimplex.simplicial import (PresentedGroupoid, boundary_simplex, complete_groupoid, disjoint_union,
                                  free_abelian, fundamental_groupoid, homology, hurewicz, point,
                                  skeleton, standard_simplex)
from cosimplex.torsors import constant_gpd

Z2 = FinGroupoid.from_cyclic_group(2)


# -- groupoids ---------------------------------------------------------------------

def test_nerve_of_z2_level_sizes():
    assert [len(lv) for lv in nerve(Z2, 2).levels] == [1, 2, 4]


def test_nerve_of_discrete_groupoid():
    X = nerve(FinGroupoid.discrete("abc"), 3)
    assert [len(lv) for lv in X.levels] == [3, 3, 3, 3]
    assert all(not X.nondegenerate(m) for m in range(1, 4))


def test_nerve_of_contractible_pair():
    assert len(nerve(FinGroupoid.contractible(["a", "b"]), 1).levels[1]) == 4


def test_is_contractible_examples():
    assert is_contractible(FinGroupoid.contractible([0, 1, 2]))
    assert not is_contractible(Z2)
    assert not is_contractible(FinGroupoid.discrete([]))


def test_is_equivalence_examples():
    C2 = FinGroupoid.contractible(["a", "b"])
    assert is_equivalence(GpdFunctor.identity(Z2))
    incl = GpdFunctor(FinGroupoid.trivial(), C2, {"*": "a"}, {FinGroupoid.trivial().ids["*"]: C2.ids["a"]})
    assert is_equivalence(incl)
    T = FinGroupoid.trivial()
    e = T.ids["*"]
    assert not is_equivalence(GpdFunctor(Z2, T, {"*": "*"}, {0: e, 1: e}))


def test_translation_groupoid_examples():
    assert is_contractible(translation_groupoid(SetFunctor.representable(Z2, "*")))
    T = FinGroupoid.trivial()
    e = T.ids["*"]
    D = translation_groupoid(SetFunctor(T, {"*": ["x", "y"]}, {e: {"x": "x", "y": "y"}}))
    assert len(D.objects) == 2 and len(D.morphisms) == 2
    E = translation_groupoid(SetFunctor(Z2, {"*": []}, {0: {}, 1: {}}))
    assert not E.objects


def test_comma_to_object():
    C, proj = comma_to_object(Z2, "*")
    assert is_contractible(C) and len(C.objects) == 2
    Ct, _ = comma_to_object(FinGroupoid.trivial(), "*")
    assert len(Ct.objects) == 1 and len(Ct.morphisms) == 1


def test_comma_contractible_on_connected_groupoids():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.randint(2, 4)
        G = FinGroupoid.contractible(range(rng.randint(1, 3)))
        from cosimplex.groupoid import product_groupoid
        P = product_groupoid(G, FinGroupoid.from_cyclic_group(n))
        for x in P.objects:
            assert is_contractible(comma_to_object(P, x)[0])


def test_grothendieck_of_trivial_is_delta_1():
    C = grothendieck(constant_gpd(FinGroupoid.trivial(), 1), 1)
    assert len(C.objects) == 2
    assert sorted(hom_counts(C).values()) == [1, 1, 2, 3]


def test_grothendieck_level_zero():
    C = grothendieck(constant_gpd(Z2, 0), 0)
    assert len(C.objects) == 1 and len(C.morphisms) == 2


def test_bad_composition_table_rejected():
    with pytest.raises(ValidationError):
        FinGroupoid(["*"], {"e": ("*", "*"), "a": ("*", "*")}, {"*": "e"},
                    {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"})


# -- simplicial sets -------------------------------------------------------------

def test_standard_simplex_sizes():
    assert [len(lv) for lv in standard_simplex(1, 1).levels] == [2, 3]
    assert all(len(lv) == 1 for lv in standard_simplex(0, 3).levels)
    assert [len(lv) for lv in standard_simplex(2, 2).levels] == [3, 6, 10]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3))
def test_standard_simplex_counts(k, M):
    X = standard_simplex(k, M)
    assert [len(lv) for lv in X.levels] == [comb(m + k + 1, m + 1) for m in range(M + 1)]


def test_skeleton_examples():
    S = skeleton(standard_simplex(1, 1), 0)
    assert len(S.levels[0]) == 2 and len(S.levels[1]) == 2
    X = standard_simplex(2, 2)
    assert skeleton(X, 2).levels == X.levels
    level2 = skeleton(X, 1).levels[2]
    assert not skeleton(X, 1).nondegenerate(2)
    assert len(level2) == 9  # monotone maps [2] -> [2] other than the identity


def test_homology_examples():
    for k in range(3):
        X = standard_simplex(k, 2)
        assert str(homology(X, 0)) == "ℤ" and homology(X, 1).is_trivial()
    assert str(homology(boundary_simplex(2, 2), 1)) == "ℤ"
    assert str(homology(disjoint_union([point(1), point(1)]), 0)) == "ℤ^2"


def test_fundamental_groupoid_examples():
    G = complete_groupoid(fundamental_groupoid(standard_simplex(2, 2)))
    assert is_contractible(G) and len(G.objects) == 3
    with pytest.raises(CapExceeded):
        complete_groupoid(fundamental_groupoid(boundary_simplex(2, 2)), cap=100)
    D = complete_groupoid(fundamental_groupoid(disjoint_union([point(2), point(2)])))
    assert len(D.objects) == 2 and len(D.morphisms) == 2


def test_complete_groupoid_examples():
    P = PresentedGroupoid(["a", "b"], {"e": ("a", "b")}, [])
    assert len(complete_groupoid(P).morphisms) == 4
    Q = PresentedGroupoid(["*"], {"g": ("*", "*")}, [(("g", 1), ("g", 1))])
    assert len(complete_groupoid(Q).morphisms) == 2
    R = PresentedGroupoid(["*"], {"g": ("*", "*")}, [])
    with pytest.raises(CapExceeded):
        complete_groupoid(R, cap=100)


def test_hurewicz_examples():
    ZX, _h = hurewicz(point(2))
    assert [G.ngens for G in ZX.levels] == [1, 1, 1]
    Z2pts, _ = hurewicz(disjoint_union([point(1), point(1)]))
    assert [G.ngens for G in Z2pts.levels] == [2, 2]
    assert free_abelian(standard_simplex(1, 1)).levels[1].ngens == 3


def test_identity_families_are_dual():
    # the simplicial identities are the cosimplicial ones read in the opposite category
    assert len(simplicial_identities(2)) == len(cosimplicial_identities(2))
    assert len(monotone_maps(1, 2)) == 6
