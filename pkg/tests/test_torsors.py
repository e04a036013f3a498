import random

import pytest
from hypothesis import given, settings, strategies as st

from cosimplex.corpus import random_base_gpd, random_contractible_gpd, random_levelwise_equivalence
from cosimplex.cosimplicial import matching_surjective
from cosimplex.errors import CapExceeded, HypothesisFailed, NotATorsor
from cosimplex.groupoid import FinGroupoid, SetFunctor, is_contractible, is_equivalence, translation_groupoid
from cosimplex.torsors import (HDiagram, _ops, classifying_space, constant_gpd, convert, empty_diagram,
                               enumerate_torsors, h_delta, h_delta_report, hocolim_diagram,
                               induced_hdelta_functor, is_torsor, lemma11_check, ordinal_contractible,
                               pb_cocycle, representable_diagram, theorem12_check, torsor_morphisms,
                               torsor_to_hdelta, trivialize)

T = FinGroupoid.trivial()


def cyclic(n, N):
    return constant_gpd(FinGroupoid.from_cyclic_group(n), N)


def identity_representable(H):
    """Hom(v, -) at every level with every g_theta an identity (one-object levels)."""
    vs = [G.objects[0] for G in H.levels]
    g = {op: H.levels[op[1]].ids[vs[op[1]]] for op in _ops(H.trunc)}
    return representable_diagram(H, vs, g)


def test_classifying_space_of_constants():
    B = classifying_space(constant_gpd(T, 2), 2)
    assert all(len(lv) == 1 for X in B.levels for lv in X.levels)
    B2 = classifying_space(cyclic(2, 1), 2)
    assert all([len(lv) for lv in X.levels] == [1, 2, 4] for X in B2.levels)


def test_ordinal_contractible_objects_have_no_surjective_matching():
    U = ordinal_contractible(2)
    assert all(is_contractible(G) for G in U.levels)
    assert not matching_surjective(U.objects_cosimp(), 2)


def test_convert_representable_and_back():
    H = cyclic(2, 2)
    X = identity_representable(H)
    total, proj, action = convert(X, "internal")
    assert [len(lv) for lv in total.levels] == [2, 2, 2]  # morphisms out of the vertex
    Y = convert((H, total, proj, action), "functorial")
    assert Y.same_as(X)
    assert X.pasting_violation() is None


def test_convert_empty_diagram():
    H = cyclic(3, 1)
    E = empty_diagram(H)
    Y = convert((H,) + convert(E, "internal"), "functorial")
    assert Y.same_as(E) and not is_torsor(E)


def test_convert_rejects_unknown_direction():
    with pytest.raises(ValueError):
        convert(empty_diagram(cyclic(2, 0)), "sideways")


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_convert_round_trip_on_pulled_back_torsors(seed):
    rng = random.Random(seed)
    H = random_base_gpd(rng, rng.randint(0, 2))
    D = h_delta(H)
    if not D.objects:
        return
    X = pb_cocycle(H, tau=rng.choice(D.objects))
    Y = convert((H,) + convert(X, "internal"), "functorial")
    assert Y.same_as(X)


def test_hocolim_examples():
    H = cyclic(2, 2)
    BE, p = hocolim_diagram(identity_representable(H), 2)
    for X in BE.levels:
        assert [len(lv) for lv in X.levels] == [2, 4, 8]
    BE0, _ = hocolim_diagram(empty_diagram(H), 1)
    assert all(not lv for X in BE0.levels for lv in X.levels)
    Ht = constant_gpd(T, 1)
    BP, _ = hocolim_diagram(identity_representable(Ht), 2)
    assert all(len(lv) == 1 for X in BP.levels for lv in X.levels)


def test_is_torsor_examples():
    assert is_torsor(identity_representable(cyclic(3, 2)))
    assert not is_torsor(empty_diagram(cyclic(2, 1)))
    e = T.ids["*"]
    fixed = HDiagram(constant_gpd(T, 0), [SetFunctor(T, {"*": ["x", "y"]}, {e: {"x": "x", "y": "y"}})], {})
    assert not is_torsor(fixed)
    with pytest.raises(NotATorsor):
        trivialize(fixed)


def test_trivialize_representable():
    X = identity_representable(cyclic(2, 1))
    for (v, iso), F in zip(trivialize(X), X.functors):
        assert v == "*" and sorted(iso.values()) == sorted(F.value["*"])
        assert is_contractible(translation_groupoid(F))


def test_torsor_morphisms_count_is_group_order():
    for n in (2, 3):
        X = identity_representable(cyclic(n, 2))
        maps = torsor_morphisms(X, X)
        assert len(maps) == n
        ident = [{e: e for e in p} for p in X.proj]
        assert ident in [list(m) for m in maps]


def test_torsors_of_disconnected_base_in_different_components():
    H = constant_gpd(FinGroupoid.discrete(["a", "b"]), 1)
    reps, count = enumerate_torsors(H)
    assert count == 2
    assert torsor_morphisms(reps[0], reps[1]) == []


def test_enumerate_torsors_examples():
    assert enumerate_torsors(cyclic(2, 3))[1] == 1
    reps, count = enumerate_torsors(constant_gpd(T, 2))
    assert count == 1 and all(len(p) == 1 for p in reps[0].proj)
    assert enumerate_torsors(ordinal_contractible(2))[1] == 1


def test_enumerate_torsors_cap():
    with pytest.raises(CapExceeded):
        enumerate_torsors(cyclic(3, 3), cap=5)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_fast_enumeration_matches_general_search(seed):
    rng = random.Random(seed)
    H = random_base_gpd(rng, rng.randint(0, 1))
    try:
        slow = enumerate_torsors(H, cap=200000, general=True)[1]
    except CapExceeded:
        return
    assert enumerate_torsors(H)[1] == slow


def test_h_delta_examples():
    for n in (2, 3):
        D = h_delta(cyclic(n, 3))
        assert len(D.objects) == 1 and len(D.morphisms) == n
    Dt = h_delta(constant_gpd(T, 2))
    assert len(Dt.objects) == 1 and len(Dt.morphisms) == 1
    U = ordinal_contractible(3)
    assert len(h_delta(U).objects) == len(U.levels[0].objects) == 1


def test_h_delta_report_stabilization_flag():
    _D, row = h_delta_report(cyclic(2, 2))
    assert row["stabilized"] is True and row["vertex_group_orders"] == [2]
    _D0, row0 = h_delta_report(cyclic(2, 0))
    assert row0["stabilized"] is None


def test_h_delta_of_contractible_examples():
    assert lemma11_check(ordinal_contractible(3))
    assert lemma11_check(constant_gpd(T, 3))
    with pytest.raises(HypothesisFailed):
        lemma11_check(cyclic(2, 2))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_h_delta_of_random_contractible_is_level_zero(seed):
    rng = random.Random(seed)
    assert lemma11_check(random_contractible_gpd(rng, rng.randint(0, 3)))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_levelwise_equivalence_induces_equivalence(seed):
    rng = random.Random(seed)
    f = random_levelwise_equivalence(rng, rng.randint(1, 2))
    assert is_equivalence(induced_hdelta_functor(f))


def test_torsor_to_hdelta_examples():
    H = constant_gpd(T, 2)
    X = identity_representable(H)
    assert torsor_to_hdelta(X) == h_delta(H).objects[0]
    H2 = cyclic(2, 2)
    assert torsor_to_hdelta(identity_representable(H2))[0] == "*"
    with pytest.raises(NotATorsor):
        torsor_to_hdelta(empty_diagram(H2))


def test_pb_cocycle_examples():
    H = constant_gpd(T, 2)
    X = pb_cocycle(H, tau=h_delta(H).objects[0])
    assert is_torsor(X) and all(len(p) == 1 for p in X.proj)
    with pytest.raises(ValueError):
        pb_cocycle(H)
    with pytest.raises(HypothesisFailed):
        H2 = cyclic(2, 1)
        pb_cocycle(H2, cocycle=(H2, None))


def test_pb_cocycle_identity_cocycle():
    from cosimplex.torsors import CosimpGpdMap
    from cosimplex.groupoid import GpdFunctor
    U = ordinal_contractible(2)
    ident = CosimpGpdMap(U, U, [GpdFunctor.identity(G) for G in U.levels])
    X = pb_cocycle(U, cocycle=(U, ident))
    assert is_torsor(X)
    for n, F in enumerate(X.functors):
        assert all(len(F.value[x]) == 1 for x in U.levels[n].objects)


def test_torsor_comparison_examples():
    rep = theorem12_check(constant_gpd(T, 2))
    assert rep["pass"] and rep["torsors"] == rep["hdelta_objects"] == 1
    for n in (2, 3):
        rep = theorem12_check(cyclic(n, 3))
        assert rep["pass"] and rep["pi0_hdelta"] == rep["torsors"] == 1
        assert rep["vertex_group_orders"] == [n]
    rep = theorem12_check(ordinal_contractible(2))
    assert rep["pass"] and rep["vertex_group_orders"] == [1]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_torsor_components_match_h_delta(seed):
    rng = random.Random(seed)
    rep = theorem12_check(random_base_gpd(rng, rng.randint(0, 2)))
    assert rep["pass"] and rep["torsors"] == rep["pi0_hdelta"]
