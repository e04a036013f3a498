import random

import pytest
from hypothesis import given, settings, strategies as st

from cosimplex.corpus import congruence_quotient, random_cosimp_set, representable
from cosimplex.cosimplicial import (TruncCosimpSet, constant, constant_space, delta_object, delta_skeleton,
                                    extension_candidates, inclusion_of_skeleton, inverse_limit_trunc,
                                    limit_cones, matching_set, matching_surjective, maximal_augmentation,
                                    ordinal_vertices, tot_discrete)
from cosimplex.errors import DegreeError, ValidationError
from cosimplex.simplicial import point


def test_vertices_of_delta_have_empty_limit():
    X = ordinal_vertices(3)
    assert maximal_augmentation(X) == []
    assert inverse_limit_trunc(X) == []


def test_constant_limit_is_the_set():
    X = constant(["a", "b", "c"], 2)
    assert maximal_augmentation(X) == ["a", "b", "c"]
    assert inverse_limit_trunc(X) == ["a", "b", "c"]
    assert tot_discrete(X) == ["a", "b", "c"]


def test_augmentation_by_construction():
    # X^0 = {a, b}; d^0 and d^1 agree on a only
    X = TruncCosimpSet(1, [["a", "b"], ["p", "q", "r"]],
                       {(1, 0): {"a": "p", "b": "q"}, (1, 1): {"a": "p", "b": "r"}},
                       {(0, 0): {"p": "a", "q": "b", "r": "b"}})
    assert maximal_augmentation(X) == ["a"]
    assert inverse_limit_trunc(X) == ["a"]


def test_broken_identity_is_named():
    with pytest.raises(ValidationError) as e:
        # s^0 d^0 sends b to a
        TruncCosimpSet(1, [["a", "b"], ["p", "q"]], {(1, 0): {"a": "p", "b": "p"}, (1, 1): {"a": "q", "b": "q"}},
                       {(0, 0): {"p": "a", "q": "a"}})
    assert e.value.law == "s^0d^0 = id on level 0"


def test_matching_set_of_vertices():
    X = ordinal_vertices(2)
    M, s = matching_set(X, 2)
    assert len(M) == 4 and len(X.levels[2]) == 3
    assert not matching_surjective(X, 2)


def test_matching_set_of_constant_is_diagonal():
    X = constant([0, 1, 2], 3)
    for n in range(1, 4):
        M, s = matching_set(X, n)
        assert M == [(x,) * n for x in (0, 1, 2)]
        assert matching_surjective(X, n)


def test_matching_set_level_one_is_s0():
    X = representable(1, 2)
    M, s = matching_set(X, 1)
    assert M == [(x,) for x in X.levels[0]]
    assert s == {x: (X.codegeneracies[(0, 0)][x],) for x in X.levels[1]}


def test_matching_degree_range():
    with pytest.raises(DegreeError):
        matching_set(constant([0], 2), 3)


def test_extension_of_skeleton_inclusion_into_delta():
    for n in (1, 2):
        X = delta_object(2, 2)
        cands = extension_candidates(X, inclusion_of_skeleton(2, 2, n - 1), n)
        assert cands == [tuple(range(n + 1))]


def test_extension_into_constant_point():
    P = point(2)
    X = constant_space(P, 2)
    S = delta_skeleton(2, 2, 0)
    f = [[{sig: P.levels[m][0] for sig in S.levels[k].levels[m]} for m in range(3)] for k in range(3)]
    assert len(extension_candidates(X, f, 1)) == 1


def test_extension_into_zero_skeleton_is_empty():
    X = delta_skeleton(1, 1, 0)
    f = inclusion_of_skeleton(1, 1, 0)
    assert extension_candidates(X, f, 1) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_limit_equals_augmentation(seed, N):
    X = random_cosimp_set(random.Random(seed), N)
    assert maximal_augmentation(X) == inverse_limit_trunc(X)
    for cone in limit_cones(X):
        assert len(cone) == N + 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_quotient_map_is_cosimplicial(seed):
    rng = random.Random(seed)
    X = random_cosimp_set(rng, 2)
    n = rng.randint(0, 2)
    if len(X.levels[n]) < 2:
        return
    x, y = rng.sample(X.levels[n], 2)
    Q, q = congruence_quotient(X, [(n, x, y)], with_map=True)
    assert q.levels[n][x] == q.levels[n][y]
    assert all(len(Q.levels[k]) <= len(X.levels[k]) for k in range(3))
