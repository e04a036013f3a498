"""Acceptance criteria, one test each.

Every check is exact integer arithmetic, so the pinned tolerance is zero:
counts and invariant factors must match exactly and every pass rate must
be 100%.  Each test prints one ``PASS``/``FAIL`` line (shown even without
``-s``).  The whole file runs in about a minute on a laptop.
"""

import pytest

from cosimplex.cosimplicial import (inverse_limit_trunc, matching_set, matching_surjective,
                                    maximal_augmentation, ordinal_vertices)
from cosimplex.corpus import sphere_model_input
from cosimplex.groupoid import FinGroupoid
from cosimplex.postnikov import em_model
from cosimplex.suites import run
from cosimplex.torsors import constant_gpd, theorem12_check

SEED = 0
REQUIRED_PASS_RATE = 1.0  # exact: no tolerance on any criterion


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} {detail}".rstrip())
        assert ok, detail
    return emit


def suite_outcome(name, count):
    cases = run(name, seed=SEED, count=count)
    passed = sum(c.ok for c in cases)
    failed = [f"{c.name}: {c.detail}" for c in cases if not c.ok]
    return cases, passed, f"({passed}/{len(cases)} passed){' ' + str(failed[:3]) if failed else ''}"


def test_matching_set_of_vertex_object_has_four_elements(report):
    X = ordinal_vertices(2)
    M, _s = matching_set(X, 2)
    ok = len(M) == 4 and len(X.levels[2]) == 3 and not matching_surjective(X, 2)
    report(1, "matching-set count", ok, f"|M^1 X|={len(M)} |X^2|={len(X.levels[2])}")


def test_vertex_object_has_empty_limit_and_augmentation(report):
    X = ordinal_vertices(3)
    aug, lim = maximal_augmentation(X), inverse_limit_trunc(X)
    report(2, "empty limit of the vertex object", aug == [] and lim == [], f"aug={aug} lim={lim}")


def test_limit_equals_maximal_augmentation(report):
    cases, passed, d = suite_outcome("lemma1", 200)
    report(3, "limit = augmentation", len(cases) == 200 and passed / len(cases) >= REQUIRED_PASS_RATE, d)


def test_matching_splitting_is_a_right_inverse(report):
    cases, passed, d = suite_outcome("lemma15", 100)
    report(4, "s o j = id", len(cases) == 100 and passed / len(cases) >= REQUIRED_PASS_RATE, d)


def test_normalization_preserves_cohomology(report):
    cases, passed, d = suite_outcome("lemma18", 100)
    report(5, "cN_k cohomology and contracting homotopies",
           len(cases) == 100 and passed / len(cases) >= REQUIRED_PASS_RATE, d)


def test_pi0_equals_cochain_homotopy_class_count(report):
    cases, passed, d = suite_outcome("lemma19", 25)
    report(6, "pi0 vs brute-force classes", len(cases) == 25 and passed == 25, d)


def test_derived_limit_equals_cosimplicial_cohomology(report):
    cases, passed, d = suite_outcome("lemma22", 25)
    ok = len(cases) == 25 and passed == 25 and all("N=4" in c.detail for c in cases)
    report(7, "derived limits = cohomology at N=4", ok, d)


def test_levelwise_surjections_are_fibrations(report):
    cases, passed, d = suite_outcome("cor16", 20)
    negatives = [c for c in cases if "negative" in c.name]
    ok = len(cases) == 21 and passed == 21 and len(negatives) >= 1
    report(8, "BK fibration check with engineered negative", ok, d)


def test_torsors_match_h_delta_for_cyclic_groups(report):
    rows = []
    ok = True
    for order in (2, 3):
        rep = theorem12_check(constant_gpd(FinGroupoid.from_cyclic_group(order), 3))
        ok = ok and rep["pass"] and rep["torsors"] == rep["pi0_hdelta"] == 1 \
            and rep["vertex_group_orders"] == [order]
        rows.append(f"Z/{order}: torsors={rep['torsors']} pi0={rep['pi0_hdelta']} "
                    f"orders={rep['vertex_group_orders']} pass={rep['pass']}")
    report(9, "torsors vs h_delta at N=3", ok, "; ".join(rows))


def test_h_delta_of_contractible_is_level_zero(report):
    cases, passed, d = suite_outcome("lemma11", 20)
    report(10, "h_delta(U) = U^0", len(cases) == 20 and passed == 20, d)


def test_levelwise_equivalences_induce_equivalences(report):
    cases, passed, d = suite_outcome("cor14", 10)
    report(11, "h_delta preserves levelwise equivalences", len(cases) == 10 and passed == 10, d)


def test_dold_kan_round_trips_and_postnikov_windows(report):
    cases, passed, d = suite_outcome("dold-kan", 50)
    report(12, "Dold-Kan and Postnikov windows", len(cases) == 50 and passed == 50, d)


def test_k_invariant_exactness_and_sphere_model(report):
    cases, passed, d = suite_outcome("remark25", 20)
    seeded = [c for c in cases if "sphere" not in c.name]
    rep = em_model(*sphere_model_input())
    sphere_ok = (rep["pass"] and rep["coefficients"] == {"*": "ℤ"}
                 and all(rep["objects"]["*"].values()))
    ok = len(seeded) == 20 and passed == len(cases) and sphere_ok
    report(13, "k-invariant windows and S^2 model", ok, f"{d} S^2 coefficient={rep['coefficients']['*']}")
