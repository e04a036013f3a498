import json
import random

import pytest

from cosimplex import cli
from cosimplex.abelian import FGAbGroup
from cosimplex.corpus import random_cosimp_ab, random_cosimp_set, sphere_model_input
from cosimplex.cosab import cohomology_H, constant_ab
from cosimplex.cosimplicial import ordinal_vertices
from cosimplex.groupoid import FinGroupoid
from cosimplex.io import BundleParseError, bundle_of, dumps, load_bundle
from cosimplex.postnikov import gamma_dk
from cosimplex.corpus import chain_complex_from_pieces
from cosimplex.simplicial import boundary_simplex, free_abelian
from cosimplex.torsors import constant_gpd, ordinal_contractible

Z = FGAbGroup.free(1)


def write(tmp_path, obj, name="x"):
    p = tmp_path / f"{name}.json"
    p.write_text(dumps(bundle_of(obj, name)), encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- bundles -----------------------------------------------------------------------

@pytest.mark.parametrize("make", [
    lambda: random_cosimp_set(random.Random(1), 2),
    lambda: random_cosimp_ab(random.Random(1), 2),
    lambda: constant_gpd(FinGroupoid.from_cyclic_group(2), 2),
    lambda: ordinal_contractible(2),
    lambda: boundary_simplex(2, 2),
    lambda: free_abelian(boundary_simplex(2, 2)),
    lambda: sphere_model_input(arrow=True),
], ids=["cosimplicial-set", "cosimplicial-ab", "cosimplicial-gpd", "contractible-gpd",
        "simplicial-set", "simplicial-ab", "diagram-bundle"])
def test_bundle_round_trip(make):
    text = dumps(bundle_of(make(), "t"))
    b = load_bundle(text)
    again = dumps(bundle_of(b.obj, "t"))
    assert load_bundle(again).payload == b.payload
    assert dumps(bundle_of(load_bundle(again).obj, "t")) == again


def test_round_trip_keeps_cohomology():
    A = random_cosimp_ab(random.Random(4), 3)
    B = load_bundle(dumps(bundle_of(A))).obj
    assert all(cohomology_H(A, n).invariants() == cohomology_H(B, n).invariants() for n in range(3))


def test_malformed_bundles():
    with pytest.raises(BundleParseError):
        load_bundle("{not json")
    with pytest.raises(BundleParseError):
        load_bundle(json.dumps({"kind": "teapot", "payload": {}}))
    with pytest.raises(BundleParseError):
        load_bundle(json.dumps({"kind": "cosimplicial-set", "payload": {"trunc": 1}}))


# -- cli ---------------------------------------------------------------------------

def test_check_pass(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, ordinal_vertices(2), "v"))
    assert code == 0 and "pass" in out


def test_check_names_violated_law(tmp_path, capsys):
    data = bundle_of(constant_ab(Z, 1), "bad")
    data["payload"]["d"]["(1,0)"]["matrix"] = [[2]]
    p = tmp_path / "bad.json"
    p.write_text(dumps(data))
    code, out, err = run(capsys, "check", "--json", str(p))
    assert code == 2
    assert json.loads(out)["law"] == "s^0d^0 = id on level 0"
    assert "s^0d^0" in err


def test_check_malformed_json(tmp_path, capsys):
    p = tmp_path / "junk.json"
    p.write_text("{ oops")
    assert run(capsys, "check", str(p))[0] == 3
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 3


def test_cohomology_table_of_constant_z(tmp_path, capsys):
    code, out, err = run(capsys, "cohomology", write(tmp_path, constant_ab(Z, 4)), "--degrees", "0..4")
    assert code == 0
    assert out.splitlines() == ["0: ℤ ℤ ℤ", "1: 0 0 0", "2: 0 0 0", "3: 0 0 n/a", "4: n/a n/a n/a"]
    assert "n <= N-2" in err


def test_cohomology_of_cosimplicial_set_json(tmp_path, capsys):
    X = random_cosimp_set(random.Random(7), 3)
    code, out, _ = run(capsys, "cohomology", "--json", write(tmp_path, X))
    rep = json.loads(out)
    assert code == 0 and all(r["agree"] for r in rep["rows"])


def test_cohomology_budget_falls_back_to_resolution(tmp_path, capsys):
    code, out, _ = run(capsys, "cohomology", "--json", "--cap", "1", write(tmp_path, constant_ab(Z, 3)))
    rep = json.loads(out)
    assert code == 0 and rep["rows"][0]["cobar_method"] == "resolution"


def test_cohomology_bad_degrees(tmp_path, capsys):
    assert run(capsys, "cohomology", write(tmp_path, constant_ab(Z, 2)), "--degrees", "3..1")[0] == 5


def test_torsors_and_hdelta(tmp_path, capsys):
    path = write(tmp_path, constant_gpd(FinGroupoid.from_cyclic_group(2), 2), "z2")
    code, out, _ = run(capsys, "torsors", path)
    assert code == 0 and "torsor classes: 1" in out and "torsors vs h_delta: pass" in out
    code, out, _ = run(capsys, "hdelta", "--json", path)
    rep = json.loads(out)
    assert code == 0 and rep["objects"] == 1 and rep["vertex_group_orders"] == [2]
    code, out, _ = run(capsys, "torsors", "--json", write(tmp_path, constant_gpd(FinGroupoid.trivial(), 2), "t"))
    rep = json.loads(out)
    assert code == 0 and rep["torsors"] == 1 and rep["hdelta"]["objects"] == 1


def test_oversized_input_hits_budget(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, constant_gpd(FinGroupoid.from_cyclic_group(3), 3), "z3")
    assert run(capsys, "torsors", "--cap", "5", path)[0] == 4
    monkeypatch.setenv("COSIMPLEX_BUDGET", "3")
    assert run(capsys, "hdelta", path)[0] == 4
    monkeypatch.setenv("COSIMPLEX_BUDGET", "lots")
    assert run(capsys, "hdelta", path)[0] == 5


def test_wrong_kind_is_usage_error(tmp_path, capsys):
    assert run(capsys, "torsors", write(tmp_path, constant_ab(Z, 1)))[0] == 5


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemma15", "--seed", "0", "--count", "100")
    assert code == 0 and out.splitlines()[-1] == "lemma15: 100/100 passed"


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["verify", "--suite", "lemma99"])
    assert e.value.code == 5


def test_em_model_and_k_invariant_on_sphere(tmp_path, capsys):
    path = write(tmp_path, sphere_model_input(arrow=True), "s2")
    code, out, _ = run(capsys, "em-model", path)
    assert code == 0 and out.splitlines()[-1] == "em-model: pass"
    code, out, _ = run(capsys, "k-invariant", path)
    assert code == 0
    A = gamma_dk(chain_complex_from_pieces([("free", 2), ("free", 3)], 4), 5)
    code, out, _ = run(capsys, "k-invariant", "--json", "--n", "3", write(tmp_path, A, "two"))
    assert code == 0 and json.loads(out)["pass"]


def test_k_invariant_needs_n(tmp_path, capsys):
    A = gamma_dk(chain_complex_from_pieces([("free", 2)], 2), 4)
    assert run(capsys, "k-invariant", write(tmp_path, A))[0] == 5


def test_json_output_is_byte_identical(tmp_path, capsys):
    path = write(tmp_path, random_cosimp_ab(random.Random(3), 2))
    first = run(capsys, "cohomology", "--json", path)[1]
    second = run(capsys, "cohomology", "--json", path)[1]
    assert first == second
    v1 = run(capsys, "verify", "--json", "--suite", "cor16", "--count", "3")[1]
    v2 = run(capsys, "verify", "--json", "--suite", "cor16", "--count", "3")[1]
    assert v1 == v2
