"""JSON bundles: the single interchange format of the command line.

A bundle is ``{"kind": ..., "name": ..., "truncations": {...}, "payload": ...}``.
Labels read back from JSON are strings; every structure is validated by its
constructor on load, so a bundle that loads is a bundle that satisfies its
identity suite.

>>> from cosimplex.cosab import constant_ab
>>> from cosimplex.abelian import FGAbGroup
>>> b = bundle_of(constant_ab(FGAbGroup.free(1), 2), name="Z")
>>> b["kind"], b["truncations"]
('cosimplicial-ab', {'N': 2})
>>> A = load_bundle(dumps(b)).obj
>>> A.trunc, [G.ngens for G in A.levels]
(2, [1, 1, 1])
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .abelian import AbHom, FGAbGroup
from .cosab import TruncCosimpAb, _parse_key
from .cosimplicial import TruncCosimpSet
from .errors import ValidationError
from .groupoid import FinCategory, FinGroupoid, _split_pair
from .simplicial import SimplicialMap, TruncSimpAb, TruncSimpSet
from .torsors import TruncCosimpGpd

KINDS = ("cosimplicial-set", "cosimplicial-ab", "cosimplicial-gpd",
         "simplicial-set", "simplicial-ab", "diagram-bundle")


class BundleParseError(ValueError):
    """Malformed JSON or a payload of the wrong shape."""


@dataclass
class ObjectBundle:
    kind: str
    name: str
    truncations: dict
    payload: dict
    obj: object = field(default=None, repr=False)


# -- per-kind payload codecs -------------------------------------------------

def _table_keys(table):
    return {_parse_key(k): dict(v) for k, v in table.items()}


def cosimp_set_from_json(obj):
    return TruncCosimpSet(int(obj["trunc"]), obj["levels"], _table_keys(obj.get("d", {})),
                          _table_keys(obj.get("s", {})))


def simp_set_from_json(obj):
    return TruncSimpSet(int(obj["trunc"]), obj["levels"], _table_keys(obj.get("d", {})),
                        _table_keys(obj.get("s", {})))


def simp_ab_to_json(A):
    return {"trunc": A.trunc,
            "levels": [G.to_json() for G in A.levels],
            "d": {f"({m},{i})": f.to_json() for (m, i), f in sorted(A.faces.items())},
            "s": {f"({m},{i})": f.to_json() for (m, i), f in sorted(A.degeneracies.items())}}


def simp_ab_from_json(obj):
    levels = [FGAbGroup.from_json(g) for g in obj["levels"]]
    faces, degens = {}, {}
    # faces are keyed by source level m: d_i: A_m -> A_{m-1}
    for key, f in obj.get("d", {}).items():
        m, i = _parse_key(key)
        faces[(m, i)] = AbHom.from_json(levels[m], levels[m - 1], f)
    for key, f in obj.get("s", {}).items():
        m, i = _parse_key(key)
        degens[(m, i)] = AbHom.from_json(levels[m], levels[m + 1], f)
    return TruncSimpAb(int(obj["trunc"]), levels, faces, degens)


def category_from_json(obj):
    morphisms = {m["name"]: (m["src"], m["tgt"]) for m in obj["morphisms"]}
    comp = {_split_pair(k): h for k, h in obj["comp"].items()}
    if "inv" in obj:
        return FinGroupoid(obj["objects"], morphisms, obj["identities"], comp, inv=obj["inv"])
    return FinCategory(obj["objects"], morphisms, obj["identities"], comp)


def simp_map_to_json(f):
    from .labels import label_str
    return [{label_str(a): label_str(b) for a, b in t.items()} for t in f.levels]


def diagram_from_json(obj):
    """Payload ``{"category", "n", "U", "V", "F", "incl", "p"}``.

    Each of U, V, F is ``{"objects": {x: simplicial-set}, "maps": {f: levels}}``
    and ``incl``/``p`` are ``{x: levels}``; returns the argument tuple of
    :func:`cosimplex.postnikov.em_model`.
    """
    from .postnikov import SSetDiagram, SSetDiagramMap
    I = category_from_json(obj["category"])

    def diagram(d):
        objects = {x: simp_set_from_json(d["objects"][x]) for x in I.objects}
        maps = {f: SimplicialMap(objects[I.src[f]], objects[I.tgt[f]], d["maps"][f]) for f in I.morphisms}
        return SSetDiagram(I, objects, maps)

    U, V, F = diagram(obj["U"]), diagram(obj["V"]), diagram(obj["F"])

    def dmap(src, tgt, comps):
        return SSetDiagramMap(src, tgt, {x: SimplicialMap(src.objects[x], tgt.objects[x], comps[x])
                                         for x in I.objects})

    return I, U, V, F, dmap(U, V, obj["incl"]), dmap(V, F, obj["p"]), int(obj["n"])


def diagram_to_json(I, U, V, F, incl, p, n):
    def diagram(D):
        return {"objects": {x: D.objects[x].to_json() for x in I.objects},
                "maps": {f: simp_map_to_json(D.maps[f]) for f in I.morphisms}}

    return {"category": I.to_json(), "n": n, "U": diagram(U), "V": diagram(V), "F": diagram(F),
            "incl": {x: simp_map_to_json(incl.components[x]) for x in I.objects},
            "p": {x: simp_map_to_json(p.components[x]) for x in I.objects}}


_DECODERS = {
    "cosimplicial-set": cosimp_set_from_json,
    "cosimplicial-ab": TruncCosimpAb.from_json,
    "cosimplicial-gpd": TruncCosimpGpd.from_json,
    "simplicial-set": simp_set_from_json,
    "simplicial-ab": simp_ab_from_json,
    "diagram-bundle": diagram_from_json,
}


def _kind_of(obj):
    if isinstance(obj, TruncCosimpAb):
        return "cosimplicial-ab"
    if isinstance(obj, TruncCosimpGpd):
        return "cosimplicial-gpd"
    if isinstance(obj, TruncCosimpSet):
        return "cosimplicial-set"
    if isinstance(obj, TruncSimpSet):
        return "simplicial-set"
    if isinstance(obj, TruncSimpAb):
        return "simplicial-ab"
    raise TypeError(f"no bundle kind for {type(obj).__name__}")


def bundle_of(obj, name="", kind=None):
    """Wrap a structure (or an em_model argument tuple) as a bundle dict."""
    if isinstance(obj, tuple):
        payload, kind, truncs = diagram_to_json(*obj), "diagram-bundle", {"n": obj[-1]}
    else:
        kind = kind or _kind_of(obj)
        payload = simp_ab_to_json(obj) if kind == "simplicial-ab" else obj.to_json()
        truncs = {"M" if kind.startswith("simplicial") else "N": obj.trunc}
    return {"kind": kind, "name": name, "truncations": truncs, "payload": payload}


def dumps(data):
    """Canonical JSON text: sorted keys, two-space indent, UTF-8 safe."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_bundle(text):
    """Parse and validate; BundleParseError on bad JSON or shape,
    ValidationError when the payload breaks its identities."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise BundleParseError(f"malformed JSON: {e}") from e
    if not isinstance(data, dict) or data.get("kind") not in KINDS or "payload" not in data:
        raise BundleParseError(f"expected an object with kind in {KINDS} and a payload")
    try:
        obj = _DECODERS[data["kind"]](data["payload"])
    except ValidationError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as e:
        raise BundleParseError(f"payload does not match kind {data['kind']!r}: {e!r}") from e
    return ObjectBundle(data["kind"], data.get("name", ""), data.get("truncations", {}),
                        data["payload"], obj)


def read_bundle(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise BundleParseError(str(e)) from e
    return load_bundle(text)
