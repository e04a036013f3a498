"""Finite categories, groupoids, functors and set-valued functors.

Composition is stored as a lookup table keyed by ``(g, f)`` meaning ``g o f``
(first ``f``, then ``g``).  Everything is validated exhaustively when built.

>>> G = FinGroupoid.from_cyclic_group(2)
>>> len(G.morphisms), is_contractible(G)
(2, False)
>>> is_contractible(FinGroupoid.contractible(["a", "b"]))
True
"""

from __future__ import annotations

from itertools import product

from .errors import ValidationError
from .labels import sort_key, sorted_labels
from .ordinals import compose as ord_compose, identity as ord_identity, monotone_maps


class FinCategory:
    """Finite category with explicit composition table.

    ``morphisms`` maps a morphism label to ``(src, tgt)``; ``identities``
    maps each object to its identity morphism; ``comp[(g, f)]`` is ``g o f``
    for every composable pair.
    """

    def __init__(self, objects, morphisms, identities, comp, check=True):
        self.objects = tuple(sorted_labels(set(objects)))
        self.src = {f: st[0] for f, st in morphisms.items()}
        self.tgt = {f: st[1] for f, st in morphisms.items()}
        self.morphisms = tuple(sorted_labels(morphisms))
        self.ids = dict(identities)
        self.comp = dict(comp)
        self._hom = {}
        for f in self.morphisms:
            self._hom.setdefault((self.src[f], self.tgt[f]), []).append(f)
        self._out = {}
        for f in self.morphisms:
            self._out.setdefault(self.src[f], []).append(f)
        if check:
            self._validate()

    def _validate(self):
        objs = set(self.objects)
        for f in self.morphisms:
            if self.src[f] not in objs or self.tgt[f] not in objs:
                raise ValidationError(f"morphism {f!r} has an unknown endpoint", law="endpoints")
        for x in self.objects:
            e = self.ids.get(x)
            if e is None or self.src.get(e) != x or self.tgt.get(e) != x:
                raise ValidationError(f"object {x!r} lacks an identity", law="identity")
        for f in self.morphisms:
            for g in self._out.get(self.tgt[f], ()):
                h = self.comp.get((g, f))
                if h is None:
                    raise ValidationError(f"composite of {g!r} after {f!r} missing",
                                          law="totality")
                if self.src.get(h) != self.src[f] or self.tgt.get(h) != self.tgt[g]:
                    raise ValidationError(f"composite of {g!r} after {f!r} has wrong endpoints",
                                          law="endpoints")
        for f in self.morphisms:
            if self.comp[(f, self.ids[self.src[f]])] != f or self.comp[(self.ids[self.tgt[f]], f)] != f:
                raise ValidationError(f"identity law fails at {f!r}", law="unit")
        for f in self.morphisms:
            for g in self._out.get(self.tgt[f], ()):
                gf = self.comp[(g, f)]
                for h in self._out.get(self.tgt[g], ()):
                    if self.comp[(h, gf)] != self.comp[(self.comp[(h, g)], f)]:
                        raise ValidationError(f"associativity fails at ({h!r}, {g!r}, {f!r})",
                                              law="associativity")

    def hom(self, a, b):
        return tuple(self._hom.get((a, b), ()))

    def out(self, a):
        return tuple(self._out.get(a, ()))

    def compose(self, g, f):
        """g after f."""
        return self.comp[(g, f)]

    def identity(self, x):
        return self.ids[x]

    def is_identity(self, f):
        return self.ids[self.src[f]] == f

    def __repr__(self):
        return f"{type(self).__name__}({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    def to_json(self):
        from .labels import label_str
        out = {
            "objects": [label_str(x) for x in self.objects],
            "morphisms": [{"name": label_str(f), "src": label_str(self.src[f]),
                           "tgt": label_str(self.tgt[f])} for f in self.morphisms],
            "identities": {label_str(x): label_str(self.ids[x]) for x in self.objects},
            "comp": {f"({label_str(g)},{label_str(f)})": label_str(h)
                     for (g, f), h in sorted(self.comp.items(), key=lambda kv: sort_key(kv[0]))},
        }
        return out


class FinGroupoid(FinCategory):
    """Finite category in which every morphism has a listed inverse."""

    def __init__(self, objects, morphisms, identities, comp, inv=None, check=True):
        super().__init__(objects, morphisms, identities, comp, check=check)
        if inv is None:
            inv = {}
            for f in self.morphisms:
                for g in self.hom(self.tgt[f], self.src[f]):
                    if self.comp[(g, f)] == self.ids[self.src[f]]:
                        inv[f] = g
                        break
                else:
                    raise ValidationError(f"morphism {f!r} has no inverse", law="inverse")
        self.inv = dict(inv)
        if check:
            for f in self.morphisms:
                g = self.inv.get(f)
                if g is None or self.comp.get((g, f)) != self.ids[self.src[f]] \
                        or self.comp.get((f, g)) != self.ids[self.tgt[f]]:
                    raise ValidationError(f"inverse of {f!r} is wrong", law="inverse")

    def inverse(self, f):
        return self.inv[f]

    def to_json(self):
        from .labels import label_str
        out = super().to_json()
        out["inv"] = {label_str(f): label_str(self.inv[f]) for f in self.morphisms}
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_group(cls, elements, mult, unit, obj="*"):
        """One-object groupoid; ``mult(g, h)`` is the product g·h = g o h."""
        elements = list(elements)
        morphisms = {g: (obj, obj) for g in elements}
        comp = {(g, h): mult(g, h) for g in elements for h in elements}
        return cls([obj], morphisms, {obj: unit}, comp)

    @classmethod
    def from_cyclic_group(cls, n, obj="*"):
        return cls.from_group(range(n), lambda a, b: (a + b) % n, 0, obj)

    @classmethod
    def contractible(cls, objs):
        """C(S): exactly one morphism (a, b) between any two objects."""
        objs = list(objs)
        morphisms = {(a, b): (a, b) for a in objs for b in objs}
        comp = {((b, c), (a, b)): (a, c) for a in objs for b in objs for c in objs}
        return cls(objs, morphisms, {a: (a, a) for a in objs}, comp,
                   inv={(a, b): (b, a) for a in objs for b in objs})

    @classmethod
    def discrete(cls, objs):
        objs = list(objs)
        return cls(objs, {(a, a): (a, a) for a in objs}, {a: (a, a) for a in objs},
                   {((a, a), (a, a)): (a, a) for a in objs}, inv={(a, a): (a, a) for a in objs})

    @classmethod
    def trivial(cls):
        return cls.discrete(["*"])

    @classmethod
    def from_json(cls, obj):
        objects = list(obj["objects"])
        morphisms = {m["name"]: (m["src"], m["tgt"]) for m in obj["morphisms"]}
        ids = dict(obj.get("identities", {}))
        if not ids:
            raise ValidationError("identities must be listed", law="identity")
        comp = {}
        for key, h in obj["comp"].items():
            g, f = _split_pair(key)
            comp[(g, f)] = h
        inv = obj.get("inv")
        return cls(objects, morphisms, ids, comp, inv=inv)


def _split_pair(key):
    key = key.strip()
    if not (key.startswith("(") and key.endswith(")")):
        raise ValueError(f"bad composition key {key!r}")
    inner = key[1:-1]
    depth = 0
    for k, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return inner[:k], inner[k + 1:]
    raise ValueError(f"bad composition key {key!r}")


def product_groupoid(G, H):
    objs = [(a, b) for a in G.objects for b in H.objects]
    morphisms = {(f, g): ((G.src[f], H.src[g]), (G.tgt[f], H.tgt[g]))
                 for f in G.morphisms for g in H.morphisms}
    ids = {(a, b): (G.ids[a], H.ids[b]) for a, b in objs}
    comp = {}
    for (g2, g1), gg in G.comp.items():
        for (h2, h1), hh in H.comp.items():
            comp[((g2, h2), (g1, h1))] = (gg, hh)
    inv = {(f, g): (G.inv[f], H.inv[g]) for f, g in morphisms}
    return FinGroupoid(objs, morphisms, ids, comp, inv=inv, check=False)


class GpdFunctor:
    """Functor between finite categories given by object and morphism tables."""

    def __init__(self, source, target, obj_map, mor_map, check=True):
        self.source = source
        self.target = target
        self.obj = dict(obj_map)
        self.mor = dict(mor_map)
        if check:
            self._validate()

    def _validate(self):
        S, T = self.source, self.target
        tobjs = set(T.objects)
        for x in S.objects:
            if self.obj.get(x) not in tobjs:
                raise ValidationError(f"object {x!r} is not sent to an object", law="objects")
            if self.mor.get(S.ids[x]) != T.ids[self.obj[x]]:
                raise ValidationError(f"identity of {x!r} not preserved", law="identities")
        for f in S.morphisms:
            Ff = self.mor.get(f)
            if Ff is None or T.src.get(Ff) != self.obj[S.src[f]] or T.tgt.get(Ff) != self.obj[S.tgt[f]]:
                raise ValidationError(f"morphism {f!r} sent to a morphism with wrong endpoints",
                                      law="endpoints")
        for (g, f), h in S.comp.items():
            if T.comp[(self.mor[g], self.mor[f])] != self.mor[h]:
                raise ValidationError(f"composition not preserved at ({g!r}, {f!r})",
                                      law="composition")

    def __call__(self, x):
        return self.obj[x]

    def on_morphism(self, f):
        return self.mor[f]

    def __matmul__(self, other):
        """self after other."""
        return GpdFunctor(other.source, self.target,
                          {x: self.obj[y] for x, y in other.obj.items()},
                          {f: self.mor[g] for f, g in other.mor.items()}, check=False)

    def equals(self, other):
        return self.obj == other.obj and self.mor == other.mor

    @classmethod
    def identity(cls, G):
        return cls(G, G, {x: x for x in G.objects}, {f: f for f in G.morphisms}, check=False)

    def to_json(self):
        from .labels import label_str
        return {"objects": {label_str(k): label_str(v) for k, v in self.obj.items()},
                "morphisms": {label_str(k): label_str(v) for k, v in self.mor.items()}}


def product_functor(F, G, source=None, target=None):
    source = source or product_groupoid(F.source, G.source)
    target = target or product_groupoid(F.target, G.target)
    return GpdFunctor(source, target,
                      {(a, b): (F.obj[a], G.obj[b]) for a, b in source.objects},
                      {(f, g): (F.mor[f], G.mor[g]) for f, g in source.morphisms}, check=False)


class SetFunctor:
    """Covariant functor from a finite groupoid to finite sets.

    ``value[i]`` is a tuple of element labels; ``action[f]`` is a dict
    sending ``value[src f]`` bijectively to ``value[tgt f]``.
    """

    def __init__(self, source, value, action, check=True):
        self.source = source
        self.value = {i: tuple(sorted_labels(value.get(i, ()))) for i in source.objects}
        self.action = {f: dict(action[f]) for f in source.morphisms}
        if check:
            self._validate()

    def _validate(self):
        G = self.source
        for f in G.morphisms:
            a = self.action[f]
            dom = set(self.value[G.src[f]])
            cod = set(self.value[G.tgt[f]])
            if set(a) != dom or not set(a.values()) <= cod:
                raise ValidationError(f"action of {f!r} has wrong domain or codomain",
                                      law="action endpoints")
            if len(set(a.values())) != len(a) or len(dom) != len(cod):
                raise ValidationError(f"action of {f!r} is not a bijection", law="bijection")
        for x in G.objects:
            if any(self.action[G.ids[x]][e] != e for e in self.value[x]):
                raise ValidationError(f"identity of {x!r} acts nontrivially", law="identity")
        for (g, f), h in G.comp.items():
            ag, af, ah = self.action[g], self.action[f], self.action[h]
            if any(ag[af[e]] != ah[e] for e in af):
                raise ValidationError(f"action does not respect ({g!r}, {f!r})",
                                      law="composition")

    def act(self, f, e):
        return self.action[f][e]

    @classmethod
    def representable(cls, G, v):
        """Hom(v, -) with action by post-composition."""
        value = {i: G.hom(v, i) for i in G.objects}
        action = {f: {a: G.comp[(f, a)] for a in value[G.src[f]]} for f in G.morphisms}
        return cls(G, value, action)

    def total(self):
        return [(i, e) for i in self.source.objects for e in self.value[i]]


# -- operations -----------------------------------------------------------------

def components(G):
    """Connected components as sorted tuples of objects, in sorted order."""
    parent = {x: x for x in G.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in G.morphisms:
        a, b = find(G.src[f]), find(G.tgt[f])
        if a != b:
            if sort_key(a) < sort_key(b):
                parent[b] = a
            else:
                parent[a] = b
    groups = {}
    for x in G.objects:
        groups.setdefault(find(x), []).append(x)
    return sorted((tuple(sorted_labels(v)) for v in groups.values()), key=sort_key)


def vertex_group_order(G, x):
    return len(G.hom(x, x))


def is_contractible(G):
    """Nonempty, connected, and exactly one morphism between each ordered pair."""
    if not G.objects:
        return False
    n = len(G.objects)
    if len(G.morphisms) != n * n:
        return False
    return all(len(G.hom(a, b)) == 1 for a in G.objects for b in G.objects)


def is_equivalence(F):
    """Fully faithful and essentially surjective, checked exhaustively."""
    S, T = F.source, F.target
    for a in S.objects:
        for b in S.objects:
            imgs = [F.mor[f] for f in S.hom(a, b)]
            if len(set(imgs)) != len(imgs):
                return False
            if len(imgs) != len(T.hom(F.obj[a], F.obj[b])):
                return False
    hit = {F.obj[a] for a in S.objects}
    for comp in components(T):
        if not hit.intersection(comp):
            return False
    return True


def translation_groupoid(F):
    """Objects (i, x) with x in F(i); morphisms (alpha, x): (i, x) -> (j, alpha_* x)."""
    G = F.source
    objs = F.total()
    morphisms = {}
    for f in G.morphisms:
        for x in F.value[G.src[f]]:
            morphisms[(f, x)] = ((G.src[f], x), (G.tgt[f], F.action[f][x]))
    ids = {(i, x): (G.ids[i], x) for i, x in objs}
    comp = {}
    inv = {}
    for (f, x), (_s, (j, y)) in morphisms.items():
        inv[(f, x)] = (G.inv[f], y)
        for g in G.out(j):
            comp[((g, y), (f, x))] = (G.comp[(g, f)], x)
    return FinGroupoid(objs, morphisms, ids, comp, inv=inv)


def comma_to_object(G, x):
    """The groupoid G/x of arrows into x, with its projection to G."""
    if x not in set(G.objects):
        raise KeyError(f"object {x!r} not in groupoid")
    objs = [f for f in G.morphisms if G.tgt[f] == x]
    morphisms = {}
    comp = {}
    inv = {}
    for f in objs:
        y = G.src[f]
        for beta in G.out(y):
            f2 = G.comp[(f, G.inv[beta])]
            morphisms[(f, beta)] = (f, f2)
    for (f, beta), (_a, f2) in morphisms.items():
        inv[(f, beta)] = (f2, G.inv[beta])
        for beta2 in G.out(G.tgt[beta]):
            comp[((f2, beta2), (f, beta))] = (f, G.comp[(beta2, beta)])
    ids = {f: (f, G.ids[G.src[f]]) for f in objs}
    C = FinGroupoid(objs, morphisms, ids, comp, inv=inv)
    proj = GpdFunctor(C, G, {f: G.src[f] for f in objs}, {m: m[1] for m in C.morphisms})
    return C, proj


def grothendieck(H, N=None):
    """Category of pairs (n, x) for a truncated cosimplicial groupoid H.

    A morphism (n, x) -> (m, y) is a pair (gamma, f) with gamma: [n] -> [m]
    and f: gamma_*(x) -> y in H^m; (delta, g) o (gamma, f) = (delta gamma, g o delta_*(f)).
    Morphism labels are ``(n, x, gamma_images, m, f)``.
    """
    if N is None:
        N = H.trunc
    if N > H.trunc:
        from .errors import DegreeError
        raise DegreeError(f"requested {N} above truncation {H.trunc}")
    objs = [(n, x) for n in range(N + 1) for x in H.level(n).objects]
    morphisms = {}
    for n in range(N + 1):
        for m in range(N + 1):
            Hm = H.level(m)
            for gamma in monotone_maps(n, m):
                F = H.functor(gamma)
                for x in H.level(n).objects:
                    gx = F.obj[x]
                    for f in Hm.out(gx):
                        morphisms[(n, x, gamma.images, m, f)] = ((n, x), (m, Hm.tgt[f]))
    ids = {(n, x): (n, x, ord_identity(n).images, n, H.level(n).ids[x]) for n, x in objs}
    out = {}
    for lab, (s, _t) in morphisms.items():
        out.setdefault(s, []).append(lab)
    comp = {}
    for (n, x, gi, m, f), (_s, (m2, y)) in morphisms.items():
        gamma = _ordmap(gi, m)
        for (m3, y3, di, k, g) in out[(m2, y)]:
            delta = _ordmap(di, k)
            Hk = H.level(k)
            df = H.functor(delta).mor[f]
            comp[((m3, y3, di, k, g), (n, x, gi, m, f))] = (
                n, x, ord_compose(delta, gamma).images, k, Hk.comp[(g, df)])
    return FinCategory(objs, morphisms, ids, comp)


def _ordmap(images, target):
    from .ordinals import OrdMap
    return OrdMap(tuple(images), target)


def nerve(G, M):
    """Nerve truncated at simplicial level M.

    Level 0 is the object set; level m >= 1 consists of tuples
    ``(f_1, ..., f_m)`` with ``tgt f_k = src f_{k+1}``.
    """
    from .simplicial import TruncSimpSet
    levels = [list(G.objects)]
    for m in range(1, M + 1):
        if m == 1:
            levels.append([(f,) for f in G.morphisms])
        else:
            nxt = []
            for t in levels[-1]:
                for g in G.out(G.tgt[t[-1]]):
                    nxt.append(t + (g,))
            levels.append(nxt)
    faces = {}
    degens = {}
    for m in range(1, M + 1):
        for i in range(m + 1):
            table = {}
            for t in levels[m]:
                if m == 1:
                    table[t] = G.tgt[t[0]] if i == 0 else G.src[t[0]]
                elif i == 0:
                    table[t] = t[1:]
                elif i == m:
                    table[t] = t[:-1]
                else:
                    table[t] = t[:i - 1] + (G.comp[(t[i], t[i - 1])],) + t[i + 1:]
            faces[(m, i)] = table
    for m in range(0, M):
        for i in range(m + 1):
            table = {}
            for t in levels[m]:
                if m == 0:
                    table[t] = (G.ids[t],)
                else:
                    v = G.src[t[0]] if i == 0 else G.tgt[t[i - 1]]
                    table[t] = t[:i] + (G.ids[v],) + t[i:]
            degens[(m, i)] = table
    return TruncSimpSet(M, levels, faces, degens)


def natural_transformations(F, G):
    """All natural transformations F => G between functors into a groupoid.

    Returned as dicts object -> component morphism.
    """
    S, T = F.source, F.target
    objs = list(S.objects)
    out = []

    def extend(k, acc):
        if k == len(objs):
            out.append(dict(acc))
            return
        x = objs[k]
        for c in T.hom(F.obj[x], G.obj[x]):
            acc[x] = c
            ok = True
            for f in S.morphisms:
                a, b = S.src[f], S.tgt[f]
                if a in acc and b in acc:
                    if T.comp[(acc[b], F.mor[f])] != T.comp[(G.mor[f], acc[a])]:
                        ok = False
                        break
            if ok:
                extend(k + 1, acc)
            del acc[x]

    extend(0, {})
    return out


def all_functor_pairs_check(G):
    """Exhaustive inverse check used by tests: inv(inv f) = f and f o inv f = id."""
    return all(G.inv[G.inv[f]] == f and G.comp[(f, G.inv[f])] == G.ids[G.tgt[f]]
               for f in G.morphisms)


def hom_counts(C):
    """Table {(a, b): |C(a, b)|} over all ordered pairs of objects."""
    return {(a, b): len(C.hom(a, b)) for a, b in product(C.objects, C.objects)}
