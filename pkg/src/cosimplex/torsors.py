"""Cosimplicial groupoids, H-diagrams, torsors and the groupoid H^Delta.

A truncated cosimplicial groupoid H stores groupoids H^0..H^N and the
elementary structure functors.  An H-diagram X assigns to each level a
set-valued functor X^n on H^n together with transitions X^m(x) -> X^n(theta x);
it is a torsor when every translation groupoid is contractible.

>>> H = constant_gpd(FinGroupoid.from_cyclic_group(2), 2)
>>> reps, count = enumerate_torsors(H)
>>> count, len(h_delta(H).objects), len(h_delta(H).morphisms)
(1, 1, 2)
"""

from __future__ import annotations

from itertools import product

from .cosimplicial import (CosimpSpaceMap, TruncCosimpSet, TruncCosimpSpace,
                           ordinal_vertices)
from .errors import CapExceeded, HypothesisFailed, NotATorsor, ValidationError
from .groupoid import (FinGroupoid, GpdFunctor, SetFunctor, components, is_contractible,
                       is_equivalence, nerve, product_functor, product_groupoid,
                       translation_groupoid)
from .labels import sort_key, sorted_labels
from .ordinals import OrdMap, all_maps, cosimplicial_identities, monotone_maps
from .ordinals import compose as ord_compose
from .simplicial import SimplicialMap
from .structure import Cosimplicial


def _ops(N):
    """Elementary operations in the order used by searches: by level, cofaces first."""
    out = []
    for n in range(1, N + 1):
        out += [("d", n, i) for i in range(n + 1)]
        out += [("s", n - 1, i) for i in range(n)]
    return out


def _op_levels(op):
    kind, n, _i = op
    return (n - 1, n) if kind == "d" else (n + 1, n)


class TruncCosimpGpd(Cosimplicial):
    """Cosimplicial groupoid on levels 0..trunc with structure functors."""

    def __init__(self, trunc, levels, cofaces, codegeneracies, check=True):
        self.trunc = trunc
        self.levels = list(levels)
        self.cofaces = dict(cofaces)
        self.codegeneracies = dict(codegeneracies)
        if len(self.levels) != trunc + 1:
            raise ValidationError(f"expected {trunc + 1} levels", law="levels")
        if check:
            self._validate()

    def _compose(self, g, f):
        return g @ f

    def _identity(self, n):
        return GpdFunctor.identity(self.levels[n])

    def _equal(self, a, b, n):
        return a.equals(b)

    def _validate(self):
        for op in _ops(self.trunc):
            a, b = _op_levels(op)
            F = self.cofaces.get(op[1:]) if op[0] == "d" else self.codegeneracies.get(op[1:])
            if F is None:
                raise ValidationError(f"structure functor {op} missing", law=f"{op[0]}^{op[2]} into level {op[1]}")
            # re-validate against the stored levels, not whatever the functor was built with
            GpdFunctor(self.levels[a], self.levels[b], F.obj, F.mor)
        self._check_identities()

    def level(self, n):
        return self.levels[n]

    def functor(self, theta):
        return self.apply(theta)

    def truncate(self, N):
        return TruncCosimpGpd(N, self.levels[:N + 1],
                              {k: v for k, v in self.cofaces.items() if k[0] <= N},
                              {k: v for k, v in self.codegeneracies.items() if k[0] < N},
                              check=False)

    def objects_cosimp(self):
        """The cosimplicial set of objects."""
        return TruncCosimpSet(self.trunc, [G.objects for G in self.levels],
                              {k: F.obj for k, F in self.cofaces.items()},
                              {k: F.obj for k, F in self.codegeneracies.items()})

    def morphisms_cosimp(self):
        return TruncCosimpSet(self.trunc, [G.morphisms for G in self.levels],
                              {k: F.mor for k, F in self.cofaces.items()},
                              {k: F.mor for k, F in self.codegeneracies.items()})

    def to_json(self):
        return {"trunc": self.trunc,
                "levels": [G.to_json() for G in self.levels],
                "d": {f"({n},{i})": F.to_json() for (n, i), F in sorted(self.cofaces.items())},
                "s": {f"({n},{i})": F.to_json() for (n, i), F in sorted(self.codegeneracies.items())}}

    @classmethod
    def from_json(cls, obj):
        N = int(obj["trunc"])
        levels = [FinGroupoid.from_json(g) for g in obj["levels"]]

        def functors(table, shift):
            out = {}
            for key, F in table.items():
                n, i = (int(t) for t in key.strip("()").split(","))
                a, b = n + shift, n
                out[(n, i)] = GpdFunctor(levels[a], levels[b], F["objects"], F["morphisms"])
            return out

        return cls(N, levels, functors(obj.get("d", {}), -1), functors(obj.get("s", {}), 1))

    def __repr__(self):
        return (f"TruncCosimpGpd(trunc={self.trunc}, "
                f"sizes={[(len(G.objects), len(G.morphisms)) for G in self.levels]})")


class CosimpGpdMap:
    """Levelwise functors f^n: G^n -> H^n commuting with every structure functor."""

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = list(components)
        if check:
            for n, F in enumerate(self.components):
                GpdFunctor(source.levels[n], target.levels[n], F.obj, F.mor)
            for key, F in source.cofaces.items():
                n = key[0]
                if not (self.components[n] @ F).equals(target.cofaces[key] @ self.components[n - 1]):
                    raise ValidationError(f"map not natural for d^{key[1]} into level {n}",
                                          law=f"d^{key[1]} into level {n}")
            for key, F in source.codegeneracies.items():
                n = key[0]
                if not (self.components[n] @ F).equals(target.codegeneracies[key] @ self.components[n + 1]):
                    raise ValidationError(f"map not natural for s^{key[1]} into level {n}",
                                          law=f"s^{key[1]} into level {n}")

    def __matmul__(self, other):
        return CosimpGpdMap(other.source, self.target,
                            [f @ g for f, g in zip(self.components, other.components)], check=False)


def is_levelwise_equivalence(f):
    return all(is_equivalence(F) for F in f.components)


# -- constructions -------------------------------------------------------------------

def _induced_gpd(N, levels, obj_maps, mor_maps):
    """Assemble a cosimplicial groupoid from per-operation object and morphism tables."""
    cof, cod = {}, {}
    for op in _ops(N):
        a, b = _op_levels(op)
        F = GpdFunctor(levels[a], levels[b], obj_maps(op), mor_maps(op), check=False)
        (cof if op[0] == "d" else cod)[op[1:]] = F
    return TruncCosimpGpd(N, levels, cof, cod)


def constant_gpd(G, N):
    ident = GpdFunctor.identity(G)
    return TruncCosimpGpd(N, [G] * (N + 1),
                          {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)},
                          {(n, i): ident for n in range(N) for i in range(n + 1)})


def _struct_table(X, op):
    return X.cofaces[op[1:]] if op[0] == "d" else X.codegeneracies[op[1:]]


def contractible_on(X):
    """C(X): level n is the contractible groupoid on X^n."""
    levels = [FinGroupoid.contractible(lv) for lv in X.levels]

    def objs(op):
        return _struct_table(X, op)

    def mors(op):
        t = _struct_table(X, op)
        return {(a, b): (t[a], t[b]) for a in t for b in t}

    return _induced_gpd(X.trunc, levels, objs, mors)


def discrete_on(X):
    levels = [FinGroupoid.discrete(lv) for lv in X.levels]

    def mors(op):
        t = _struct_table(X, op)
        return {(a, a): (t[a], t[a]) for a in t}

    return _induced_gpd(X.trunc, levels, lambda op: _struct_table(X, op), mors)


def ordinal_contractible(N):
    """C(Ob Delta): contractible groupoids on the vertex sets {0..n}."""
    return contractible_on(ordinal_vertices(N))


def product_gpd(H, K):
    if H.trunc != K.trunc:
        raise ValidationError("truncations differ", law="truncation")
    levels = [product_groupoid(a, b) for a, b in zip(H.levels, K.levels)]
    cof = {k: product_functor(F, K.cofaces[k], levels[k[0] - 1], levels[k[0]])
           for k, F in H.cofaces.items()}
    cod = {k: product_functor(F, K.codegeneracies[k], levels[k[0] + 1], levels[k[0]])
           for k, F in H.codegeneracies.items()}
    return TruncCosimpGpd(H.trunc, levels, cof, cod)


def projection_gpd(H, K, P=None):
    """First projection H x K -> H."""
    P = P or product_gpd(H, K)
    comps = [GpdFunctor(P.levels[n], H.levels[n], {x: x[0] for x in P.levels[n].objects},
                        {f: f[0] for f in P.levels[n].morphisms}) for n in range(H.trunc + 1)]
    return CosimpGpdMap(P, H, comps)


def section_at_point(H, K, point, P=None):
    """H -> H x K, h |-> (h, id of point_n), for a cosimplicial object point of K."""
    P = P or product_gpd(H, K)
    comps = []
    for n in range(H.trunc + 1):
        p = point[n]
        e = K.levels[n].ids[p]
        comps.append(GpdFunctor(H.levels[n], P.levels[n], {x: (x, p) for x in H.levels[n].objects},
                                {f: (f, e) for f in H.levels[n].morphisms}))
    return CosimpGpdMap(H, P, comps)


def nerve_map(F, A, B):
    """Simplicial map B(F): A -> B between nerves of the source and target."""
    M = A.trunc
    comps = [dict(F.obj)]
    for m in range(1, M + 1):
        comps.append({t: tuple(F.mor[f] for f in t) for t in A.levels[m]})
    return SimplicialMap(A, B, comps, check=False)


def classifying_space(H, M):
    """Levelwise nerve at simplicial truncation M."""
    nerves = [nerve(G, M) for G in H.levels]
    cof = {k: nerve_map(F, nerves[k[0] - 1], nerves[k[0]]) for k, F in H.cofaces.items()}
    cod = {k: nerve_map(F, nerves[k[0] + 1], nerves[k[0]]) for k, F in H.codegeneracies.items()}
    return TruncCosimpSpace(H.trunc, nerves, cof, cod)


def classifying_map(f, BG, BH):
    comps = [nerve_map(F, BG.levels[n], BH.levels[n]) for n, F in enumerate(f.components)]
    return CosimpSpaceMap(BG, BH, comps)


# -- H-diagrams ----------------------------------------------------------------------

class HDiagram:
    """An H-diagram in sets, held in functorial and internal form at once.

    ``functors[n]`` is a SetFunctor on H^n whose fibres are pairwise disjoint;
    ``transitions[op]`` sends each element of level a to level b for the
    elementary operation op.  The internal form is the cosimplicial set
    ``total`` of all elements, the projection ``proj[n]`` to objects, and the
    action ``action[n][(alpha, e)]``.
    """

    def __init__(self, base, functors, transitions, check=True):
        self.base = base
        self.functors = list(functors)
        self.transitions = {op: dict(t) for op, t in transitions.items()}
        N = base.trunc
        self.proj = []
        for n, F in enumerate(self.functors):
            p = {}
            for x in F.source.objects:
                for e in F.value[x]:
                    if e in p:
                        raise ValidationError(f"element {e!r} lies in two fibres at level {n}",
                                              law="disjoint fibres")
                    p[e] = x
            self.proj.append(p)
        self.action = []
        for n, F in enumerate(self.functors):
            self.action.append({(f, e): y for f, t in F.action.items() for e, y in t.items()})
        cof = {op[1:]: t for op, t in self.transitions.items() if op[0] == "d"}
        cod = {op[1:]: t for op, t in self.transitions.items() if op[0] == "s"}
        levels = [tuple(p) for p in self.proj]
        self.total = TruncCosimpSet(N, levels, cof, cod, check=False)
        if check:
            self._validate()

    def _validate(self):
        H = self.base
        if len(self.functors) != H.trunc + 1:
            raise ValidationError("one set functor per level required", law="levels")
        for n, F in enumerate(self.functors):
            if F.source is not H.levels[n]:
                SetFunctor(H.levels[n], F.value, F.action)
        for op in _ops(H.trunc):
            t = self.transitions.get(op)
            a, b = _op_levels(op)
            if t is None or set(t) != set(self.proj[a]) or not set(t.values()) <= set(self.proj[b]):
                raise ValidationError(f"transition {op} is not a total map", law=f"{op[0]}^{op[2]} into level {op[1]}")
            Fop = _struct_table(H, op)
            for e, y in t.items():
                if self.proj[b][y] != Fop.obj[self.proj[a][e]]:
                    raise ValidationError(f"transition {op} does not cover the base",
                                          law="projection")
            Fa = self.functors[a]
            Fb = self.functors[b]
            for f, act in Fa.action.items():
                g = Fop.mor[f]
                for e, y in act.items():
                    if t[y] != Fb.action[g][t[e]]:
                        raise ValidationError(f"transition {op} is not natural at {f!r}",
                                              law="naturality")
        self.total._check_identities()

    def transition(self, theta):
        """h_theta on all elements of level theta.source."""
        return self.total.apply(theta)

    def pasting_violation(self):
        """First (gamma, theta) with h_{gamma theta} != h_gamma o h_theta, or None."""
        N = self.base.trunc
        for theta in all_maps(N):
            if theta.is_identity() and self.transition(theta) != {e: e for e in self.proj[theta.source]}:
                return (theta, theta)
            for k in range(N + 1):
                for gamma in monotone_maps(theta.target, k):
                    ht, hg = self.transition(theta), self.transition(gamma)
                    if {e: hg[y] for e, y in ht.items()} != self.transition(ord_compose(gamma, theta)):
                        return (gamma, theta)
        return None

    def internal(self):
        return self.total, self.proj, self.action

    @classmethod
    def from_internal(cls, base, total, proj, action, check=True):
        """Rebuild the functorial form: fibres pi^{-1}(x), alpha_* e = m(alpha, e)."""
        functors = []
        for n, G in enumerate(base.levels):
            value = {x: [] for x in G.objects}
            for e in total.levels[n]:
                value[proj[n][e]].append(e)
            act = {f: {} for f in G.morphisms}
            for (f, e), y in action[n].items():
                act[f][e] = y
            functors.append(SetFunctor(G, value, act, check=check))
        transitions = {}
        for op in _ops(base.trunc):
            transitions[op] = _struct_table(total, op)
        return cls(base, functors, transitions, check=check)

    def same_as(self, other):
        return (all(F.value == G.value and F.action == G.action
                    for F, G in zip(self.functors, other.functors))
                and self.transitions == other.transitions)

    def to_json(self):
        from .labels import label_str
        return {"levels": [{label_str(x): [label_str(e) for e in F.value[x]] for x in F.source.objects}
                           for F in self.functors],
                "transitions": {f"{k}({n},{i})": {label_str(a): label_str(b) for a, b in
                                                  sorted(t.items(), key=lambda kv: sort_key(kv[0]))}
                                for (k, n, i), t in sorted(self.transitions.items())}}

    def __repr__(self):
        return f"HDiagram(sizes={[len(p) for p in self.proj]})"


def convert(X, direction):
    """``"internal"``: HDiagram -> (total, proj, action);
    ``"functorial"``: (base, total, proj, action) -> HDiagram."""
    if direction == "internal":
        return X.internal()
    if direction == "functorial":
        return HDiagram.from_internal(*X)
    raise ValueError(f"unknown direction {direction!r}")


def representable_diagram(H, vertices, g):
    """Levelwise Hom(v_n, -) with transitions alpha |-> theta(alpha) o g_theta.

    ``g[op]`` is a morphism v_b -> op(v_a) of H^b for each elementary op.
    """
    functors = [SetFunctor.representable(H.levels[n], v) for n, v in enumerate(vertices)]
    transitions = {}
    for op in _ops(H.trunc):
        a, b = _op_levels(op)
        F = _struct_table(H, op)
        Gb = H.levels[b]
        transitions[op] = {alpha: Gb.comp[(F.mor[alpha], g[op])] for alpha in H.levels[a].morphisms
                           if H.levels[a].src[alpha] == vertices[a]}
    return HDiagram(H, functors, transitions)


def empty_diagram(H):
    functors = [SetFunctor(G, {}, {f: {} for f in G.morphisms}) for G in H.levels]
    return HDiagram(H, functors, {op: {} for op in _ops(H.trunc)})


def translation_cosimp(X):
    """E_H X: levelwise translation groupoids with the induced structure functors."""
    H = X.base
    levels = [translation_groupoid(F) for F in X.functors]

    def objs(op):
        F, t = _struct_table(H, op), X.transitions[op]
        a, _b = _op_levels(op)
        return {(i, e): (F.obj[i], t[e]) for i, e in levels[a].objects}

    def mors(op):
        F, t = _struct_table(H, op), X.transitions[op]
        a, _b = _op_levels(op)
        return {(f, e): (F.mor[f], t[e]) for f, e in levels[a].morphisms}

    E = _induced_gpd(H.trunc, levels, objs, mors)
    proj = [GpdFunctor(E.levels[n], H.levels[n], {o: o[0] for o in E.levels[n].objects},
                       {m: m[0] for m in E.levels[n].morphisms}) for n in range(H.trunc + 1)]
    return E, CosimpGpdMap(E, H, proj)


def hocolim_diagram(X, M):
    """Levelwise nerve of the translation groupoids and the map to BH."""
    E, p = translation_cosimp(X)
    BE = classifying_space(E, M)
    BH = classifying_space(X.base, M)
    return BE, classifying_map(p, BE, BH)


def is_torsor(X):
    return all(is_contractible(translation_groupoid(F)) for F in X.functors)


def trivialize(X):
    """Per level (v_n, iso Hom(v_n, -) -> X^n) from the least element of X^n."""
    if not is_torsor(X):
        raise NotATorsor("diagram is not a torsor")
    out = []
    for n, F in enumerate(X.functors):
        e0 = sorted_labels(X.proj[n])[0]
        v = X.proj[n][e0]
        iso = {f: F.action[f][e0] for f in F.source.out(v)}
        out.append((v, iso))
    return out


# -- torsor maps and enumeration -----------------------------------------------------

def torsor_morphisms(X, Y, first_only=False):
    """All maps X -> Y over Ob(H) natural in the actions and transitions.

    For torsors a map is fixed on a level by the image of one element, so
    each level contributes at most |fibre| candidates.
    """
    if not (is_torsor(X) and is_torsor(Y)):
        raise NotATorsor("torsor morphisms need torsors on both sides")
    N = X.base.trunc
    per_level = []
    for n, F in enumerate(X.functors):
        e0 = sorted_labels(X.proj[n])[0]
        x0 = X.proj[n][e0]
        G = F.source
        reach = {F.action[f][e0]: f for f in G.out(x0)}
        cands = []
        for y in Y.functors[n].value[x0]:
            phi = {e: Y.functors[n].action[f][y] for e, f in reach.items()}
            ok = all(Y.proj[n][phi[e]] == X.proj[n][e] for e in phi)
            if ok:
                ok = all(phi[F.action[f][e]] == Y.functors[n].action[f][phi[e]]
                         for f in G.morphisms for e in F.value[G.src[f]])
            if ok:
                cands.append(phi)
        per_level.append(cands)
    ops = _ops(N)
    out = []

    def compatible(n, chosen):
        for op in ops:
            a, b = _op_levels(op)
            if max(a, b) != n:
                continue
            tx, ty = X.transitions[op], Y.transitions[op]
            pa, pb = chosen[a], chosen[b]
            if any(pb[tx[e]] != ty[pa[e]] for e in tx):
                return False
        return True

    def extend(n, chosen):
        if first_only and out:
            return
        if n > N:
            out.append([dict(c) for c in chosen])
            return
        for phi in per_level[n]:
            chosen.append(phi)
            if compatible(n, chosen):
                extend(n + 1, chosen)
            chosen.pop()

    extend(0, [])
    for maps in out:
        for n, phi in enumerate(maps):
            if len(set(phi.values())) != len(phi) or len(phi) != len(Y.proj[n]):
                raise ValidationError("torsor map is not an isomorphism", law="isomorphism")
    return out


def isomorphic(X, Y):
    return bool(torsor_morphisms(X, Y, first_only=True))


class _Budget:
    def __init__(self, cap):
        self.cap = cap
        self.used = 0

    def tick(self):
        self.used += 1
        if self.cap is not None and self.used > self.cap:
            raise CapExceeded(f"search exceeded cap {self.cap}")


def _identities_by_completion(N, ops):
    """Each identity attached to the position of the last op it mentions."""
    pos = {op: k for k, op in enumerate(ops)}
    out = {k: [] for k in range(len(ops))}
    for name, start, lhs, rhs in cosimplicial_identities(N):
        last = max(pos[op] for op in list(lhs) + list(rhs))
        out[last].append((name, start, lhs, rhs))
    return out


def _word_cocycle(H, vertices, g, word, start):
    """g_{word}: v_end -> word(v_start), via g_{gamma theta} = gamma(g_theta) o g_gamma."""
    cur = H.levels[start].ids[vertices[start]]
    for op in word:
        _a, b = _op_levels(op)
        F = _struct_table(H, op)
        cur = H.levels[b].comp[(F.mor[cur], g[op])]
    return cur


def _dedupe(found):
    reps = []
    for X in found:
        if not any(isomorphic(X, R) for R in reps):
            reps.append(X)
    return reps


def enumerate_torsors(H, cap=10**6, general=False):
    """Torsors up to isomorphism and their count.

    The default search runs over levelwise representable diagrams; with
    ``general=True`` every level ranges over all set functors with at most
    |Mor(H^n)| elements, which is the slow oracle for the fast search.
    """
    budget = _Budget(cap)
    found = _general_search(H, budget) if general else _representable_search(H, budget)
    reps = _dedupe(found)
    return reps, len(reps)


def _representable_search(H, budget):
    N = H.trunc
    ops = _ops(N)
    closing = _identities_by_completion(N, ops)
    found = []
    for vertices in product(*[G.objects for G in H.levels]):
        budget.tick()
        g = {}

        def extend(k):
            if k == len(ops):
                found.append(representable_diagram(H, list(vertices), g))
                return
            op = ops[k]
            a, b = _op_levels(op)
            target = _struct_table(H, op).obj[vertices[a]]
            for c in H.levels[b].hom(vertices[b], target):
                budget.tick()
                g[op] = c
                if all(_word_cocycle(H, vertices, g, lhs, s) == _word_cocycle(H, vertices, g, rhs, s)
                       for _n, s, lhs, rhs in closing[k]):
                    extend(k + 1)
            g.pop(op, None)

        extend(0)
    return found


def _level_torsor_candidates(G, budget):
    """Set functors on G with contractible translation groupoid, elements 0..k-1."""
    from itertools import permutations
    cands = []
    nonid = [f for f in G.morphisms if not G.is_identity(f)]
    objs = list(G.objects)
    for k in range(1, len(G.morphisms) + 1):
        for sizes in product(range(k + 1), repeat=len(objs)):
            if sum(sizes) != k:
                continue
            value, start = {}, 0
            for x, s in zip(objs, sizes):
                value[x] = list(range(start, start + s))
                start += s
            if any(len(value[G.src[f]]) != len(value[G.tgt[f]]) for f in nonid):
                continue
            choices = [list(permutations(value[G.tgt[f]])) for f in nonid]
            for pick in product(*choices):
                budget.tick()
                act = {G.ids[x]: {e: e for e in value[x]} for x in objs}
                for f, img in zip(nonid, pick):
                    act[f] = dict(zip(value[G.src[f]], img))
                try:
                    F = SetFunctor(G, value, act)
                except ValidationError:
                    continue
                if is_contractible(translation_groupoid(F)):
                    cands.append(F)
    return cands


def _general_search(H, budget):
    N = H.trunc
    ops = _ops(N)
    closing = _identities_by_completion(N, ops)
    level_cands = [_level_torsor_candidates(G, budget) for G in H.levels]
    found = []
    for Fs in product(*level_cands):
        proj = []
        for F in Fs:
            proj.append({e: x for x in F.source.objects for e in F.value[x]})
        t = {}

        def admissible(op):
            a, b = _op_levels(op)
            Fop = _struct_table(H, op)
            Fa, Fb = Fs[a], Fs[b]
            elems = sorted_labels(proj[a])
            options = [[y for y in Fb.value[Fop.obj[proj[a][e]]]] for e in elems]
            for pick in product(*options):
                budget.tick()
                h = dict(zip(elems, pick))
                if all(h[y] == Fb.action[Fop.mor[f]][h[e]]
                       for f, act in Fa.action.items() for e, y in act.items()):
                    yield h

        def word(w, start):
            cur = {e: e for e in proj[start]}
            for op in w:
                cur = {e: t[op][y] for e, y in cur.items()}
            return cur

        def extend(k):
            if k == len(ops):
                found.append(HDiagram(H, Fs, dict(t)))
                return
            op = ops[k]
            for h in admissible(op):
                t[op] = h
                if all(word(lhs, s) == word(rhs, s) for _n, s, lhs, rhs in closing[k]):
                    extend(k + 1)
            t.pop(op, None)

        extend(0)
    return found


# -- the groupoid H^Delta ------------------------------------------------------------

def _const(n, j):
    return OrdMap((j,), n)


def _edge(n, j, k):
    return OrdMap((j, k), n)


class _HDeltaData:
    """Vertex and edge images of a candidate object (x, g) at every level."""

    def __init__(self, H, x, g):
        N = H.trunc
        self.vertex = {}
        self.edge = {}
        for n in range(N + 1):
            for j in range(n + 1):
                self.vertex[(n, j)] = H.functor(_const(n, j)).obj[x]
            if N >= 1:
                for j in range(n + 1):
                    for k in range(j, n + 1):
                        self.edge[(n, j, k)] = H.functor(_edge(n, j, k)).mor[g]


def _object_ok(H, x, g):
    N = H.trunc
    D = _HDeltaData(H, x, g)
    for n in range(N + 1 if N >= 1 else 0):
        G = H.levels[n]
        for j in range(n + 1):
            if D.edge[(n, j, j)] != G.ids[D.vertex[(n, j)]]:
                return False
            for k in range(j, n + 1):
                e = D.edge[(n, j, k)]
                if G.src[e] != D.vertex[(n, j)] or G.tgt[e] != D.vertex[(n, k)]:
                    return False
                for l in range(k, n + 1):
                    if D.edge[(n, j, l)] != G.comp[(D.edge[(n, k, l)], e)]:
                        return False
    # naturality in every ordinal map of the truncation
    for theta in all_maps(N):
        m, n = theta.source, theta.target
        F = H.functor(theta)
        for j in range(m + 1):
            if F.obj[D.vertex[(m, j)]] != D.vertex[(n, theta(j))]:
                return False
            if N >= 1:
                for k in range(j, m + 1):
                    if F.mor[D.edge[(m, j, k)]] != D.edge[(n, theta(j), theta(k))]:
                        return False
    return True


def _morphism_ok(H, src, tgt, tau):
    x, g = src
    y, h = tgt
    N = H.trunc
    A, B = _HDeltaData(H, x, g), _HDeltaData(H, y, h)
    comp = {}
    for n in range(N + 1):
        for j in range(n + 1):
            comp[(n, j)] = H.functor(_const(n, j)).mor[tau]
    for theta in all_maps(N):
        F = H.functor(theta)
        for j in range(theta.source + 1):
            if F.mor[comp[(theta.source, j)]] != comp[(theta.target, theta(j))]:
                return False
    if N >= 1:
        for n in range(N + 1):
            G = H.levels[n]
            for j in range(n + 1):
                for k in range(j, n + 1):
                    if G.comp[(B.edge[(n, j, k)], comp[(n, j)])] != G.comp[(comp[(n, k)], A.edge[(n, j, k)])]:
                        return False
    return True


def h_delta(H, cap=10**6):
    """Groupoid of cosimplicial functors Delta -> H (at truncation N).

    Objects are labelled (x, g): x an object of H^0 and g: d^1 x -> d^0 x in
    H^1 (None when N = 0), which determine the functor on every level.
    Morphisms are labelled (source, tau) with tau: x -> y in H^0.
    """
    budget = _Budget(cap)
    N = H.trunc
    H0 = H.levels[0]
    objs = []
    for x in H0.objects:
        if N == 0:
            budget.tick()
            objs.append((x, None))
            continue
        G1 = H.levels[1]
        a, b = H.cofaces[(1, 1)].obj[x], H.cofaces[(1, 0)].obj[x]
        for g in G1.hom(a, b):
            budget.tick()
            if _object_ok(H, x, g):
                objs.append((x, g))
    by_x = {}
    for o in objs:
        by_x.setdefault(o[0], []).append(o)
    morphisms = {}
    for src in objs:
        for tau in H0.out(src[0]):
            for tgt in by_x.get(H0.tgt[tau], ()):
                budget.tick()
                if _morphism_ok(H, src, tgt, tau):
                    morphisms[(src, tau)] = (src, tgt)
    out = {}
    for lab, (s, _t) in morphisms.items():
        out.setdefault(s, []).append(lab)
    comp, inv = {}, {}
    for (s, tau), (_s, t) in morphisms.items():
        inv[(s, tau)] = (t, H0.inv[tau])
        for (t2, sigma) in out[t]:
            comp[((t2, sigma), (s, tau))] = (s, H0.comp[(sigma, tau)])
    ids = {o: (o, H0.ids[o[0]]) for o in objs}
    return FinGroupoid(objs, morphisms, ids, comp, inv=inv)


def h_delta_report(H, cap=10**6):
    """Counts at N and N-1 and whether they agree.

    Only the given levels are known, so the comparison is between the two
    top truncations available.
    """
    D = h_delta(H, cap)
    row = {"trunc": H.trunc, "objects": len(D.objects), "morphisms": len(D.morphisms),
           "components": len(components(D)),
           "vertex_group_orders": sorted(len(D.hom(c[0], c[0])) for c in components(D))}
    if H.trunc >= 1:
        Dm = h_delta(H.truncate(H.trunc - 1), cap)
        row["previous"] = {"objects": len(Dm.objects), "morphisms": len(Dm.morphisms)}
        row["stabilized"] = (len(Dm.objects), len(Dm.morphisms)) == (len(D.objects), len(D.morphisms))
    else:
        row["previous"] = None
        row["stabilized"] = None
    return D, row


def induced_hdelta_functor(f, DG=None, DH=None):
    """h_delta(G) -> h_delta(H) for a map f of cosimplicial groupoids."""
    DG = DG or h_delta(f.source)
    DH = DH or h_delta(f.target)
    f0 = f.components[0]
    f1 = f.components[1] if f.source.trunc >= 1 else None

    def on_obj(o):
        x, g = o
        return (f0.obj[x], None if g is None else f1.mor[g])

    obj = {o: on_obj(o) for o in DG.objects}
    mor = {m: (on_obj(m[0]), f0.mor[m[1]]) for m in DG.morphisms}
    return GpdFunctor(DG, DH, obj, mor)


def lemma11_check(U):
    """Verify h_delta(U) is isomorphic to U^0 for levelwise contractible U."""
    for n, G in enumerate(U.levels):
        if not is_contractible(G):
            raise HypothesisFailed(f"level {n} is not contractible")
    D = h_delta(U)
    U0 = U.levels[0]

    def extend(a):
        if U.trunc == 0:
            return (a, None)
        b, c = U.cofaces[(1, 1)].obj[a], U.cofaces[(1, 0)].obj[a]
        (g,) = U.levels[1].hom(b, c)
        return (a, g)

    try:
        phi = GpdFunctor(U0, D, {a: extend(a) for a in U0.objects},
                         {t: (extend(U0.src[t]), t) for t in U0.morphisms})
        psi = GpdFunctor(D, U0, {o: o[0] for o in D.objects}, {m: m[1] for m in D.morphisms})
    except (KeyError, ValidationError):
        return False
    return ((psi @ phi).equals(GpdFunctor.identity(U0))
            and (phi @ psi).equals(GpdFunctor.identity(D)))


# -- from torsors to H^Delta and back -----------------------------------------------

def _canonical_object(E):
    """Least object of E^0 and the unique morphism d^1 a -> d^0 a in E^1 (contractible E)."""
    a = E.levels[0].objects[0]
    if E.trunc == 0:
        return a, None
    b, c = E.cofaces[(1, 1)].obj[a], E.cofaces[(1, 0)].obj[a]
    (g,) = E.levels[1].hom(b, c)
    return a, g


def torsor_to_hdelta(X):
    """The object f(x_E) of h_delta(H) attached to a torsor X."""
    if not is_torsor(X):
        raise NotATorsor("diagram is not a torsor")
    E, _p = translation_cosimp(X)
    a, g = _canonical_object(E)
    return (a[0], None if g is None else g[0])


def torsor_map_to_hdelta(X, Y, phi):
    """g |-> g_*: the morphism torsor_to_hdelta(X) -> torsor_to_hdelta(Y) of h_delta(H)."""
    src, tgt = torsor_to_hdelta(X), torsor_to_hdelta(Y)
    E0 = translation_groupoid(X.functors[0])
    x, e = E0.objects[0]
    F0 = translation_groupoid(Y.functors[0])
    b0 = F0.objects[0]
    start = (x, phi[0][e])
    (m,) = F0.hom(start, b0)
    return (src, m[0]), tgt


def _cocycle_from_object(H, obj):
    """(U, f): U = C(Ob Delta) and f: U -> H determined by an object of h_delta(H)."""
    N = H.trunc
    U = ordinal_contractible(N)
    x, g = obj
    D = _HDeltaData(H, x, g)
    comps = []
    for n in range(N + 1):
        G = H.levels[n]
        mor = {}
        for j in range(n + 1):
            for k in range(n + 1):
                if j <= k:
                    mor[(j, k)] = D.edge[(n, j, k)] if N >= 1 else G.ids[D.vertex[(n, j)]]
                else:
                    mor[(j, k)] = G.inv[D.edge[(n, k, j)]]
        comps.append(GpdFunctor(U.levels[n], G, {j: D.vertex[(n, j)] for j in range(n + 1)}, mor))
    return U, CosimpGpdMap(U, H, comps)


def pb_cocycle(H, tau=None, cocycle=None):
    """Torsor with X(n, x) = pi_0 of pairs (u, alpha: f(u) -> x).

    Pass either an object ``tau`` of h_delta(H) or ``cocycle = (U, f)`` with
    U levelwise contractible and f: U -> H.
    """
    if cocycle is None:
        if tau is None:
            raise ValueError("need an object of h_delta(H) or a cocycle")
        cocycle = _cocycle_from_object(H, tau)
    U, f = cocycle
    for n, G in enumerate(U.levels):
        if not is_contractible(G):
            raise HypothesisFailed(f"cocycle level {n} is not contractible")
    functors, classes = [], []
    for n in range(H.trunc + 1):
        G, Un, fn = H.levels[n], U.levels[n], f.components[n]
        pairs = [(u, a) for u in Un.objects for a in G.out(fn.obj[u])]
        parent = {p: p for p in pairs}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for beta in Un.morphisms:
            u, v = Un.src[beta], Un.tgt[beta]
            fb_inv = G.inv[fn.mor[beta]]
            for a in G.out(fn.obj[u]):
                p, q = find((u, a)), find((v, G.comp[(a, fb_inv)]))
                if p != q:
                    if sort_key(q) < sort_key(p):
                        p, q = q, p
                    parent[q] = p
        cls = {p: find(p) for p in pairs}
        classes.append(cls)
        value = {x: sorted_labels({cls[p] for p in pairs if G.tgt[p[1]] == x}) for x in G.objects}
        act = {}
        for gam in G.morphisms:
            act[gam] = {r: cls[(r[0], G.comp[(gam, r[1])])] for r in value[G.src[gam]]}
        functors.append(SetFunctor(G, value, act))
    transitions = {}
    for op in _ops(H.trunc):
        a, b = _op_levels(op)
        FU, FH = _struct_table(U, op), _struct_table(H, op)
        transitions[op] = {r: classes[b][(FU.obj[r[0]], FH.mor[r[1]])]
                           for x in functors[a].value for r in functors[a].value[x]}
    X = HDiagram(H, functors, transitions)
    if not is_torsor(X):
        raise NotATorsor("pulled back diagram is not a torsor")
    return X


def pb_of_map(f, H):
    """pi_0 of the pullbacks of f: Y -> BH along B(H^n/x) -> BH^n, as an H-diagram.

    Only simplicial degrees 0 and 1 of Y are read, which is all pi_0 sees.
    """
    Y = f.source
    functors, classes = [], []
    for n in range(H.trunc + 1):
        G = H.levels[n]
        Yn, fn = Y.levels[n], f.components[n]
        pairs = [(y, a) for y in Yn.levels[0] for a in G.out(fn.levels[0][y])]
        parent = {p: p for p in pairs}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        if Yn.trunc >= 1:
            d0, d1 = Yn.faces[(1, 0)], Yn.faces[(1, 1)]
            for y1 in Yn.levels[1]:
                (beta,) = fn.levels[1][y1]
                for a in G.out(G.tgt[beta]):
                    p, q = find((d1[y1], G.comp[(a, beta)])), find((d0[y1], a))
                    if p != q:
                        if sort_key(q) < sort_key(p):
                            p, q = q, p
                        parent[q] = p
        cls = {p: find(p) for p in pairs}
        classes.append(cls)
        value = {x: sorted_labels({cls[p] for p in pairs if G.tgt[p[1]] == x}) for x in G.objects}
        act = {gam: {r: cls[(r[0], G.comp[(gam, r[1])])] for r in value[G.src[gam]]}
               for gam in G.morphisms}
        functors.append(SetFunctor(G, value, act))
    transitions = {}
    for op in _ops(H.trunc):
        a, b = _op_levels(op)
        FY, FH = _struct_table(Y, op), _struct_table(H, op)
        transitions[op] = {r: classes[b][(FY.levels[0][r[0]], FH.mor[r[1]])]
                           for x in functors[a].value for r in functors[a].value[x]}
    return HDiagram(H, functors, transitions)


def theorem12_check(H, cap=10**6):
    """Compare torsors with h_delta(H) through X |-> torsor_to_hdelta(X).

    Returns a report dict; ``report["pass"]`` is the verdict.
    """
    reps, count = enumerate_torsors(H, cap)
    D = h_delta(H, cap)
    images = [torsor_to_hdelta(X) for X in reps]
    objs = set(D.objects)
    faithful = all(a in objs for a in images)
    full = faithful
    for i, X in enumerate(reps):
        for j, Y in enumerate(reps):
            if not full:
                break
            maps = torsor_morphisms(X, Y)
            imgs = [torsor_map_to_hdelta(X, Y, phi)[0] for phi in maps]
            if len(set(imgs)) != len(imgs):
                faithful = False
            if set(imgs) != set(D.hom(images[i], images[j])):
                full = False
    comps = components(D)
    hit = set(images)
    ess = all(hit.intersection(c) for c in comps)
    round_trip = all(isomorphic(pb_cocycle(H, tau=images[i]), X) for i, X in enumerate(reps))
    report = {"torsors": count, "hdelta_objects": len(D.objects),
              "hdelta_morphisms": len(D.morphisms), "pi0_hdelta": len(comps),
              "vertex_group_orders": sorted(len(D.hom(c[0], c[0])) for c in comps),
              "faithful": faithful, "full": full, "essentially_surjective": ess,
              "pb_round_trip": round_trip}
    report["pass"] = bool(faithful and full and ess and round_trip and count == len(comps))
    return report
