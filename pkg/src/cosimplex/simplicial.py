"""Truncated simplicial sets and simplicial abelian groups.

Face maps are stored under keys ``(m, i)`` for d_i: X_m -> X_{m-1} and
degeneracies under ``(m, i)`` for s_i: X_m -> X_{m+1}; in both cases ``m``
is the source level.  Construction checks every simplicial identity that
fits inside the truncation.

>>> X = standard_simplex(2, 2)
>>> [len(level) for level in X.levels]
[3, 6, 10]
>>> str(homology(boundary_simplex(2, 2), 1))
'ℤ'
"""

from __future__ import annotations

from collections import deque

from .abelian import AbHom, FGAbGroup, NNChainComplex, hom_equal
from .errors import CapExceeded, DegreeError, ValidationError
from .labels import sort_key, sorted_labels
from .ordinals import monotone_maps, simplicial_identities, simplicial_word
from .structure import compose_dicts, first_violation, word_map


class TruncSimpSet:
    """Simplicial set known up to level ``trunc``."""

    def __init__(self, trunc, levels, faces, degeneracies, check=True):
        self.trunc = trunc
        if len(levels) != trunc + 1:
            raise ValidationError(f"expected {trunc + 1} levels, got {len(levels)}", law="levels")
        self.levels = [tuple(sorted_labels(set(lv))) for lv in levels]
        self.faces = {k: dict(v) for k, v in faces.items()}
        self.degeneracies = {k: dict(v) for k, v in degeneracies.items()}
        self._index = [{x: k for k, x in enumerate(lv)} for lv in self.levels]
        self._cache = {}
        if check:
            self._validate()

    def _get(self, op):
        kind, m, i = op
        return self.faces[(m, i)] if kind == "d" else self.degeneracies[(m, i)]

    def _validate(self):
        M = self.trunc
        for m in range(1, M + 1):
            for i in range(m + 1):
                t = self.faces.get((m, i))
                if t is None or set(t) != set(self.levels[m]) or not set(t.values()) <= set(self.levels[m - 1]):
                    raise ValidationError(f"face d_{i} on level {m} is not a total map",
                                          law=f"d_{i} on level {m}")
        for m in range(0, M):
            for i in range(m + 1):
                t = self.degeneracies.get((m, i))
                if t is None or set(t) != set(self.levels[m]) or not set(t.values()) <= set(self.levels[m + 1]):
                    raise ValidationError(f"degeneracy s_{i} on level {m} is not a total map",
                                          law=f"s_{i} on level {m}")
        bad = first_violation(simplicial_identities(M), self._get, compose_dicts,
                              lambda m: {x: x for x in self.levels[m]},
                              lambda a, b, m: a == b)
        if bad:
            raise ValidationError(f"simplicial identity fails: {bad}", law=bad)

    def apply(self, theta):
        """X(theta): X_n -> X_m for theta: [m] -> [n], as a dict."""
        if theta not in self._cache:
            if theta.source > self.trunc or theta.target > self.trunc:
                raise DegreeError("ordinal map outside the truncation")
            self._cache[theta] = word_map(simplicial_word(theta), theta.target, self._get,
                                          compose_dicts, lambda m: {x: x for x in self.levels[m]})
        return self._cache[theta]

    def index(self, m, x):
        return self._index[m][x]

    def degenerate(self, m):
        if m == 0:
            return set()
        return {self.degeneracies[(m - 1, i)][y] for i in range(m) for y in self.levels[m - 1]}

    def nondegenerate(self, m):
        deg = self.degenerate(m)
        return [x for x in self.levels[m] if x not in deg]

    def to_json(self):
        from .labels import label_str
        return {
            "trunc": self.trunc,
            "levels": [[label_str(x) for x in lv] for lv in self.levels],
            "d": {f"({m},{i})": {label_str(a): label_str(b) for a, b in sorted(t.items(), key=lambda kv: sort_key(kv[0]))}
                  for (m, i), t in sorted(self.faces.items())},
            "s": {f"({m},{i})": {label_str(a): label_str(b) for a, b in sorted(t.items(), key=lambda kv: sort_key(kv[0]))}
                  for (m, i), t in sorted(self.degeneracies.items())},
        }

    def __repr__(self):
        return f"TruncSimpSet(trunc={self.trunc}, sizes={[len(lv) for lv in self.levels]})"


class SimplicialMap:
    """Levelwise functions commuting with faces and degeneracies."""

    def __init__(self, source, target, levels, check=True):
        if source.trunc != target.trunc:
            raise ValidationError("truncations differ", law="truncation")
        self.source = source
        self.target = target
        self.levels = [dict(t) for t in levels]
        if check:
            self._validate()

    def _validate(self):
        S, T = self.source, self.target
        for m in range(S.trunc + 1):
            if set(self.levels[m]) != set(S.levels[m]) or not set(self.levels[m].values()) <= set(T.levels[m]):
                raise ValidationError(f"level {m} map is not total", law=f"level {m}")
        for (m, i), d in S.faces.items():
            for x, y in d.items():
                if self.levels[m - 1][y] != T.faces[(m, i)][self.levels[m][x]]:
                    raise ValidationError(f"map does not commute with d_{i} on level {m}",
                                          law=f"d_{i} on level {m}")
        for (m, i), s in S.degeneracies.items():
            for x, y in s.items():
                if self.levels[m + 1][y] != T.degeneracies[(m, i)][self.levels[m][x]]:
                    raise ValidationError(f"map does not commute with s_{i} on level {m}",
                                          law=f"s_{i} on level {m}")

    def __matmul__(self, other):
        return SimplicialMap(other.source, self.target,
                             [compose_dicts(a, b) for a, b in zip(self.levels, other.levels)],
                             check=False)

    def equals(self, other):
        return self.levels == other.levels

    @classmethod
    def identity(cls, X):
        return cls(X, X, [{x: x for x in lv} for lv in X.levels], check=False)

    def is_injective(self):
        return all(len(set(t.values())) == len(t) for t in self.levels)


# -- constructions ---------------------------------------------------------------

def from_ordinal_maps(level_sets, M):
    """Simplicial set whose m-simplices are the given sets of ordinal maps into [k]."""
    faces, degens = {}, {}
    from .ordinals import coface, codegeneracy, compose
    for m in range(1, M + 1):
        for i in range(m + 1):
            d = coface(m, i)
            faces[(m, i)] = {x: compose(x, d) for x in level_sets[m]}
    for m in range(M):
        for i in range(m + 1):
            s = codegeneracy(m, i)
            degens[(m, i)] = {x: compose(x, s) for x in level_sets[m]}
    return faces, degens


def standard_simplex(k, M):
    """Delta^k truncated at M; m-simplices are monotone maps [m] -> [k], labelled by image tuples."""
    levels = [[t.images for t in monotone_maps(m, k)] for m in range(M + 1)]
    return _simplex_like(levels, k, M)


def _simplex_like(levels, k, M):
    faces, degens = {}, {}
    for m in range(1, M + 1):
        for i in range(m + 1):
            faces[(m, i)] = {x: x[:i] + x[i + 1:] for x in levels[m]}
    for m in range(M):
        for i in range(m + 1):
            degens[(m, i)] = {x: x[:i + 1] + x[i:] for x in levels[m]}
    return TruncSimpSet(M, levels, faces, degens)


def boundary_simplex(k, M):
    """The boundary of Delta^k: simplices missing at least one vertex."""
    levels = [[t.images for t in monotone_maps(m, k) if len(set(t.images)) < k + 1]
              for m in range(M + 1)]
    return _simplex_like(levels, k, M)


def sub_simplicial_set(X, levels):
    """Restrict X to a family of subsets closed under all structure maps."""
    keep = [set(lv) for lv in levels]
    faces = {(m, i): {x: t[x] for x in keep[m]} for (m, i), t in X.faces.items()}
    degens = {(m, i): {x: t[x] for x in keep[m]} for (m, i), t in X.degeneracies.items()}
    return TruncSimpSet(X.trunc, levels, faces, degens)


def skeleton(X, n):
    """Sub-simplicial set generated by the simplices of dimension at most n."""
    if n > X.trunc:
        raise DegreeError(f"skeleton degree {n} above truncation {X.trunc}")
    M = X.trunc
    levels = []
    for m in range(M + 1):
        if m <= n:
            levels.append(list(X.levels[m]))
            continue
        found = set()
        for k in range(n + 1):
            for theta in monotone_maps(m, k):
                found.update(X.apply(theta).values())
        levels.append(sorted_labels(found))
    return sub_simplicial_set(X, levels)


def disjoint_union(Xs):
    """Disjoint union; simplices are tagged (index, simplex)."""
    M = Xs[0].trunc
    levels = [[(k, x) for k, X in enumerate(Xs) for x in X.levels[m]] for m in range(M + 1)]
    faces = {key: {(k, x): (k, X.faces[key][x]) for k, X in enumerate(Xs) for x in X.levels[key[0]]}
             for key in Xs[0].faces}
    degens = {key: {(k, x): (k, X.degeneracies[key][x]) for k, X in enumerate(Xs) for x in X.levels[key[0]]}
              for key in Xs[0].degeneracies}
    return TruncSimpSet(M, levels, faces, degens)


def product(X, Y):
    M = X.trunc
    levels = [[(a, b) for a in X.levels[m] for b in Y.levels[m]] for m in range(M + 1)]
    faces = {key: {(a, b): (X.faces[key][a], Y.faces[key][b]) for a, b in levels[key[0]]}
             for key in X.faces}
    degens = {key: {(a, b): (X.degeneracies[key][a], Y.degeneracies[key][b]) for a, b in levels[key[0]]}
              for key in X.degeneracies}
    return TruncSimpSet(M, levels, faces, degens)


def point(M):
    return standard_simplex(0, M)


def collapse(X, A_levels, base="*"):
    """Quotient X/A collapsing the subcomplex with the given levels to a point."""
    A = [set(lv) for lv in A_levels]

    def q(m, x):
        return base if x in A[m] else x

    levels = [sorted_labels({q(m, x) for x in X.levels[m]}) for m in range(X.trunc + 1)]
    faces = {(m, i): {q(m, x): q(m - 1, t[x]) for x in X.levels[m]} for (m, i), t in X.faces.items()}
    degens = {(m, i): {q(m, x): q(m + 1, t[x]) for x in X.levels[m]} for (m, i), t in X.degeneracies.items()}
    return TruncSimpSet(X.trunc, levels, faces, degens)


def circle(M):
    """Delta^1 with its two vertices identified: one nondegenerate 1-simplex."""
    D = standard_simplex(1, M)
    A = [[x for x in lv if len(set(x)) == 1] for lv in D.levels]
    return collapse(D, A)


# -- simplicial abelian groups ---------------------------------------------------------

class TruncSimpAb:
    """Simplicial abelian group known up to level ``trunc``."""

    def __init__(self, trunc, levels, faces, degeneracies, check=True):
        self.trunc = trunc
        if len(levels) != trunc + 1:
            raise ValidationError(f"expected {trunc + 1} levels", law="levels")
        self.levels = list(levels)
        self.faces = dict(faces)
        self.degeneracies = dict(degeneracies)
        self._cache = {}
        if check:
            self._validate()

    def _get(self, op):
        kind, m, i = op
        return self.faces[(m, i)] if kind == "d" else self.degeneracies[(m, i)]

    def _validate(self):
        M = self.trunc
        for m in range(1, M + 1):
            for i in range(m + 1):
                f = self.faces.get((m, i))
                if f is None or f.source.ngens != self.levels[m].ngens or f.target.ngens != self.levels[m - 1].ngens:
                    raise ValidationError(f"face d_{i} on level {m} missing or misshapen",
                                          law=f"d_{i} on level {m}")
        for m in range(M):
            for i in range(m + 1):
                s = self.degeneracies.get((m, i))
                if s is None or s.source.ngens != self.levels[m].ngens or s.target.ngens != self.levels[m + 1].ngens:
                    raise ValidationError(f"degeneracy s_{i} on level {m} missing or misshapen",
                                          law=f"s_{i} on level {m}")
        bad = first_violation(simplicial_identities(M), self._get, lambda g, f: g @ f,
                              lambda m: AbHom.identity(self.levels[m]),
                              lambda a, b, m: hom_equal(a, b))
        if bad:
            raise ValidationError(f"simplicial identity fails: {bad}", law=bad)

    def apply(self, theta):
        if theta not in self._cache:
            self._cache[theta] = word_map(simplicial_word(theta), theta.target, self._get,
                                          lambda g, f: g @ f,
                                          lambda m: AbHom.identity(self.levels[m]))
        return self._cache[theta]

    def __repr__(self):
        return f"TruncSimpAb(trunc={self.trunc}, gens={[G.ngens for G in self.levels]})"


class SimpAbHom:
    """Levelwise homomorphisms commuting with faces and degeneracies."""

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = list(components)
        if check:
            for (m, i), d in source.faces.items():
                if not hom_equal(self.components[m - 1] @ d, target.faces[(m, i)] @ self.components[m]):
                    raise ValidationError(f"map does not commute with d_{i} on level {m}",
                                          law=f"d_{i} on level {m}")
            for (m, i), s in source.degeneracies.items():
                if not hom_equal(self.components[m + 1] @ s, target.degeneracies[(m, i)] @ self.components[m]):
                    raise ValidationError(f"map does not commute with s_{i} on level {m}",
                                          law=f"s_{i} on level {m}")

    def __matmul__(self, other):
        return SimpAbHom(other.source, self.target,
                         [a @ b for a, b in zip(self.components, other.components)], check=False)


def free_abelian(X):
    """The simplicial abelian group ZX; generator order follows ``X.levels``."""
    levels = [FGAbGroup.free(len(lv)) for lv in X.levels]

    def mat(table, m_src, m_tgt):
        cols = []
        for x in X.levels[m_src]:
            col = [0] * len(X.levels[m_tgt])
            col[X.index(m_tgt, table[x])] = 1
            cols.append(col)
        return AbHom(levels[m_src], levels[m_tgt], cols, check=False)

    faces = {(m, i): mat(t, m, m - 1) for (m, i), t in X.faces.items()}
    degens = {(m, i): mat(t, m, m + 1) for (m, i), t in X.degeneracies.items()}
    return TruncSimpAb(X.trunc, levels, faces, degens)


def hurewicz(X):
    """ZX together with the levelwise map sending a simplex to its generator.

    The map is returned as a list of dicts ``simplex -> generator vector``.
    """
    A = free_abelian(X)
    h = []
    for m, lv in enumerate(X.levels):
        h.append({x: A.levels[m].basis_vector(k) for k, x in enumerate(lv)})
    return A, h


def free_abelian_map(f, A=None, B=None):
    """Z f: ZX -> ZY for a simplicial map f."""
    A = A or free_abelian(f.source)
    B = B or free_abelian(f.target)
    comps = []
    for m in range(f.source.trunc + 1):
        cols = []
        for x in f.source.levels[m]:
            col = [0] * B.levels[m].ngens
            col[f.target.index(m, f.levels[m][x])] = 1
            cols.append(col)
        comps.append(AbHom(A.levels[m], B.levels[m], cols, check=False))
    return SimpAbHom(A, B, comps, check=False)


# -- chains and homology -------------------------------------------------------------

def normalized_chains(X, top=None):
    """Normalized integral chains: free on nondegenerate simplices, d = sum (-1)^i d_i."""
    top = X.trunc if top is None else top
    nd = [X.nondegenerate(m) for m in range(top + 1)]
    idx = [{x: k for k, x in enumerate(lv)} for lv in nd]
    groups = [FGAbGroup.free(len(lv)) for lv in nd]
    bds = []
    for m in range(1, top + 1):
        cols = []
        for x in nd[m]:
            col = [0] * len(nd[m - 1])
            for i in range(m + 1):
                y = X.faces[(m, i)][x]
                if y in idx[m - 1]:
                    col[idx[m - 1][y]] += (-1) ** i
            cols.append(col)
        bds.append(AbHom(groups[m], groups[m - 1], cols, check=False))
    return NNChainComplex(groups, bds, bounded=False), nd


def homology(X, n):
    """H_n of the normalized chains of X; needs level n + 1."""
    if n > X.trunc - 1 or n < 0:
        raise DegreeError(f"H_{n} needs level {n + 1}, truncation is {X.trunc}")
    C, _ = normalized_chains(X)
    return C.homology(n)


def reduced_homology(X, n):
    if n > 0:
        return homology(X, n)
    H = homology(X, 0)
    t, f = H.invariants()
    return FGAbGroup.from_invariants(t, max(f - 1, 0)) if X.levels[0] else H


def pi0(X):
    """Path components of the vertices, as sorted tuples."""
    parent = {x: x for x in X.levels[0]}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if X.trunc >= 1:
        for e in X.levels[1]:
            a, b = find(X.faces[(1, 1)][e]), find(X.faces[(1, 0)][e])
            if a != b:
                parent[max(a, b, key=sort_key)] = min(a, b, key=sort_key)
    comps = {}
    for x in X.levels[0]:
        comps.setdefault(find(x), []).append(x)
    return sorted((tuple(sorted_labels(v)) for v in comps.values()), key=sort_key)


# -- fundamental groupoid ----------------------------------------------------------

class PresentedGroupoid:
    """Groupoid given by generating arrows and relations.

    ``generators`` maps an arrow label to ``(src, tgt)``; each relation is a
    word ``((arrow, +1 or -1), ...)`` read left to right that must form a
    closed path.
    """

    def __init__(self, objects, generators, relations):
        self.objects = tuple(sorted_labels(set(objects)))
        self.generators = dict(generators)
        self.relations = [tuple(w) for w in relations]
        for w in self.relations:
            self._path_ends(w)

    def _path_ends(self, w):
        cur = None
        start = None
        for e, s in w:
            a, b = self.generators[e]
            if s == -1:
                a, b = b, a
            elif s != 1:
                raise ValidationError("word exponents must be +1 or -1", law="word")
            if cur is None:
                start = a
            elif cur != a:
                raise ValidationError(f"relation word {w} is not a path", law="composable")
            cur = b
        if w and cur != start:
            raise ValidationError(f"relation word {w} is not closed", law="closed")
        return start, cur


def fundamental_groupoid(X):
    """Edge-path presentation read off from levels 0, 1 and 2."""
    if X.trunc < 2:
        raise DegreeError("the fundamental groupoid needs the 2-truncation")
    deg1 = X.degenerate(1)
    gens = {e: (X.faces[(1, 1)][e], X.faces[(1, 0)][e]) for e in X.levels[1] if e not in deg1}
    rels = []
    for sigma in X.nondegenerate(2):
        word = []
        for face, sign in ((2, 1), (0, 1), (1, -1)):
            e = X.faces[(2, face)][sigma]
            if e in gens:
                word.append((e, sign))
        if word:
            rels.append(tuple(word))
    return PresentedGroupoid(X.levels[0], gens, rels)


def _coset_enumerate(ngens, relators, cap):
    """HLT coset enumeration over the trivial subgroup.

    Columns 2g and 2g+1 hold generator g and its inverse.  ``cap`` bounds
    the number of cosets ever defined.  Returns the standardized table of
    the live cosets.
    """
    ncols = 2 * ngens
    table = [[None] * ncols]
    parent = [0]
    inv = lambda x: x ^ 1  # noqa: E731

    def define(c, x):
        if len(table) >= cap:
            raise CapExceeded(f"coset enumeration exceeded {cap} cosets")
        n = len(table)
        table.append([None] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][inv(x)] = c

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a, b, queue):
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        queue.append(b)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        k = 0
        while k < len(queue):
            e = queue[k]
            k += 1
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][inv(x)] == e:
                    table[f][inv(x)] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][inv(x)] is not None:
                    merge(e1, table[f1][inv(x)], queue)
                else:
                    table[e1][x] = f1
                    table[f1][inv(x)] = e1

    def scan_and_fill(c, w):
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv(w[j])] is not None:
                b = table[b][inv(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv(w[i])] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        if parent[c] == c:
            for w in relators:
                if parent[c] != c:
                    break
                scan_and_fill(c, w)
            if parent[c] == c:
                for x in range(ncols):
                    if parent[c] != c:
                        break
                    if table[c][x] is None:
                        define(c, x)
        c += 1

    live = [c for c in range(len(table)) if parent[c] == c]
    # standardize by breadth-first order from coset 0
    order = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(ncols):
            d = rep(table[c][x])
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    assert len(order) == len(live)
    std = [None] * len(order)
    for c, k in order.items():
        std[k] = [order[rep(table[c][x])] for x in range(ncols)]
    return std


def _free_reduce(word):
    out = []
    for e, s in word:
        if out and out[-1] == (e, -s):
            out.pop()
        else:
            out.append((e, s))
    return tuple(out)


def _invert_word(word):
    return tuple((e, -s) for e, s in reversed(word))


def complete_groupoid(P, cap=10000):
    """Finite groupoid presented by P, or CapExceeded.

    Each component gets a spanning tree rooted at its least object; the
    vertex group is enumerated with Todd-Coxeter coset enumeration, where
    ``cap`` bounds the number of cosets defined.  Morphisms are labelled
    ``(v, w, path)`` with ``path`` a freely reduced canonical edge word
    from v to w, so any functor out of the result can be evaluated on
    generators.
    """
    from .groupoid import FinGroupoid

    adj = {x: [] for x in P.objects}
    for e in sorted_labels(P.generators):
        a, b = P.generators[e]
        adj[a].append((e, 1, b))
        adj[b].append((e, -1, a))
    seen = {}
    comps = []
    for x in P.objects:
        if x in seen:
            continue
        seen[x] = ()
        comp = [x]
        tree = set()
        queue = deque([x])
        while queue:
            v = queue.popleft()
            for e, s, w in adj[v]:
                if w not in seen:
                    seen[w] = seen[v] + ((e, s),)
                    tree.add(e)
                    comp.append(w)
                    queue.append(w)
        comps.append((comp, tree))

    objects, morphisms, ids, comp_table, inverse = [], {}, {}, {}, {}
    for comp, tree in comps:
        cset = set(comp)
        path = {v: seen[v] for v in comp}
        loose = sorted_labels(e for e, (a, _b) in P.generators.items() if a in cset and e not in tree)
        gindex = {e: k for k, e in enumerate(loose)}

        def to_group(word):
            return [2 * gindex[e] + (0 if s == 1 else 1) for e, s in word if e in gindex]

        relators = []
        for w in P.relations:
            if w and P.generators[w[0][0]][0 if w[0][1] == 1 else 1] in cset:
                g = to_group(w)
                if g:
                    relators.append(g)
        try:
            table = _coset_enumerate(len(loose), relators, cap)
        except CapExceeded as exc:
            raise CapExceeded(str(exc), partial=P) from None
        order = len(table)
        # canonical representative words by BFS over the standardized table
        rep_word = {0: ()}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(2 * len(loose)):
                d = table[c][x]
                if d not in rep_word:
                    rep_word[d] = rep_word[c] + (x,)
                    queue.append(d)

        def expand(gw):
            out = []
            for x in gw:
                e = loose[x // 2]
                a, b = P.generators[e]
                loop = path[a] + ((e, 1),) + _invert_word(path[b])
                out.extend(loop if x % 2 == 0 else _invert_word(loop))
            return out

        def mult(k, l):
            c = k
            for x in rep_word[l]:
                c = table[c][x]
            return c

        inv_elt = {k: next(l for l in range(order) if mult(k, l) == 0) for k in range(order)}

        def label(v, w, k):
            return (v, w, _free_reduce(_invert_word(path[v]) + tuple(expand(rep_word[k])) + path[w]))

        labels = {(v, w, k): label(v, w, k) for v in comp for w in comp for k in range(order)}
        for (v, w, k), lab in labels.items():
            morphisms[lab] = (v, w)
            inverse[lab] = labels[(w, v, inv_elt[k])]
        for v in comp:
            objects.append(v)
            ids[v] = labels[(v, v, 0)]
        for (v, w, k), lab in labels.items():
            for u in comp:
                for l in range(order):
                    comp_table[(labels[(w, u, l)], lab)] = labels[(v, u, mult(k, l))]
    return FinGroupoid(objects, morphisms, ids, comp_table, inv=inverse)


def evaluate_path(word, start, edge_image, G):
    """Compose the images of an edge word in the groupoid G, starting at ``start``."""
    cur = G.ids[start]
    for e, s in word:
        f = edge_image(e)
        if s == -1:
            f = G.inv[f]
        cur = G.comp[(f, cur)]
    return cur
