"""Truncated cosimplicial sets and cosimplicial spaces.

Structure maps are stored under keys ``(n, i)`` naming the *target* level:
``cofaces[(n, i)]`` is d^i: X^{n-1} -> X^n and ``codegeneracies[(n, i)]``
is s^i: X^{n+1} -> X^n.

The vertex object of the cosimplicial space of simplices has level n equal
to {0, ..., n}; its two cofaces out of level 0 differ, so its limit is empty:

>>> X = ordinal_vertices(2)
>>> maximal_augmentation(X), inverse_limit_trunc(X)
([], [])
>>> M, s = matching_set(X, 2)
>>> len(M), len(X.levels[2]), matching_surjective(X, 2)
(4, 3, False)
"""

from __future__ import annotations

from .errors import DegreeError, ValidationError
from .labels import sort_key, sorted_labels
from .ordinals import OrdMap, all_maps, epi_mono, monotone_maps
from .simplicial import SimplicialMap, skeleton, standard_simplex
from .structure import Cosimplicial, compose_dicts


class TruncCosimpSet(Cosimplicial):
    """Cosimplicial set known on levels 0..trunc."""

    def __init__(self, trunc, levels, cofaces, codegeneracies, check=True):
        self.trunc = trunc
        if len(levels) != trunc + 1:
            raise ValidationError(f"expected {trunc + 1} levels", law="levels")
        self.levels = [tuple(sorted_labels(set(lv))) for lv in levels]
        self.cofaces = {k: dict(v) for k, v in cofaces.items()}
        self.codegeneracies = {k: dict(v) for k, v in codegeneracies.items()}
        if check:
            self._validate()

    def _compose(self, g, f):
        return compose_dicts(g, f)

    def _identity(self, n):
        return {x: x for x in self.levels[n]}

    def _equal(self, a, b, n):
        return a == b

    def _validate(self):
        N = self.trunc
        for n in range(1, N + 1):
            for i in range(n + 1):
                t = self.cofaces.get((n, i))
                if t is None or set(t) != set(self.levels[n - 1]) or not set(t.values()) <= set(self.levels[n]):
                    raise ValidationError(f"coface d^{i} into level {n} is not a total map",
                                          law=f"d^{i} into level {n}")
        for n in range(N):
            for i in range(n + 1):
                t = self.codegeneracies.get((n, i))
                if t is None or set(t) != set(self.levels[n + 1]) or not set(t.values()) <= set(self.levels[n]):
                    raise ValidationError(f"codegeneracy s^{i} into level {n} is not a total map",
                                          law=f"s^{i} into level {n}")
        self._check_identities()

    def truncate(self, N):
        return TruncCosimpSet(N, self.levels[:N + 1],
                              {k: v for k, v in self.cofaces.items() if k[0] <= N},
                              {k: v for k, v in self.codegeneracies.items() if k[0] < N})

    def to_json(self):
        from .labels import label_str

        def table(t):
            return {label_str(a): label_str(b) for a, b in sorted(t.items(), key=lambda kv: sort_key(kv[0]))}

        return {"trunc": self.trunc,
                "levels": [[label_str(x) for x in lv] for lv in self.levels],
                "d": {f"({n},{i})": table(t) for (n, i), t in sorted(self.cofaces.items())},
                "s": {f"({n},{i})": table(t) for (n, i), t in sorted(self.codegeneracies.items())}}

    def __repr__(self):
        return f"TruncCosimpSet(trunc={self.trunc}, sizes={[len(lv) for lv in self.levels]})"


class CosimpSetMap:
    """Levelwise functions commuting with all cofaces and codegeneracies."""

    def __init__(self, source, target, levels, check=True):
        self.source = source
        self.target = target
        self.levels = [dict(t) for t in levels]
        if check:
            for n in range(source.trunc + 1):
                if set(self.levels[n]) != set(source.levels[n]):
                    raise ValidationError(f"level {n} map is not total", law=f"level {n}")
            for (n, i), t in source.cofaces.items():
                tt = target.cofaces[(n, i)]
                if any(self.levels[n][y] != tt[self.levels[n - 1][x]] for x, y in t.items()):
                    raise ValidationError(f"map does not commute with d^{i} into level {n}",
                                          law=f"d^{i} into level {n}")
            for (n, i), t in source.codegeneracies.items():
                tt = target.codegeneracies[(n, i)]
                if any(self.levels[n][y] != tt[self.levels[n + 1][x]] for x, y in t.items()):
                    raise ValidationError(f"map does not commute with s^{i} into level {n}",
                                          law=f"s^{i} into level {n}")


def constant(S, N):
    S = list(S)
    ident = {x: x for x in S}
    return TruncCosimpSet(N, [S] * (N + 1),
                          {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)},
                          {(n, i): ident for n in range(N) for i in range(n + 1)})


def ordinal_vertices(N):
    """Level n is {0, ..., n}; cofaces and codegeneracies act as ordinal maps."""
    from .ordinals import codegeneracy, coface
    levels = [list(range(n + 1)) for n in range(N + 1)]
    cof = {(n, i): {j: coface(n, i)(j) for j in range(n)} for n in range(1, N + 1) for i in range(n + 1)}
    cod = {(n, i): {j: codegeneracy(n, i)(j) for j in range(n + 2)} for n in range(N) for i in range(n + 1)}
    return TruncCosimpSet(N, levels, cof, cod)


def product_cosimp(X, Y):
    N = X.trunc
    levels = [[(a, b) for a in X.levels[n] for b in Y.levels[n]] for n in range(N + 1)]
    cof = {k: {(a, b): (t[a], Y.cofaces[k][b]) for a in X.levels[k[0] - 1] for b in Y.levels[k[0] - 1]}
           for k, t in X.cofaces.items()}
    cod = {k: {(a, b): (t[a], Y.codegeneracies[k][b]) for a in X.levels[k[0] + 1] for b in Y.levels[k[0] + 1]}
           for k, t in X.codegeneracies.items()}
    return TruncCosimpSet(N, levels, cof, cod)


def projection_first(X, Y, P=None):
    P = P or product_cosimp(X, Y)
    return CosimpSetMap(P, X, [{(a, b): a for a, b in P.levels[n]} for n in range(P.trunc + 1)])


def maximal_augmentation(X):
    """Elements of X^0 equalized by the two cofaces into X^1."""
    if X.trunc < 1:
        raise DegreeError("the augmentation needs level 1")
    d0, d1 = X.cofaces[(1, 0)], X.cofaces[(1, 1)]
    return [x for x in X.levels[0] if d0[x] == d1[x]]


def inverse_limit_trunc(X):
    """Limit over the truncated ordinal category by brute-force cone search.

    Returns the x^0 components of all cones (x^0, ..., x^N) in sorted order.
    """
    return [c[0] for c in limit_cones(X)]


def limit_cones(X):
    """All cones (x^0, ..., x^N) over the truncated ordinal category."""
    if X.trunc < 1:
        raise DegreeError("the limit needs level 1")
    maps = all_maps(X.trunc)
    cones = []

    def ok(assign):
        k = len(assign) - 1
        for theta in maps:
            if theta.source <= k and theta.target <= k and (theta.source == k or theta.target == k):
                if X.apply(theta)[assign[theta.source]] != assign[theta.target]:
                    return False
        return True

    def extend(assign):
        if len(assign) == X.trunc + 1:
            cones.append(tuple(assign))
            return
        for x in X.levels[len(assign)]:
            assign.append(x)
            if ok(assign):
                extend(assign)
            assign.pop()

    extend([])
    return cones


def tot_discrete(X):
    """Tot of a discrete cosimplicial space, which is its limit."""
    return inverse_limit_trunc(X)


def matching_set(X, n):
    """Matching set below level n and the map s = (s^0, ..., s^{n-1}).

    Tuples (x_0, ..., x_{n-1}) of X^{n-1} with s^i x_j = s^{j-1} x_i for i < j.
    """
    if not 1 <= n <= X.trunc:
        raise DegreeError(f"matching set needs 1 <= n <= {X.trunc}")
    prev = X.levels[n - 1]
    out = []

    def extend(t):
        j = len(t)
        if j == n:
            out.append(tuple(t))
            return
        for x in prev:
            good = True
            for i in range(j):
                if X.codegeneracies[(n - 2, i)][x] != X.codegeneracies[(n - 2, j - 1)][t[i]]:
                    good = False
                    break
            if good:
                t.append(x)
                extend(t)
                t.pop()

    extend([])
    s = {x: tuple(X.codegeneracies[(n - 1, i)][x] for i in range(n)) for x in X.levels[n]}
    return out, s


def matching_surjective(X, n):
    M, s = matching_set(X, n)
    return set(s.values()) == set(M)


def induced_matching_map(f, n):
    """M^{n-1}f applied componentwise to matching tuples."""
    M, _ = matching_set(f.source, n)
    return {t: tuple(f.levels[n - 1][x] for x in t) for t in M}


# -- cosimplicial spaces ---------------------------------------------------------------

class TruncCosimpSpace(Cosimplicial):
    """Cosimplicial simplicial set; every level shares the simplicial truncation."""

    def __init__(self, trunc, levels, cofaces, codegeneracies, check=True):
        self.trunc = trunc
        self.levels = list(levels)
        self.cofaces = dict(cofaces)
        self.codegeneracies = dict(codegeneracies)
        self.simp_trunc = levels[0].trunc if levels else 0
        if check:
            if any(L.trunc != self.simp_trunc for L in self.levels):
                raise ValidationError("levels have different simplicial truncations", law="truncation")
            for n in range(1, trunc + 1):
                for i in range(n + 1):
                    if (n, i) not in self.cofaces:
                        raise ValidationError(f"coface d^{i} into level {n} missing",
                                              law=f"d^{i} into level {n}")
            for n in range(trunc):
                for i in range(n + 1):
                    if (n, i) not in self.codegeneracies:
                        raise ValidationError(f"codegeneracy s^{i} into level {n} missing",
                                              law=f"s^{i} into level {n}")
            self._check_identities()

    def _compose(self, g, f):
        return g @ f

    def _identity(self, n):
        return SimplicialMap.identity(self.levels[n])

    def _equal(self, a, b, n):
        return a.equals(b)

    def simplicial_degree(self, m):
        """The cosimplicial set of m-simplices."""
        N = self.trunc
        return TruncCosimpSet(N, [L.levels[m] for L in self.levels],
                              {k: f.levels[m] for k, f in self.cofaces.items()},
                              {k: f.levels[m] for k, f in self.codegeneracies.items()})


class CosimpSpaceMap:
    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = list(components)
        if check:
            for (n, i), d in source.cofaces.items():
                if not (self.components[n] @ d).equals(target.cofaces[(n, i)] @ self.components[n - 1]):
                    raise ValidationError(f"map not natural for d^{i} into level {n}",
                                          law=f"d^{i} into level {n}")
            for (n, i), s in source.codegeneracies.items():
                if not (self.components[n] @ s).equals(target.codegeneracies[(n, i)] @ self.components[n + 1]):
                    raise ValidationError(f"map not natural for s^{i} into level {n}",
                                          law=f"s^{i} into level {n}")


def _postcompose_space(levels, N, M):
    """Cosimplicial structure on sub-objects of the simplices by post-composition."""
    from .ordinals import codegeneracy, coface
    cof, cod = {}, {}

    def induced(theta, src, tgt):
        comps = []
        for m in range(M + 1):
            comps.append({x: tuple(theta(v) for v in x) for x in src.levels[m]})
        return SimplicialMap(src, tgt, comps)

    for n in range(1, N + 1):
        for i in range(n + 1):
            cof[(n, i)] = induced(coface(n, i), levels[n - 1], levels[n])
    for n in range(N):
        for i in range(n + 1):
            cod[(n, i)] = induced(codegeneracy(n, i), levels[n + 1], levels[n])
    return TruncCosimpSpace(N, levels, cof, cod)


def delta_object(N, M):
    """The cosimplicial space n -> Delta^n at cosimplicial truncation N, simplicial M."""
    return _postcompose_space([standard_simplex(n, M) for n in range(N + 1)], N, M)


def delta_skeleton(N, M, k):
    """n -> sk_k Delta^n."""
    levels = []
    for n in range(N + 1):
        D = standard_simplex(n, M)
        levels.append(skeleton(D, k) if k <= M else D)
    return _postcompose_space(levels, N, M)


def constant_space(Y, N):
    ident = SimplicialMap.identity(Y)
    return TruncCosimpSpace(N, [Y] * (N + 1),
                            {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)},
                            {(n, i): ident for n in range(N) for i in range(n + 1)})


def _check_skeleton_map(S, X, f):
    """Validate f: S -> X given as per-level dicts on simplices."""
    comps = []
    for k in range(S.trunc + 1):
        comps.append(SimplicialMap(S.levels[k], X.levels[k], f[k]))
    return CosimpSpaceMap(S, X, comps)


def extension_candidates(X, f, n):
    """n-simplices of X^n extending f: sk_{n-1}Delta -> X over sk_n Delta.

    ``f[k][m]`` is a dict from the m-simplices of sk_{n-1}Delta^k to the
    m-simplices of X^k.  A candidate x must restrict to
    f along every non-surjective simplex of Delta^n and satisfy
    s^i x = f(s^i) in the matching set.  Every candidate is turned into a map
    sk_n Delta -> X and that map is validated.
    """
    N, M = X.trunc, X.simp_trunc
    if not 1 <= n <= min(N, M):
        raise DegreeError(f"need 1 <= n <= min(N, M) = {min(N, M)}")
    S = delta_skeleton(N, M, n - 1)
    _check_skeleton_map(S, X, f)
    Xn = X.levels[n]
    boundary = [t for m in range(M + 1) for t in monotone_maps(m, n) if not t.is_surjective()]
    cands = []
    for x in Xn.levels[n]:
        good = all(Xn.apply(sig)[x] == f[n][sig.source][sig.images] for sig in boundary)
        if good:
            for i in range(n):
                si = tuple(v if v <= i else v - 1 for v in range(n + 1))
                if X.codegeneracies[(n - 1, i)].levels[n][x] != f[n - 1][n][si]:
                    good = False
                    break
        if good:
            cands.append(x)
    T = delta_skeleton(N, M, n)
    for x in cands:
        ext = []
        for k in range(N + 1):
            per = []
            for m in range(M + 1):
                table = {}
                for sig in T.levels[k].levels[m]:
                    if sig in f[k][m]:
                        table[sig] = f[k][m][sig]
                        continue
                    tau, theta = epi_mono(_ord(sig, k))
                    y = Xn.apply(tau)[x]
                    table[sig] = X.apply(theta).levels[m][y]
                per.append(table)
            ext.append(per)
        _check_skeleton_map(T, X, ext)
    return sorted_labels(cands)


def _ord(images, target):
    return OrdMap(tuple(images), target)


def inclusion_of_skeleton(N, M, k):
    """The inclusion sk_k Delta -> Delta as per-level dicts."""
    S = delta_skeleton(N, M, k)
    return [[{x: x for x in S.levels[n].levels[m]} for m in range(M + 1)] for n in range(N + 1)]
