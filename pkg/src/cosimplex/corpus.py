"""Seeded random instances.

Every generator takes a ``random.Random`` (Mersenne Twister) so that a seed
fixes the instance on any platform running CPython.
"""

from .labels import sort_key
from .ordinals import codegeneracy, coface, monotone_maps


def representable(a, N):
    """Hom([a], -) truncated at N; elements are image tuples."""
    from .cosimplicial import TruncCosimpSet
    levels = [[t.images for t in monotone_maps(a, n)] for n in range(N + 1)]
    cof = {(n, i): {x: tuple(coface(n, i)(v) for v in x) for x in levels[n - 1]}
           for n in range(1, N + 1) for i in range(n + 1)}
    cod = {(n, i): {x: tuple(codegeneracy(n, i)(v) for v in x) for x in levels[n + 1]}
           for n in range(N) for i in range(n + 1)}
    return TruncCosimpSet(N, levels, cof, cod)


def disjoint_union_cosimp(Xs):
    from .cosimplicial import TruncCosimpSet
    N = Xs[0].trunc
    levels = [[(k, x) for k, X in enumerate(Xs) for x in X.levels[n]] for n in range(N + 1)]
    cof = {key: {(k, x): (k, X.cofaces[key][x]) for k, X in enumerate(Xs) for x in X.levels[key[0] - 1]}
           for key in Xs[0].cofaces}
    cod = {key: {(k, x): (k, X.codegeneracies[key][x]) for k, X in enumerate(Xs) for x in X.levels[key[0] + 1]}
           for key in Xs[0].codegeneracies}
    return TruncCosimpSet(N, levels, cof, cod)


def congruence_quotient(X, pairs, with_map=False):
    """Quotient of X by the smallest congruence identifying the given pairs.

    ``pairs`` lists (n, x, y) with x, y in X^n.  Classes are closed under all
    cofaces and codegeneracies, then each class is named by its least member.
    With ``with_map=True`` the quotient map X -> X/~ is returned as well.
    """
    from .cosimplicial import TruncCosimpSet
    parent = {}

    def find(node):
        parent.setdefault(node, node)
        while parent[node] != node:
            parent[node] = parent[parent[node]]
            node = parent[node]
        return node

    maps = [((n - 1, n), t) for (n, i), t in X.cofaces.items()]
    maps += [((n + 1, n), t) for (n, i), t in X.codegeneracies.items()]
    queue = [((n, x), (n, y)) for n, x, y in pairs]
    while queue:
        a, b = queue.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        parent[ra] = rb
        # congruence: images of identified elements are identified
        for (src, tgt), t in maps:
            if a[0] == src:
                queue.append(((tgt, t[a[1]]), (tgt, t[b[1]])))
    classes = {}
    for n in range(X.trunc + 1):
        for x in X.levels[n]:
            classes.setdefault(find((n, x)), []).append(x)
    rep = {}
    for n in range(X.trunc + 1):
        for x in X.levels[n]:
            rep[(n, x)] = min(classes[find((n, x))], key=sort_key)
    levels = [sorted({rep[(n, x)] for x in X.levels[n]}, key=sort_key) for n in range(X.trunc + 1)]
    cof = {(n, i): {rep[(n - 1, x)]: rep[(n, y)] for x, y in t.items()} for (n, i), t in X.cofaces.items()}
    cod = {(n, i): {rep[(n + 1, x)]: rep[(n, y)] for x, y in t.items()} for (n, i), t in X.codegeneracies.items()}
    Q = TruncCosimpSet(X.trunc, levels, cof, cod)
    if not with_map:
        return Q
    from .cosimplicial import CosimpSetMap
    return Q, CosimpSetMap(X, Q, [{x: rep[(n, x)] for x in X.levels[n]} for n in range(X.trunc + 1)])


def random_cosimp_set(rng, N, max_summands=2, max_glue=2):
    """Quotient of a disjoint union of small representables by random gluing."""
    from .cosimplicial import constant
    parts = []
    for _ in range(rng.randint(1, max_summands)):
        kind = rng.random()
        if kind < 0.25:
            parts.append(constant(list(range(rng.randint(1, 2))), N))
        else:
            parts.append(representable(rng.randint(0, 1), N))
    X = disjoint_union_cosimp(parts)
    pairs = []
    for _ in range(rng.randint(0, max_glue)):
        n = rng.randint(0, N)
        lv = X.levels[n]
        if len(lv) > 1:
            x, y = rng.sample(lv, 2)
            pairs.append((n, x, y))
    return congruence_quotient(X, pairs) if pairs else X


def random_coefficients(rng, finite=False):
    """Z^r ⊕ Z/t with at most 3 generators and t in {2, 3, 4}."""
    from .abelian import FGAbGroup
    while True:
        r = 0 if finite else rng.randint(0, 2)
        tors = [rng.choice((2, 3, 4)) for _ in range(rng.randint(0 if r else 1, 3 - r))]
        if r + len(tors) >= 1:
            return FGAbGroup.from_invariants(tors, r)


def random_unimodular(rng, n, steps=None):
    from .intmat import identity
    P = identity(n)
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        q = rng.choice((-2, -1, 1, 2))
        P[i] = [a + q * b for a, b in zip(P[i], P[j])]
    if n and rng.random() < 0.5:
        P[0] = [-a for a in P[0]]
    return P


def _small_simplicial_sets(N):
    from .groupoid import FinGroupoid, nerve
    from .simplicial import boundary_simplex, circle, disjoint_union, point, standard_simplex
    return [circle(N), boundary_simplex(2, N), nerve(FinGroupoid.from_cyclic_group(2), N),
            standard_simplex(1, N), point(N), disjoint_union([circle(N), point(N)])]


def random_cosimp_ab(rng, N, finite=False, max_gens=48):
    """Random cosimplicial abelian group at truncation N.

    Kinds: G[X] for a random cosimplicial set X, cochains Map(Y_n, G) on a
    small simplicial set Y, and direct sums of two of these; each may be
    re-presented by random unimodular base changes.  Instances whose top
    level needs more than ``max_gens`` generators are redrawn.
    """
    from .cosab import change_presentation, cochains, direct_sum_ab, free_on_cosimp_set

    def one():
        G = random_coefficients(rng, finite)
        if rng.random() < 0.5:
            return free_on_cosimp_set(random_cosimp_set(rng, N), G)
        Y = rng.choice(_small_simplicial_sets(N))
        return cochains(Y, G, N)

    while True:
        A = one()
        if rng.random() < 0.25:
            A = direct_sum_ab([A, one()])
        if A.levels[N].ngens > max_gens:
            continue
        if rng.random() < 0.3:
            A = change_presentation(A, [random_unimodular(rng, G.ngens) for G in A.levels])
        return A


def chain_complex_from_pieces(pieces, top):
    """Bounded chain complex assembled from elementary pieces.

    ``("free", k)`` is Z in degree k; ``("pair", k, m)`` is Z --m--> Z from
    degree k+1 to k, contributing Z/m to H_k (nothing when m = 1);
    ``("tors", k, t)`` is a Z/t summand in degree k with zero boundaries.
    """
    from .abelian import AbHom, FGAbGroup, NNChainComplex
    gens = [[] for _ in range(top + 1)]
    # tag with the position so that repeated pieces stay distinct
    for idx, q in enumerate(pieces):
        p = tuple(q) + (idx,)
        if p[0] == "pair":
            gens[p[1] + 1].append((p, "a"))
            gens[p[1]].append((p, "b"))
        else:
            gens[p[1]].append((p, None))
    groups = []
    for k in range(top + 1):
        rels = []
        for r, (p, _role) in enumerate(gens[k]):
            if p[0] == "tors":
                col = [0] * len(gens[k])
                col[r] = p[2]
                rels.append(col)
        groups.append(FGAbGroup(len(gens[k]), rels))
    bds = []
    for k in range(1, top + 1):
        cols = []
        for p, role in gens[k]:
            col = [0] * len(gens[k - 1])
            if role == "a":
                col[gens[k - 1].index((p, "b"))] = p[2]
            cols.append(col)
        bds.append(AbHom(groups[k], groups[k - 1], cols))
    return NNChainComplex(groups, bds, bounded=True)


def scramble_complex(rng, C):
    """Re-present every degree by a random unimodular base change."""
    from .abelian import AbHom, NNChainComplex, change_basis
    changed = [change_basis(G, random_unimodular(rng, G.ngens)) for G in C.groups]
    groups = [g for g, _iso, _inv in changed]
    bds = [changed[k - 1][2] @ C.boundary(k) @ changed[k][1] for k in range(1, C.top + 1)]
    bds = [AbHom(groups[k], groups[k - 1], b.matrix) for k, b in zip(range(1, C.top + 1), bds)]
    return NNChainComplex(groups, bds, bounded=C.bounded)


def random_chain_complex(rng, top, max_pieces=4):
    pieces = []
    for _ in range(rng.randint(1, max_pieces)):
        kind = rng.choice(("free", "pair", "pair", "tors"))
        if kind == "pair":
            k = rng.randint(0, top - 1)
            pieces.append(("pair", k, rng.choice((1, 1, 2, 3))))
        elif kind == "tors":
            pieces.append(("tors", rng.randint(0, top), rng.choice((2, 3, 4))))
        else:
            pieces.append(("free", rng.randint(0, top)))
    return scramble_complex(rng, chain_complex_from_pieces(pieces, top))


def random_two_stage(rng, n):
    """Complex with homology in degrees n-1 and n only, top degree n+1.

    Each stage is Z or Z/m; a few acyclic pairs hide the shape, and every
    degree is re-presented by a random base change.
    """
    top = n + 1
    pieces = []
    for k in (n - 1, n):
        if rng.random() < 0.5:
            pieces.append(("free", k))
        else:
            pieces.append(("pair", k, rng.choice((2, 3))))
    for _ in range(rng.randint(0, 2)):
        pieces.append(("pair", rng.randint(0, top - 1), 1))
    return scramble_complex(rng, chain_complex_from_pieces(pieces, top))


# -- maps of cosimplicial simplicial abelian groups --------------------------------

def _small_targets(M):
    from .simplicial import boundary_simplex, circle, point, standard_simplex
    return [circle(M), boundary_simplex(2, M), standard_simplex(1, M), point(M)]


def _to_point(Y):
    from .simplicial import SimplicialMap, point
    P = point(Y.trunc)
    return SimplicialMap(Y, P, [{y: P.levels[m][0] for y in Y.levels[m]} for m in range(Y.trunc + 1)])


def _projection_ss(Y, Z):
    from .simplicial import SimplicialMap, product
    P = product(Y, Z)
    return SimplicialMap(P, Y, [{yz: yz[0] for yz in P.levels[m]} for m in range(P.trunc + 1)])


def _quotient_map(rng, X):
    pairs = []
    for _ in range(rng.randint(1, 2)):
        n = rng.randint(0, X.trunc)
        if len(X.levels[n]) > 1:
            pairs.append((n,) + tuple(rng.sample(X.levels[n], 2)))
    if not pairs:
        from .cosimplicial import CosimpSetMap
        return CosimpSetMap(X, X, [{x: x for x in lv} for lv in X.levels])
    return congruence_quotient(X, pairs, with_map=True)[1]


def random_surjective_simp_ab_map(rng, N, M=2):
    """G[f x g] with f a quotient (or identity) of cosimplicial sets and g a
    surjective simplicial map, so every component is surjective."""
    from .cosab import external_product_map
    from .cosimplicial import CosimpSetMap
    from .simplicial import SimplicialMap
    G = random_coefficients(rng)
    X = random_cosimp_set(rng, N)
    Y = rng.choice(_small_targets(M))
    kind = rng.randrange(3)
    f = _quotient_map(rng, X) if kind != 1 else CosimpSetMap(X, X, [{x: x for x in lv} for lv in X.levels])
    if kind == 0:
        g = SimplicialMap.identity(Y)
    elif kind == 1:
        g = _to_point(Y)
    else:
        g = _projection_ss(Y, rng.choice(_small_targets(M)[2:]))
    return external_product_map(f, g, G)


def engineered_non_fibration(N=1, M=2):
    """Multiplication by 2 on Z[Ob Delta x Delta^1]: not surjective in any degree."""
    from .abelian import FGAbGroup
    from .cosab import external_product, scale_map
    from .cosimplicial import ordinal_vertices
    from .simplicial import standard_simplex
    return scale_map(external_product(ordinal_vertices(N), standard_simplex(1, M), FGAbGroup.free(1)), 2)


# -- cosimplicial groupoids -------------------------------------------------------

def contractible_map(f):
    """C(f): C(X) -> C(Y) for a map f of cosimplicial sets."""
    from .groupoid import GpdFunctor
    from .torsors import CosimpGpdMap, contractible_on
    CX, CY = contractible_on(f.source), contractible_on(f.target)
    comps = []
    for n in range(CX.trunc + 1):
        t = f.levels[n]
        comps.append(GpdFunctor(CX.levels[n], CY.levels[n], dict(t),
                                {(a, b): (t[a], t[b]) for a, b in CX.levels[n].morphisms}))
    return CosimpGpdMap(CX, CY, comps)


def random_base_gpd(rng, N):
    """Constant Z/2 or Z/3, discrete or contractible on a random cosimplicial set."""
    from .groupoid import FinGroupoid
    from .torsors import constant_gpd, contractible_on, discrete_on
    kind = rng.randrange(4)
    if kind < 2:
        return constant_gpd(FinGroupoid.from_cyclic_group(kind + 2), N)
    X = random_cosimp_set(rng, N, max_summands=1)
    return discrete_on(X) if kind == 2 else contractible_on(X)


def random_contractible_gpd(rng, N):
    """Levelwise contractible: C(X), C(Ob Delta), or a product of two C(X)."""
    from .torsors import contractible_on, ordinal_contractible, product_gpd
    kind = rng.randrange(4)
    if kind == 0:
        return ordinal_contractible(N)
    U = contractible_on(random_cosimp_set(rng, N))
    if kind == 3:
        U = product_gpd(U, contractible_on(random_cosimp_set(rng, N, max_summands=1)))
    return U


def random_levelwise_equivalence(rng, N):
    """A map of cosimplicial groupoids that is an equivalence in each level.

    Kinds: projection H x C(X) -> H, the section H -> H x C(X) at a cone
    of X, and C(f) for a quotient map f.
    """
    from .cosimplicial import limit_cones
    from .torsors import contractible_on, projection_gpd, section_at_point
    kind = rng.randrange(3)
    if kind == 2:
        return contractible_map(_quotient_map(rng, random_cosimp_set(rng, N)))
    H = random_base_gpd(rng, N)
    X = random_cosimp_set(rng, N, max_summands=1)
    if kind == 1:
        cones = limit_cones(X) if N >= 1 else [(x,) for x in X.levels[0]]
        if cones:
            return section_at_point(H, contractible_on(X), rng.choice(cones))
    return projection_gpd(H, contractible_on(X))


# -- Eilenberg-Mac Lane model inputs ----------------------------------------------

def arrow_category():
    from .groupoid import FinCategory
    return FinCategory([0, 1], {"id0": (0, 0), "id1": (1, 1), "a": (0, 1)}, {0: "id0", 1: "id1"},
                       {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("a", "id0"): "a", ("id1", "a"): "a"})


def _relabel(X, tag):
    """Isomorphic copy of X with every simplex x renamed (tag, x), and the iso X -> copy."""
    from .simplicial import SimplicialMap, TruncSimpSet
    r = lambda t: {(tag, x): (tag, y) for x, y in t.items()}
    Y = TruncSimpSet(X.trunc, [[(tag, x) for x in lv] for lv in X.levels],
                     {k: r(t) for k, t in X.faces.items()}, {k: r(t) for k, t in X.degeneracies.items()})
    return Y, SimplicialMap(X, Y, [{x: (tag, x) for x in lv} for lv in X.levels])


def sphere_model_input(arrow=False, M=3):
    """U = a vertex inside V = F = the boundary of the 3-simplex, n = 2.

    Over the one-object category, or (``arrow=True``) over 0 -> 1 with a
    relabeled copy at 1 and the renaming isomorphism as the transition.
    Returns the argument tuple of ``em_model``.
    """
    from .postnikov import SSetDiagram, SSetDiagramMap, constant_diagram, point_category
    from .simplicial import SimplicialMap, boundary_simplex, sub_simplicial_set
    S2 = boundary_simplex(3, M)
    base = sub_simplicial_set(S2, [[x for x in lv if set(x) == {0}] for lv in S2.levels])
    incl = SimplicialMap(base, S2, [{x: x for x in lv} for lv in base.levels])
    if not arrow:
        I = point_category()
        U, V = constant_diagram(I, base), constant_diagram(I, S2)
        return (I, U, V, V, SSetDiagramMap(U, V, {"*": incl}),
                SSetDiagramMap(V, V, {"*": SimplicialMap.identity(S2)}), 2)
    I = arrow_category()
    S2c, r = _relabel(S2, "c")
    basec, rb = _relabel(base, "c")
    inclc = SimplicialMap(basec, S2c, [{x: x for x in lv} for lv in basec.levels])
    U = SSetDiagram(I, {0: base, 1: basec}, {"id0": SimplicialMap.identity(base),
                                             "id1": SimplicialMap.identity(basec), "a": rb})
    V = SSetDiagram(I, {0: S2, 1: S2c}, {"id0": SimplicialMap.identity(S2),
                                         "id1": SimplicialMap.identity(S2c), "a": r})
    ident = SSetDiagramMap(V, V, {0: SimplicialMap.identity(S2), 1: SimplicialMap.identity(S2c)})
    return (I, U, V, V, SSetDiagramMap(U, V, {0: incl, 1: inclc}), ident, 2)
