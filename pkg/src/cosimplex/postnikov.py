"""Dold-Kan correspondence, Postnikov sections and Eilenberg-Mac Lane models.

Everything happens for simplicial abelian groups, where fibres are kernels,
cofibres are mapping cones and the n-th Postnikov section is Gamma of the
good truncation of the normalized complex.  Homology of a simplicial abelian
group A means the homology of its normalized complex N(A).

>>> from cosimplex.abelian import AbHom, FGAbGroup, NNChainComplex
>>> Z, O = FGAbGroup.free(1), FGAbGroup.trivial()
>>> C = NNChainComplex([O, O, Z], [AbHom.zero(O, O), AbHom.zero(Z, O)], bounded=True)
>>> K = gamma_dk(C, 3)
>>> [G.ngens for G in K.levels]
[0, 0, 1, 3]
"""

from __future__ import annotations

from .abelian import (AbHom, FGAbGroup, Lifter, NNChainComplex, cokernel, direct_sum,
                      hom_equal, hom_from_blocks, induced_on_homology, induced_on_quotients,
                      is_isomorphism, kernel, restrict)
from .errors import DegreeError, HypothesisFailed, ValidationError
from .groupoid import FinCategory
from .ordinals import coface, codegeneracy, compose, epi_mono, surjections
from .simplicial import (SimpAbHom, SimplicialMap, TruncSimpAb, free_abelian,
                         free_abelian_map, normalized_chains)


# -- chain complexes and chain maps ------------------------------------------------

def _groups_with_zero(C, k):
    if k < 0:
        return FGAbGroup.trivial()
    if k <= C.top:
        return C.group(k)
    if C.bounded:
        return FGAbGroup.trivial()
    raise DegreeError(f"degree {k} beyond the known top {C.top}")


def _boundary(C, k):
    """∂_k, with zero maps outside the stored range."""
    if 1 <= k <= C.top:
        return C.boundary(k)
    return AbHom.zero(_groups_with_zero(C, k), _groups_with_zero(C, k - 1))


def check_chain_map(phi, C, D):
    """phi[k]: C_k -> D_k commutes with the boundaries wherever both are stored."""
    top = min(len(phi) - 1, C.top, D.top)
    for k in range(1, top + 1):
        if not hom_equal(_boundary(D, k) @ phi[k], phi[k - 1] @ _boundary(C, k)):
            return False
    return True


def invert_iso(f):
    """Inverse of an isomorphism of finitely generated groups."""
    if not is_isomorphism(f):
        raise ValidationError("homomorphism is not invertible", law="isomorphism")
    lifter = Lifter(f)
    cols = [lifter.lift(f.target.basis_vector(i)) for i in range(f.target.ngens)]
    return AbHom(f.target, f.source, cols)


def homology_groups(C, degrees):
    return [C.homology(k) for k in degrees]


# -- Dold-Kan ------------------------------------------------------------------------

def normalize_dk(A, with_inclusions=False):
    """N(A): N_m = meet of ker d_i for i >= 1, differential d_0.

    Degree ``A.trunc`` is the last one known, so homology is answered below it.
    """
    groups, incls, bds = [], [], []
    for m in range(A.trunc + 1):
        if m == 0:
            G = A.levels[0]
            groups.append(G)
            incls.append(AbHom.identity(G))
            continue
        stacked = hom_from_blocks([A.levels[m]], [A.levels[m - 1]] * m,
                                  {(i - 1, 0): A.faces[(m, i)] for i in range(1, m + 1)})
        stacked = AbHom(A.levels[m], direct_sum([A.levels[m - 1]] * m)[0], stacked.matrix, check=False)
        Nm, incl = kernel(stacked)
        groups.append(Nm)
        incls.append(incl)
        bds.append(restrict(A.faces[(m, 0)], incl, incls[m - 1]))
    C = NNChainComplex(groups, bds, bounded=False)
    return (C, incls) if with_inclusions else C


def simp_ab_homology(A, k):
    if k >= A.trunc:
        raise DegreeError(f"H_{k} needs level {k + 1}, truncation is {A.trunc}")
    return normalize_dk(A).homology(k)


def _gamma_summands(C, m):
    out = []
    for k in range(m + 1):
        G = _groups_with_zero(C, k)
        if G.ngens == 0:
            continue
        for sigma in surjections(m, k):
            out.append((sigma, k))
    return out


def _gamma_operator(C, theta, src_summands, tgt_summands, src_group, tgt_group):
    """Gamma(C)(theta): Gamma_m -> Gamma_{m'} for theta: [m'] -> [m]."""
    index = {s: r for r, (s, _k) in enumerate(tgt_summands)}
    blocks = {}
    for c, (sigma, k) in enumerate(src_summands):
        tau, delta = epi_mono(compose(sigma, theta))
        j = tau.target
        if j == k:
            blocks[(index[tau], c)] = AbHom.identity(_groups_with_zero(C, k))
        elif j == k - 1 and delta == coface(k, 0) and tau in index:
            blocks[(index[tau], c)] = _boundary(C, k)
    srcs = [_groups_with_zero(C, k) for _s, k in src_summands]
    tgts = [_groups_with_zero(C, k) for _s, k in tgt_summands]
    h = hom_from_blocks(srcs, tgts, blocks)
    return AbHom(src_group, tgt_group, h.matrix, check=False)


def gamma_dk(C, M):
    """Gamma(C) up to level M: level m is the sum over [m] ->> [k] of C_k."""
    if not C.bounded and M > C.top:
        raise DegreeError(f"Gamma up to level {M} needs C up to degree {M}")
    summands = [_gamma_summands(C, m) for m in range(M + 1)]
    levels = [direct_sum([_groups_with_zero(C, k) for _s, k in summands[m]])[0] for m in range(M + 1)]
    faces, degens = {}, {}
    for m in range(1, M + 1):
        for i in range(m + 1):
            faces[(m, i)] = _gamma_operator(C, coface(m, i), summands[m], summands[m - 1],
                                            levels[m], levels[m - 1])
    for m in range(M):
        for i in range(m + 1):
            degens[(m, i)] = _gamma_operator(C, codegeneracy(m, i), summands[m], summands[m + 1],
                                             levels[m], levels[m + 1])
    A = TruncSimpAb(M, levels, faces, degens)
    A.gamma_summands = summands
    return A


def gamma_map(phi, C, D, GC, GD):
    """Gamma(phi): Gamma(C) -> Gamma(D), summand by summand."""
    comps = []
    for m in range(GC.trunc + 1):
        sc, sd = GC.gamma_summands[m], GD.gamma_summands[m]
        index = {s: r for r, (s, _k) in enumerate(sd)}
        blocks = {}
        for c, (sigma, k) in enumerate(sc):
            if sigma in index:
                blocks[(index[sigma], c)] = phi[k] if k < len(phi) else AbHom.zero(
                    _groups_with_zero(C, k), _groups_with_zero(D, k))
        h = hom_from_blocks([_groups_with_zero(C, k) for _s, k in sc],
                            [_groups_with_zero(D, k) for _s, k in sd], blocks)
        comps.append(AbHom(GC.levels[m], GD.levels[m], h.matrix, check=False))
    return SimpAbHom(GC, GD, comps)


def dk_chain_round_trip(C, M):
    """Check N(Gamma C) = C in degrees <= M via the inclusion of the identity summands."""
    G = gamma_dk(C, M)
    NG, incls = normalize_dk(G, with_inclusions=True)
    phi = []
    for k in range(M + 1):
        Ck = _groups_with_zero(C, k)
        cols = []
        summ = G.gamma_summands[k]
        pos = 0
        for sigma, j in summ:
            if sigma.is_identity():
                break
            pos += _groups_with_zero(C, j).ngens
        for r in range(Ck.ngens):
            col = [0] * G.levels[k].ngens
            col[pos + r] = 1
            cols.append(col)
        iota = AbHom(Ck, G.levels[k], cols)
        phi.append(restrict(iota, AbHom.identity(Ck), incls[k]))
    if not all(is_isomorphism(f) for f in phi):
        return False
    D = NNChainComplex([_groups_with_zero(C, k) for k in range(M + 1)],
                       [_boundary(C, k) for k in range(1, M + 1)], bounded=False)
    return check_chain_map(phi, D, NG)


def dk_comparison(A):
    """Gamma(N A) -> A, sending the summand of sigma: [m] ->> [k] through A(sigma)."""
    NA, incls = normalize_dk(A, with_inclusions=True)
    G = gamma_dk(NA, A.trunc)
    comps = []
    for m in range(A.trunc + 1):
        blocks = {}
        summ = G.gamma_summands[m]
        for c, (sigma, k) in enumerate(summ):
            blocks[(0, c)] = A.apply(sigma) @ incls[k]
        h = hom_from_blocks([NA.group(k) for _s, k in summ], [A.levels[m]], blocks)
        comps.append(AbHom(G.levels[m], A.levels[m], h.matrix, check=False))
    return NA, G, SimpAbHom(G, A, comps)


def dk_simplicial_round_trip(A):
    """Gamma(N A) -> A is a simplicial isomorphism."""
    _NA, _G, c = dk_comparison(A)
    return all(is_isomorphism(f) for f in c.components)


# -- truncations and Postnikov sections ----------------------------------------------

def good_truncation(C, n):
    """tau_{<=n} C and the projection C -> tau C (a chain map in degrees <= C.top)."""
    if n < 0:
        raise DegreeError("truncation degree must be non-negative")
    if n >= C.top and C.bounded:
        return C, [AbHom.identity(C.group(k)) for k in range(C.top + 1)]
    if n + 1 > C.top:
        raise DegreeError(f"truncating at {n} needs degree {n + 1}, top is {C.top}")
    Q, proj = cokernel(C.boundary(n + 1))
    groups = [C.group(k) for k in range(n)] + [Q]
    bds = [C.boundary(k) for k in range(1, n)]
    if n >= 1:
        bds.append(induced_on_quotients(C.boundary(n), proj, AbHom.identity(C.group(n - 1))))
    T = NNChainComplex(groups, bds, bounded=True)
    maps = [AbHom.identity(C.group(k)) for k in range(n)] + [proj]
    maps += [AbHom.zero(C.group(k), FGAbGroup.trivial()) for k in range(n + 1, C.top + 1)]
    return T, maps


def _restrict_to_normalized(f, inclA, inclB):
    return [restrict(f.components[m], inclA[m], inclB[m]) for m in range(len(inclA))]


def postnikov_section_ab(A, n):
    """P_n A = Gamma(tau_{<=n} N A) with the map q: A -> P_n A.

    Returns ``(P, q, report)``; the report compares homology in the window
    0..trunc-1 and checks that q is a homology isomorphism up to degree n.
    """
    M = A.trunc
    if n > M - 1:
        raise DegreeError(f"P_{n} needs truncation at least {n + 1}, got {M}")
    NA, G, comp = dk_comparison(A)
    T, t = good_truncation(NA, n)
    P = gamma_dk(T, M)
    cinv = SimpAbHom(A, G, [invert_iso(f) for f in comp.components])
    q = gamma_map(t, NA, T, G, P) @ cinv
    q = SimpAbHom(A, P, q.components)
    NP, inclP = normalize_dk(P, with_inclusions=True)
    _NA2, inclA = normalize_dk(A, with_inclusions=True)
    nq = _restrict_to_normalized(q, inclA, inclP)
    rows = []
    ok = True
    for k in range(M):
        HA, HP = NA.homology(k), NP.homology(k)
        if k <= n:
            iso = is_isomorphism(induced_on_homology(nq[k], _NA2, NP, k))
        else:
            iso = HP.is_trivial()
        ok = ok and iso
        rows.append({"degree": k, "H(A)": str(HA), "H(P)": str(HP), "ok": iso})
    return P, q, {"window": [0, M - 1], "rows": rows, "pass": ok}


# -- the k-invariant -----------------------------------------------------------------

def mapping_cone(f, X, Y):
    """Cone(f)_k = X_{k-1} + Y_k with ∂(x, y) = (-∂x, f x + ∂y); bounded inputs only.

    Returns the cone, the inclusions Y_k -> Cone_k and the projections Cone_k -> X_{k-1}.
    """
    top = max(X.top + 1, Y.top)
    groups, incY, projX = [], [], []
    for k in range(top + 1):
        Xs, Ys = _groups_with_zero(X, k - 1), _groups_with_zero(Y, k)
        S = direct_sum([Xs, Ys])[0]
        groups.append(S)
        incY.append(AbHom(Ys, S, hom_from_blocks([Ys], [Xs, Ys], {(1, 0): AbHom.identity(Ys)}).matrix,
                          check=False))
        projX.append(AbHom(S, Xs, hom_from_blocks([Xs, Ys], [Xs], {(0, 0): AbHom.identity(Xs)}).matrix,
                           check=False))
    bds = []
    for k in range(1, top + 1):
        Xa, Ya = _groups_with_zero(X, k - 1), _groups_with_zero(Y, k)
        Xb, Yb = _groups_with_zero(X, k - 2), _groups_with_zero(Y, k - 1)
        fk = f[k - 1] if k - 1 < len(f) else AbHom.zero(Xa, Ya)
        blocks = {(0, 0): -_boundary(X, k - 1), (1, 0): fk, (1, 1): _boundary(Y, k)}
        h = hom_from_blocks([Xa, Ya], [Xb, Yb], blocks)
        bds.append(AbHom(groups[k], groups[k - 1], h.matrix, check=False))
    return NNChainComplex(groups, bds, bounded=True), incY, projX


def _exact_at(f, g):
    """im f = ker g for composable f: A -> B, g: B -> C."""
    if not (g @ f).is_zero():
        return False
    K, incl = kernel(g)
    lifter = Lifter(f)
    return all(lifter.contains(col) for col in incl.matrix)


def _tower_map(C, n):
    """q: tau_{<=n} C -> tau_{<=n-1} C (n >= 1)."""
    Pn, _tn = good_truncation(C, n)
    Pn1, tn1 = good_truncation(C, n - 1)
    q = [AbHom.identity(C.group(k)) for k in range(n - 1)]
    q.append(AbHom(Pn.group(n - 1), Pn1.group(n - 1), tn1[n - 1].matrix, check=False))
    q.append(AbHom.zero(Pn.group(n), FGAbGroup.trivial()))
    return Pn, Pn1, q


def k_invariant_ab(A, n, simplicial=False):
    """The fibre sequence P_n A -> P_{n-1} A -> P_{n+1}(cofibre of q), chain level.

    Returns a dict with the complexes, the maps q and k_q, the homology rows
    of the long exact sequence in the window 0..n+1 and the verdict.
    """
    if n < 2:
        raise HypothesisFailed("the k-invariant needs n >= 2")
    C = normalize_dk(A)
    if n > C.top - 1:
        raise DegreeError(f"P_{n} needs truncation at least {n + 1}, got {C.top}")
    for k in (0, 1):
        if not C.homology(k).is_trivial():
            raise HypothesisFailed(f"H_{k} is nontrivial: {C.homology(k)}")
    Pn, Pn1, q = _tower_map(C, n)
    if not check_chain_map(q, Pn, Pn1):
        raise ValidationError("tower map is not a chain map", law="chain map")
    cone, incY, projX = mapping_cone(q, Pn, Pn1)
    T, t = good_truncation(cone, n + 1)
    k_q = [t[k] @ incY[k] for k in range(Pn1.top + 1)]
    k_q = [AbHom(Pn1.group(k), T.group(k), m.matrix, check=False) if k <= T.top else m
           for k, m in enumerate(k_q)]
    W = n + 1
    rows, ok = [], True
    for k in range(W + 1):
        entry = {"degree": k,
                 "H(P_n)": str(Pn.homology(k)) if k <= Pn.top else "0",
                 "H(P_{n-1})": str(Pn1.homology(k)) if k <= Pn1.top else "0",
                 "H(T)": str(T.homology(k)) if k <= T.top else "0"}
        entry["exact"] = all(_exact_at(f, g) for f, g in _les_pairs(Pn, Pn1, T, cone, q, k_q, t, projX, k))
        ok = ok and entry["exact"]
        rows.append(entry)
    top_ok = T.homology(n + 1).isomorphic(Pn.homology(n)) if n + 1 <= T.top else Pn.homology(n).is_trivial()
    out = {"n": n, "window": [0, W], "rows": rows, "shift_ok": top_ok,
           "pass": bool(ok and top_ok), "P_n": Pn, "P_n-1": Pn1, "target": T, "q": q, "k_q": k_q}
    if simplicial:
        M = n + 1
        GPn, GPn1, GT = gamma_dk(Pn, M), gamma_dk(Pn1, M), gamma_dk(T, M)
        out["simplicial"] = (GPn, GPn1, GT, gamma_map(q, Pn, Pn1, GPn, GPn1),
                             gamma_map(k_q, Pn1, T, GPn1, GT))
    return out


def _homology_map(phi, C, D, k):
    if k > C.top or k > D.top:
        src = C.homology(k) if k <= C.top else FGAbGroup.trivial()
        tgt = D.homology(k) if k <= D.top else FGAbGroup.trivial()
        return AbHom.zero(src, tgt)
    return induced_on_homology(phi[k], C, D, k)


def _connecting(T, t, projX, Pn, cone, k):
    """H_k(T) -> H_{k-1}(P_n) through H_k(T) = H_k(cone) and (x, y) |-> x."""
    HT = T.homology(k) if k <= T.top else FGAbGroup.trivial()
    if k - 1 < 0 or k - 1 > Pn.top or k > T.top:
        tgt = Pn.homology(k - 1) if 0 <= k - 1 <= Pn.top else FGAbGroup.trivial()
        return AbHom.zero(HT, tgt)
    # lift classes of T back to cone cycles, then project
    HTd, inclT, projT = T.homology_data(k)
    Hc, inclc, projc = cone.homology_data(k)
    toT = induced_on_homology(t[k], cone, T, k)
    back = invert_iso(toT)
    HP, inclP, projP = Pn.homology_data(k - 1)
    lift_c = Lifter(projc)
    lift_P = Lifter(inclP)
    cols = []
    for i in range(HTd.ngens):
        z = lift_c.lift(back(HTd.basis_vector(i)))
        x = projX[k](inclc(z))
        w = lift_P.lift(x)
        if w is None:
            raise ValidationError("connecting map does not land in cycles", law="chain map")
        cols.append(projP(w))
    return AbHom(HTd, HP, cols)


def _les_pairs(Pn, Pn1, T, cone, q, k_q, t, projX, k):
    """Consecutive pairs of the long exact homology sequence around degree k."""
    a = _homology_map(q, Pn, Pn1, k)
    b = _homology_map(k_q, Pn1, T, k)
    c = _connecting(T, t, projX, Pn, cone, k)
    pairs = [(a, b), (b, c)]
    if k >= 1:
        pairs.append((c, _homology_map(q, Pn, Pn1, k - 1)))
    return pairs


# -- Eilenberg-Mac Lane models over a diagram ----------------------------------------

class SSetDiagram:
    """A functor from a finite category I to truncated simplicial sets."""

    def __init__(self, I, objects, maps, check=True):
        self.I = I
        self.objects = dict(objects)
        self.maps = dict(maps)
        if check:
            for f in I.morphisms:
                F = self.maps.get(f)
                if F is None or F.source is not self.objects[I.src[f]] or F.target is not self.objects[I.tgt[f]]:
                    raise ValidationError(f"map for {f!r} missing or misplaced", law="endpoints")
            for x in I.objects:
                if not self.maps[I.ids[x]].equals(SimplicialMap.identity(self.objects[x])):
                    raise ValidationError(f"identity of {x!r} not sent to the identity", law="identity")
            for (g, f), h in I.comp.items():
                if not (self.maps[g] @ self.maps[f]).equals(self.maps[h]):
                    raise ValidationError(f"composition not preserved at ({g!r}, {f!r})",
                                          law="composition")


class SSetDiagramMap:
    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = dict(components)
        if check:
            I = source.I
            for f in I.morphisms:
                a, b = I.src[f], I.tgt[f]
                if not (self.components[b] @ source.maps[f]).equals(target.maps[f] @ self.components[a]):
                    raise ValidationError(f"map not natural at {f!r}", law="naturality")


def constant_diagram(I, X):
    ident = SimplicialMap.identity(X)
    return SSetDiagram(I, {x: X for x in I.objects}, {f: ident for f in I.morphisms})


def point_category():
    return FinCategory(["*"], {"id": ("*", "*")}, {"*": "id"}, {("id", "id"): "id"})


def _quotient_simp_ab(B, sub):
    """Levelwise cokernel of the inclusion sub -> B."""
    levels, projs = [], []
    for m in range(B.trunc + 1):
        Q, p = cokernel(sub.components[m])
        levels.append(Q)
        projs.append(p)
    faces = {k: induced_on_quotients(projs[k[0] - 1] @ d, projs[k[0]], AbHom.identity(levels[k[0] - 1]))
             for k, d in B.faces.items()}
    degens = {k: induced_on_quotients(projs[k[0] + 1] @ s, projs[k[0]], AbHom.identity(levels[k[0] + 1]))
              for k, s in B.degeneracies.items()}
    Q = TruncSimpAb(B.trunc, levels, faces, degens)
    return Q, SimpAbHom(B, Q, projs)


def _hurewicz_check(X, ZX, W):
    """N(ZX) -> normalized chains of X induces isomorphisms in degrees <= W."""
    NZ, incl = normalize_dk(ZX, with_inclusions=True)
    Ch, nd = normalized_chains(X)
    out = []
    for k in range(W + 1):
        idx = {x: r for r, x in enumerate(nd[k])}
        cols = []
        for r in range(ZX.levels[k].ngens):
            col = [0] * len(nd[k])
            x = X.levels[k][r]
            if x in idx:
                col[idx[x]] = 1
            cols.append(col)
        proj = AbHom(ZX.levels[k], Ch.group(k), cols, check=False)
        phi = proj @ incl[k]
        out.append(is_isomorphism(induced_on_homology(AbHom(NZ.group(k), Ch.group(k), phi.matrix, check=False),
                                                      NZ, Ch, k)))
    return out


def _sset_homology(X, k):
    return normalized_chains(X)[0].homology(k)


def _sset_map_homology(f, k):
    Cs, nds = normalized_chains(f.source)
    Ct, ndt = normalized_chains(f.target)
    idx = {x: r for r, x in enumerate(ndt[k])}
    cols = []
    for x in nds[k]:
        col = [0] * len(ndt[k])
        y = f.levels[k][x]
        if y in idx:
            col[idx[y]] = 1
        cols.append(col)
    return induced_on_homology(AbHom(Cs.group(k), Ct.group(k), cols, check=False), Cs, Ct, k)


def _reduced_trivial(X, W):
    """Connected with H_k = 0 for 1 <= k <= W."""
    H0 = _sset_homology(X, 0)
    if H0.invariants() != ((), 1):
        return 0
    for k in range(1, W + 1):
        if not _sset_homology(X, k).is_trivial():
            return k
    return None


def relative_free_abelian(i):
    """Z[V]/Z[U] for a levelwise injective simplicial map i: U -> V."""
    ZV, ZU = free_abelian(i.target), free_abelian(i.source)
    return _quotient_simp_ab(ZV, free_abelian_map(i, ZU, ZV))[0]


def em_model(I, U, V, F, incl, p, n):
    """F <- V -> ZV -> ZV/ZU -> P_n(ZV/ZU) objectwise, with window checks.

    ``incl: U -> V`` is levelwise injective and ``p: V -> F``; both are
    diagram maps over I.  Returns a report with the coefficient diagram
    H_n(ZV/ZU) and, per object, whether each arrow is a homology
    isomorphism in degrees <= n.
    """
    if n < 2:
        raise HypothesisFailed("the model needs n >= 2")
    W = n
    report = {"n": n, "window": [0, W], "objects": {}, "coefficients": {}, "transitions": {}}
    quotients = {}
    for x in I.objects:
        Ux, Vx, Fx = U.objects[x], V.objects[x], F.objects[x]
        if Vx.trunc < n + 1:
            raise DegreeError(f"object {x!r}: truncation {Vx.trunc} below {n + 1}")
        if not incl.components[x].is_injective():
            raise HypothesisFailed(f"object {x!r}: U -> V is not injective")
        bad = _reduced_trivial(Ux, W)
        if bad is not None:
            raise HypothesisFailed(f"object {x!r}: U has nontrivial reduced homology in degree {bad}")
        vf = [is_isomorphism(_sset_map_homology(p.components[x], k)) for k in range(W + 1)]
        if not all(vf):
            raise HypothesisFailed(f"object {x!r}: V -> F is not a homology isomorphism "
                                   f"in degree {vf.index(False)}")
        for k in range(1, W + 1):
            Hk = _sset_homology(Fx, k)
            if k < n and not Hk.is_trivial():
                raise HypothesisFailed(f"object {x!r}: F has homology in degree {k} below {n}")
        ZV = free_abelian(Vx)
        ZU = free_abelian(Ux)
        zi = free_abelian_map(incl.components[x], ZU, ZV)
        Q, proj = _quotient_simp_ab(ZV, zi)
        P, qP, prep = postnikov_section_ab(Q, n)
        NV = normalize_dk(ZV, with_inclusions=True)
        NQ = normalize_dk(Q, with_inclusions=True)
        nproj = _restrict_to_normalized(proj, NV[1], NQ[1])
        arrows = {"V->F": vf,
                  "V->ZV": _hurewicz_check(Vx, ZV, W),
                  "ZV->ZV/ZU": [],
                  "ZV/ZU->P_n": [r["ok"] for r in prep["rows"] if r["degree"] <= W]}
        for k in range(W + 1):
            if k == 0:
                arrows["ZV->ZV/ZU"].append(NQ[0].homology(0).is_trivial())
            else:
                arrows["ZV->ZV/ZU"].append(is_isomorphism(induced_on_homology(nproj[k], NV[0], NQ[0], k)))
        coeff = NQ[0].homology(n)
        quotients[x] = (Vx, ZV, Q, proj, NQ)
        report["objects"][x] = {a: all(v) for a, v in arrows.items()}
        report["coefficients"][x] = str(coeff)
    for f in I.morphisms:
        a, b = I.src[f], I.tgt[f]
        Va, ZVa, Qa, pa, NQa = quotients[a]
        Vb, ZVb, Qb, pb, NQb = quotients[b]
        zf = free_abelian_map(V.maps[f], ZVa, ZVb)
        qf = SimpAbHom(Qa, Qb, [induced_on_quotients(pb.components[m] @ zf.components[m], pa.components[m],
                                                     AbHom.identity(Qb.levels[m]))
                                for m in range(Qa.trunc + 1)])
        nqf = _restrict_to_normalized(qf, NQa[1], NQb[1])
        hf = induced_on_homology(nqf[n], NQa[0], NQb[0], n)
        report["transitions"][f] = {"matrix": hf.rows(), "iso": is_isomorphism(hf)}
    report["pass"] = all(all(v.values()) for v in report["objects"].values())
    return report
