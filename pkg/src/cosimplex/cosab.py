"""Cosimplicial abelian groups and their cochain complexes.

Structure maps are AbHoms keyed like every cosimplicial object here:
``cofaces[(n, i)] = d^i: A^{n-1} -> A^n`` and
``codegeneracies[(n, i)] = s^i: A^{n+1} -> A^n``.

>>> A = constant_ab(FGAbGroup.free(1), 3)
>>> [str(cohomology_H(A, n)) for n in range(3)]
['ℤ', '0', '0']
"""

from __future__ import annotations

import itertools

from . import intmat
from .abelian import (AbHom, CochainComplex, FGAbGroup, Lifter, canonical_form, cohomology,
                      direct_sum, hom_equal, hom_from_blocks, induced_on_cohomology,
                      induced_on_quotients, is_isomorphism, is_surjective, kernel, quotient,
                      restrict, subgroup)
from .errors import CapExceeded, DegreeError, InfiniteGroup, ValidationError
from .ordinals import all_maps, compose, monotone_maps
from .simplicial import SimpAbHom, TruncSimpAb
from .structure import Cosimplicial

ALL = "all"


class TruncCosimpAb(Cosimplicial):
    """Cosimplicial abelian group known on levels 0..trunc."""

    def __init__(self, trunc, levels, cofaces, codegeneracies, check=True):
        self.trunc = trunc
        if len(levels) != trunc + 1:
            raise ValidationError(f"expected {trunc + 1} levels", law="levels")
        self.levels = list(levels)
        self.cofaces = dict(cofaces)
        self.codegeneracies = dict(codegeneracies)
        if check:
            self._validate()

    def _compose(self, g, f):
        return g @ f

    def _identity(self, n):
        return AbHom.identity(self.levels[n])

    def _equal(self, a, b, n):
        return hom_equal(a, b)

    def _validate(self):
        N = self.trunc
        for n in range(1, N + 1):
            for i in range(n + 1):
                f = self.cofaces.get((n, i))
                if f is None or f.source.ngens != self.levels[n - 1].ngens or f.target.ngens != self.levels[n].ngens:
                    raise ValidationError(f"coface d^{i} into level {n} missing or misshapen",
                                          law=f"d^{i} into level {n}")
        for n in range(N):
            for i in range(n + 1):
                f = self.codegeneracies.get((n, i))
                if f is None or f.source.ngens != self.levels[n + 1].ngens or f.target.ngens != self.levels[n].ngens:
                    raise ValidationError(f"codegeneracy s^{i} into level {n} missing or misshapen",
                                          law=f"s^{i} into level {n}")
        self._check_identities()

    def truncate(self, N):
        return TruncCosimpAb(N, self.levels[:N + 1],
                             {k: v for k, v in self.cofaces.items() if k[0] <= N},
                             {k: v for k, v in self.codegeneracies.items() if k[0] < N},
                             check=False)

    def is_finite(self):
        return all(G.is_finite() for G in self.levels)

    def to_json(self):
        return {"trunc": self.trunc,
                "levels": [G.to_json() for G in self.levels],
                "d": {f"({n},{i})": f.to_json() for (n, i), f in sorted(self.cofaces.items())},
                "s": {f"({n},{i})": f.to_json() for (n, i), f in sorted(self.codegeneracies.items())}}

    @classmethod
    def from_json(cls, obj):
        N = int(obj["trunc"])
        levels = [FGAbGroup.from_json(g) for g in obj["levels"]]
        cof, cod = {}, {}
        for key, f in obj["d"].items():
            n, i = _parse_key(key)
            cof[(n, i)] = AbHom.from_json(levels[n - 1], levels[n], f)
        for key, f in obj["s"].items():
            n, i = _parse_key(key)
            cod[(n, i)] = AbHom.from_json(levels[n + 1], levels[n], f)
        return cls(N, levels, cof, cod)

    def __repr__(self):
        return f"TruncCosimpAb(trunc={self.trunc}, levels={[str(G) for G in self.levels]})"


def _parse_key(key):
    a, b = key.strip().strip("()").split(",")
    return int(a), int(b)


class CosimpAbHom:
    """Levelwise homomorphisms commuting with the structure maps."""

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = list(components)
        if check:
            for (n, i), d in source.cofaces.items():
                if not hom_equal(self.components[n] @ d, target.cofaces[(n, i)] @ self.components[n - 1]):
                    raise ValidationError(f"map does not commute with d^{i} into level {n}",
                                          law=f"d^{i} into level {n}")
            for (n, i), s in source.codegeneracies.items():
                if not hom_equal(self.components[n] @ s, target.codegeneracies[(n, i)] @ self.components[n + 1]):
                    raise ValidationError(f"map does not commute with s^{i} into level {n}",
                                          law=f"s^{i} into level {n}")


# -- constructions -------------------------------------------------------------------

def constant_ab(G, N):
    ident = AbHom.identity(G)
    return TruncCosimpAb(N, [G] * (N + 1),
                         {(n, i): ident for n in range(1, N + 1) for i in range(n + 1)},
                         {(n, i): ident for n in range(N) for i in range(n + 1)})


def _tensor_perm(table, src, tgt, G):
    """Matrix of G[src] -> G[tgt] induced by a function between finite sets."""
    g = G.ngens
    idx = {x: k for k, x in enumerate(tgt)}
    cols = []
    for x in src:
        base = idx[table[x]] * g
        for j in range(g):
            col = [0] * (len(tgt) * g)
            col[base + j] = 1
            cols.append(col)
    return cols


def _power(G, k):
    return direct_sum([G] * k)[0]


def free_on_cosimp_set(X, G):
    """G[X]: level n is the direct sum of copies of G indexed by X^n."""
    levels = [_power(G, len(lv)) for lv in X.levels]
    cof = {(n, i): AbHom(levels[n - 1], levels[n], _tensor_perm(t, X.levels[n - 1], X.levels[n], G), check=False)
           for (n, i), t in X.cofaces.items()}
    cod = {(n, i): AbHom(levels[n + 1], levels[n], _tensor_perm(t, X.levels[n + 1], X.levels[n], G), check=False)
           for (n, i), t in X.codegeneracies.items()}
    return TruncCosimpAb(X.trunc, levels, cof, cod)


def _pullback_matrix(table, src, tgt, G):
    """Matrix of Map(tgt_domain, G) -> Map(src_domain, G) for f: src -> tgt, i.e. phi -> phi o f.

    Here ``table`` maps elements of ``src`` to ``tgt`` and the result maps
    G^tgt to G^src.
    """
    g = G.ngens
    idx = {x: k for k, x in enumerate(src)}
    cols = [[0] * (len(src) * g) for _ in range(len(tgt) * g)]
    tidx = {y: k for k, y in enumerate(tgt)}
    for x in src:
        ty = tidx[table[x]]
        for j in range(g):
            cols[ty * g + j][idx[x] * g + j] = 1
    return cols


def cochains(Y, G, N=None):
    """Cochains Map(Y_n, G) on a simplicial set, with d^i = d_i^* and s^i = s_i^*."""
    N = Y.trunc if N is None else N
    if N > Y.trunc:
        raise DegreeError("cochain truncation exceeds the simplicial truncation")
    levels = [_power(G, len(Y.levels[n])) for n in range(N + 1)]
    cof, cod = {}, {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            cof[(n, i)] = AbHom(levels[n - 1], levels[n],
                                _pullback_matrix(Y.faces[(n, i)], Y.levels[n], Y.levels[n - 1], G), check=False)
    for n in range(N):
        for i in range(n + 1):
            cod[(n, i)] = AbHom(levels[n + 1], levels[n],
                                _pullback_matrix(Y.degeneracies[(n, i)], Y.levels[n], Y.levels[n + 1], G),
                                check=False)
    return TruncCosimpAb(N, levels, cof, cod)


def direct_sum_ab(As):
    N = As[0].trunc
    levels = [direct_sum([A.levels[n] for A in As])[0] for n in range(N + 1)]
    from .abelian import hom_direct_sum
    cof = {k: _rebase(hom_direct_sum([A.cofaces[k] for A in As]), levels[k[0] - 1], levels[k[0]])
           for k in As[0].cofaces}
    cod = {k: _rebase(hom_direct_sum([A.codegeneracies[k] for A in As]), levels[k[0] + 1], levels[k[0]])
           for k in As[0].codegeneracies}
    return TruncCosimpAb(N, levels, cof, cod)


def _rebase(f, source, target):
    return AbHom(source, target, f.matrix, check=False)


def change_presentation(A, bases):
    """Conjugate every structure map by the base changes ``bases[n]`` (unimodular)."""
    from .abelian import change_basis
    new, to_old, from_old = [], [], []
    for G, P in zip(A.levels, bases):
        G2, iso, inv = change_basis(G, P)
        new.append(G2)
        to_old.append(iso)
        from_old.append(inv)
    cof = {(n, i): _rebase(from_old[n] @ f @ to_old[n - 1], new[n - 1], new[n]) for (n, i), f in A.cofaces.items()}
    cod = {(n, i): _rebase(from_old[n] @ f @ to_old[n + 1], new[n + 1], new[n])
           for (n, i), f in A.codegeneracies.items()}
    return TruncCosimpAb(A.trunc, new, cof, cod)


# -- Moore complex and cohomology ----------------------------------------------------

def coboundary(A, n):
    """δ^n = Σ_{i=0}^{n+1} (-1)^i d^i: A^n -> A^{n+1}."""
    f = AbHom.zero(A.levels[n], A.levels[n + 1])
    for i in range(n + 2):
        d = A.cofaces[(n + 1, i)]
        f = f + d if i % 2 == 0 else f - d
    return _rebase(f, A.levels[n], A.levels[n + 1])


def moore_complex(A):
    C = CochainComplex(0, A.levels, [coboundary(A, n) for n in range(A.trunc)])
    return C


def cohomology_H(A, n):
    if not 0 <= n <= A.trunc - 1:
        raise DegreeError(f"H^{n} needs level {n + 1}; truncation is {A.trunc}")
    return cohomology(moore_complex(A), n)


# -- matching groups and the splitting ----------------------------------------------

class MatchingGroup:
    """M^{n-1}A inside (A^{n-1})^n, with the map s: A^n -> M^{n-1}A.

    Attributes: ``group``, ``incl`` (into the product ``ambient``),
    ``offsets`` of the product, and ``s`` (an AbHom A^n -> group).
    With ``upto = k`` only the first k+1 codegeneracies are used, giving the
    partial matching group of tuples (a_0, ..., a_k).
    """

    def __init__(self, A, n, upto=None):
        if not 1 <= n <= A.trunc:
            raise DegreeError(f"matching group needs 1 <= n <= {A.trunc}")
        k = n - 1 if upto is None else min(upto, n - 1)
        self.n, self.k = n, k
        prev = A.levels[n - 1]
        self.ambient, self.offsets = direct_sum([prev] * (k + 1))
        pairs = [(i, j) for j in range(k + 1) for i in range(j)]
        proj = [self._proj(prev, t) for t in range(k + 1)]
        self.projections = proj
        if pairs and n >= 2:
            below = A.levels[n - 2]
            target = direct_sum([below] * len(pairs))[0]
            blocks = {}
            for r, (i, j) in enumerate(pairs):
                blocks[(r, j)] = A.codegeneracies[(n - 2, i)]
                neg = -A.codegeneracies[(n - 2, j - 1)]
                blocks[(r, i)] = blocks[(r, i)] + neg if (r, i) in blocks else neg
            compat = hom_from_blocks([prev] * (k + 1), [below] * len(pairs), blocks)
            compat = AbHom(self.ambient, target, compat.matrix, check=False)
            self.group, self.incl = kernel(compat)
        else:
            self.group, self.incl = subgroup(self.ambient, intmat.identity(self.ambient.ngens))
        svec = hom_from_blocks([A.levels[n]], [prev] * (k + 1),
                               {(i, 0): A.codegeneracies[(n - 1, i)] for i in range(k + 1)})
        self.s_ambient = AbHom(A.levels[n], self.ambient, svec.matrix, check=False)
        lifter = Lifter(self.incl)
        cols = []
        for c in self.s_ambient.matrix:
            y = lifter.lift(c)
            if y is None:
                raise ValidationError("s does not land in the matching group", law="matching")
            cols.append(y)
        self.s = AbHom(A.levels[n], self.group, cols)

    def _proj(self, prev, t):
        cols = []
        for blk in range(self.k + 1):
            for j in range(prev.ngens):
                col = [0] * prev.ngens
                if blk == t:
                    col[j] = 1
                cols.append(col)
        return AbHom(self.ambient, prev, cols, check=False)

    def tuple_of(self, x):
        """Ambient components of an element given in matching-group coordinates."""
        v = self.incl(x)
        g = self.ambient.ngens // (self.k + 1) if self.k >= 0 else 0
        return [v[t * g:(t + 1) * g] for t in range(self.k + 1)]


def matching_group(A, n):
    return MatchingGroup(A, n)


def matching_splitting(A, n, M=None):
    """Homomorphism j: M^{n-1}A -> A^n with s o j = id.

    The tuple is cleared from the left: at step i the current i-th entry c
    is absorbed as d^{i+1} c and s(d^{i+1} c) is subtracted from the tuple,
    which leaves entries 0..i equal to zero.
    """
    M = M or MatchingGroup(A, n)
    amb = M.ambient
    x = AbHom.zero(amb, A.levels[n])
    t = list(M.projections)
    for i in range(n):
        c = t[i]
        dc = A.cofaces[(n, i + 1)] @ c
        x = x + dc
        for k in range(n):
            t[k] = t[k] - (A.codegeneracies[(n - 1, k)] @ dc)
    j = AbHom(M.group, A.levels[n], (x @ M.incl).matrix)
    if not hom_equal(M.s @ j, AbHom.identity(M.group)):
        raise ValidationError("s o j is not the identity on the matching group", law="s o j = id")
    return j


# -- normalization ----------------------------------------------------------------

def _s_block(A, n, idx):
    """(s^i)_{i in idx}: A^n -> ⊕ A^{n-1}."""
    prev = A.levels[n - 1]
    f = hom_from_blocks([A.levels[n]], [prev] * len(idx),
                        {(r, 0): A.codegeneracies[(n - 1, i)] for r, i in enumerate(idx)})
    return AbHom(A.levels[n], direct_sum([prev] * len(idx))[0], f.matrix, check=False)


def cn_groups(A, k):
    """Subgroups cN_kA^n with their inclusions; k = -1 is no condition, ALL is every s^i."""
    out = []
    for n in range(A.trunc + 1):
        top = n - 1 if k == ALL else min(k, n - 1)
        if top < 0:
            out.append(subgroup(A.levels[n], intmat.identity(A.levels[n].ngens)))
        else:
            out.append(kernel(_s_block(A, n, list(range(top + 1)))))
    return out


def cn_subcomplex(A, k=ALL):
    """(cN_kA, inclusions into the Moore complex).

    The coboundary is restricted to the subgroups; failure to restrict
    raises ValidationError.
    """
    groups = cn_groups(A, k)
    diffs = [restrict(coboundary(A, n), groups[n][1], groups[n + 1][1]) for n in range(A.trunc)]
    C = CochainComplex(0, [G for G, _ in groups], diffs)
    return C, [incl for _, incl in groups]


def normalization_report(A, k):
    """Compare H^n(cN_kA) with H^n(A) for n <= N-1.

    Returns a list of (n, invariants of H^n(cN_kA), invariants of H^n(A),
    whether the inclusion induces an isomorphism).
    """
    C, incls = cn_subcomplex(A, k)
    D = moore_complex(A)
    rows = []
    for n in range(A.trunc):
        h = induced_on_cohomology(incls[n], C, D, n)
        rows.append((n, h.source.invariants(), h.target.invariants(), is_isomorphism(h)))
    return rows


def contracting_homotopy_check(A, k):
    """Degreewise identities behind the comparison cN_{k+1}A ⊂ cN_kA.

    For -1 <= k and every degree where s^{k+1} exists, checks exactly:
    s^{k+1} carries cN_k into cN_k; d^{k+2} is a section of s^{k+1} and
    preserves cN_k; s^{k+1} δ = Σ_{j=k+3}^{n+1} (-1)^j d^{j-1} s^{k+1} on
    cN_kA^n; on C^n = cN_kA^{n-1} the map h = s^{k+1} satisfies
    h δ_* + δ_* h = (-1)^{k+1} with δ_* = Σ_{j=k+2}^{n} (-1)^{j+1} d^j; and the
    quotient complex cN_k / cN_{k+1} is acyclic in every computed degree.
    Returns a list of failure strings (empty on success).
    """
    N = A.trunc
    fails = []
    groups = cn_groups(A, k)
    incl = [g[1] for g in groups]

    def on_cn(f, n):
        return f @ incl[n]

    def lands_in(f, n):
        lif = Lifter(incl[n])
        return all(lif.contains(c) for c in f.matrix)

    def delta_star(m):
        # δ_*: cN_kA^m -> A^{m+1}
        f = AbHom.zero(A.levels[m], A.levels[m + 1])
        for j in range(k + 2, m + 2):
            d = A.cofaces[(m + 1, j)]
            f = f + d if (j + 1) % 2 == 0 else f - d
        return f

    for n in range(k + 2, N + 1):
        s = A.codegeneracies[(n - 1, k + 1)]
        if not lands_in(on_cn(s, n), n - 1):
            fails.append(f"s^{k + 1} leaves cN_{k} at degree {n}")
        d = A.cofaces[(n, k + 2)]
        if not hom_equal(s @ d, AbHom.identity(A.levels[n - 1])):
            fails.append(f"s^{k + 1} d^{k + 2} != id at degree {n}")
        if not lands_in(on_cn(d, n - 1), n):
            fails.append(f"d^{k + 2} leaves cN_{k} at degree {n}")
        if n + 1 <= N:
            lhs = A.codegeneracies[(n, k + 1)] @ coboundary(A, n)
            rhs = AbHom.zero(A.levels[n], A.levels[n])
            for j in range(k + 3, n + 2):
                t = A.cofaces[(n, j - 1)] @ s
                rhs = rhs + t if j % 2 == 0 else rhs - t
            if not hom_equal(on_cn(lhs, n), on_cn(rhs, n)):
                fails.append(f"s^{k + 1} δ formula fails at degree {n}")
    for m in range(k + 1, N):
        # y in cN_k^m, i.e. C^{m+1}
        h_after = A.codegeneracies[(m, k + 1)] @ delta_star(m)
        total = h_after
        if m - 1 >= k + 1:
            total = total + delta_star(m - 1) @ A.codegeneracies[(m - 1, k + 1)]
        want = AbHom.identity(A.levels[m]).scaled((-1) ** (k + 1))
        if not hom_equal(on_cn(total, m), on_cn(want, m)):
            fails.append(f"contracting homotopy fails on cN_{k} degree {m}")
    # acyclicity of the quotient cN_k / cN_{k+1}
    small = cn_groups(A, k + 1)
    qs = []
    for n in range(N + 1):
        sub = restrict(AbHom.identity(A.levels[n]), small[n][1], incl[n])
        qs.append(quotient(groups[n][0], sub.matrix))
    diffs = []
    for n in range(N):
        dn = restrict(coboundary(A, n), incl[n], incl[n + 1])
        diffs.append(induced_on_quotients(dn, qs[n][1], qs[n + 1][1]))
    Q = CochainComplex(0, [q for q, _ in qs], diffs)
    for n in range(N):
        if not cohomology(Q, n).is_trivial():
            fails.append(f"quotient cN_{k}/cN_{k + 1} has cohomology in degree {n}")
    return fails


# -- maps out of Δ into K(A, n) ---------------------------------------------------

def pi0_hom_delta_K(A, n):
    """H^n(cNA): normalized cocycles modulo normalized coboundaries."""
    if not 0 <= n <= A.trunc - 1:
        raise DegreeError(f"degree {n} needs level {n + 1}; truncation is {A.trunc}")
    C, _ = cn_subcomplex(A, ALL)
    return cohomology(C, n)


def pi_k_hom_delta_K(A, n, k):
    if k > n:
        return FGAbGroup.trivial()
    return pi0_hom_delta_K(A, n - k)


class _HNFDomain:
    """Coset representatives of a finite group Z^g / L via the column echelon form of L.

    The echelon basis of a full-rank L is lower triangular, so the box
    0 <= x_r < E[r][r] is a fundamental domain and reduction proceeds row
    by row.
    """

    def __init__(self, G):
        self.g = G.ngens
        E, _, piv = intmat.column_echelon(G.relations, self.g)
        if len(piv) != self.g:
            raise InfiniteGroup("group has positive free rank")
        self.E = E[:self.g]
        self.diag = [self.E[r][r] for r in range(self.g)]

    def reduce(self, x):
        x = list(x)
        for r in range(self.g):
            q = x[r] // self.diag[r]
            if q:
                col = self.E[r]
                for t in range(r, self.g):
                    x[t] -= q * col[t]
        return tuple(x)

    def elements(self):
        for x in itertools.product(*[range(d) for d in self.diag]):
            yield x

    def size(self):
        out = 1
        for d in self.diag:
            out *= d
        return out


def enumerate_cochain_maps(A, n):
    """Brute-force (number of cochain maps, number of homotopy classes).

    Counts normalized n-cocycles z (s^i z = 0 for all i, δz = 0) by running
    through a fundamental domain of A^n, then divides by the number of
    distinct normalized coboundaries.  Uses echelon forms only.
    """
    if not 0 <= n <= A.trunc - 1:
        raise DegreeError(f"degree {n} needs level {n + 1}; truncation is {A.trunc}")
    lo = max(n - 1, 0)
    dom = {m: _HNFDomain(A.levels[m]) for m in range(max(lo - 1, 0), n + 2)}

    def normalized(m):
        ss = [A.codegeneracies[(m - 1, i)] for i in range(m)] if m >= 1 else []
        out = []
        for x in dom[m].elements():
            if all(not any(dom[m - 1].reduce(s(x))) for s in ss):
                out.append(x)
        return out

    delta = coboundary(A, n)
    cycles = [z for z in normalized(n) if not any(dom[n + 1].reduce(delta(z)))]
    if n == 0:
        bounds = {dom[0].reduce([0] * A.levels[0].ngens)}
    else:
        dprev = coboundary(A, n - 1)
        bounds = {dom[n].reduce(dprev(y)) for y in normalized(n - 1)}
    maps = len(cycles)
    if maps % len(bounds):
        raise ValidationError("coboundaries do not divide the cocycles", law="subgroup index")
    return maps, maps // len(bounds)


# -- derived limits over the truncated ordinal category -----------------------------

def cut_lattice(g, constraints, batch=48):
    """Sublattice of Z^g satisfying each constraint, refined batch by batch.

    Each constraint is ``(apply, target)`` where ``apply(K)`` returns, for a
    list of basis columns K, their images in the target group; the
    constraint is that the image vanishes in ``target``.  Constraints are
    stacked until ``batch`` rows accumulate, then one kernel computation cuts
    the lattice down.  Returns a basis of the solution lattice as columns.
    """
    K = intmat.identity(g)
    pending = []
    rows = [0]
    solvers = {}

    def trivial(FK, tgt):
        nonzero = [v for v in FK if any(v)]
        if not nonzero:
            return True
        if not tgt.relations:
            return False
        if id(tgt) not in solvers:
            solvers[id(tgt)] = (tgt, intmat.SpanSolver(tgt.relations, tgt.ngens))
        return all(solvers[id(tgt)][1].contains(v) for v in nonzero)

    def flush():
        nonlocal K
        if not pending:
            return
        total = rows[0]
        cols = [[] for _ in K]
        rel_cols = []
        top = 0
        for FK, tgt in pending:
            for c, v in zip(cols, FK):
                c.extend(v)
            for r in tgt.relations:
                col = [0] * total
                col[top:top + tgt.ngens] = r
                rel_cols.append(col)
            top += tgt.ngens
        ker = intmat.kernel(cols + rel_cols, total)
        K = [intmat.apply(K, v[:len(K)], g) for v in ker]
        pending.clear()
        rows[0] = 0

    for apply, tgt in constraints:
        FK = apply(K)
        if trivial(FK, tgt):
            continue
        pending.append((FK, tgt))
        rows[0] += tgt.ngens
        if rows[0] >= batch:
            flush()
    flush()
    return K


def limit_by_cones(A):
    """The limit of A over Δ≤N: families (a_n) with A(θ) a_m = a_n for all θ."""
    N = A.trunc
    total, off = direct_sum(A.levels)
    g = total.ngens

    def block(n, col):
        return col[off[n]:off[n] + A.levels[n].ngens]

    def constraint(t):
        h = A.apply(t)

        def apply(K):
            return [[a - b for a, b in zip(h(block(t.source, c)), block(t.target, c))] for c in K]
        return apply, A.levels[t.target]

    K = cut_lattice(g, [constraint(t) for t in all_maps(N) if not t.is_identity()])
    solver = intmat.SpanSolver(K, g)
    rels = [solver.solve(r) for r in total.relations]
    return canonical_form(FGAbGroup(len(K), rels))[0]


def nondegenerate_chains(N, p, cap=10 ** 6):
    """Composable strings of p non-identity maps in Δ≤N as (start, (θ_1, ..., θ_p))."""
    maps = [t for t in all_maps(N) if not t.is_identity()]
    out_of = {}
    for t in maps:
        out_of.setdefault(t.source, []).append(t)
    chains = [(a, ()) for a in range(N + 1)]
    for _ in range(p):
        nxt = []
        for a, ts in chains:
            end = ts[-1].target if ts else a
            for t in out_of.get(end, ()):
                nxt.append((a, ts + (t,)))
                if len(nxt) > cap:
                    raise CapExceeded(f"more than {cap} chains of length {p}", partial=len(nxt))
        chains = nxt
    return chains


def _chain_end(c):
    a, ts = c
    return ts[-1].target if ts else a


def _cobar_faces(c):
    """Faces of a chain of length p+1 as (sign, chain, apply_last)."""
    a, ts = c
    p1 = len(ts)
    out = [(1, (ts[0].target, ts[1:]), None)]
    for i in range(1, p1):
        comp = compose(ts[i], ts[i - 1])
        if comp.is_identity():
            continue  # degenerate chain: normalized cochains vanish there
        out.append(((-1) ** i, (a, ts[:i - 1] + (comp,) + ts[i + 1:]), None))
    out.append(((-1) ** p1, (a, ts[:-1]), ts[-1]))
    return out


def cobar_cohomology(A, n, cap=10 ** 6):
    """H^n of the normalized cobar complex of A over Δ≤N.

    The cocycle lattice is cut down one target chain at a time, so no
    matrix with a row per (n+1)-chain is ever formed.
    """
    N = A.trunc
    if not 0 <= n <= N - 2:
        raise DegreeError(f"cobar comparison needs n <= N - 2 = {N - 2}")
    chains_n = nondegenerate_chains(N, n, cap)
    chains_up = nondegenerate_chains(N, n + 1, cap)
    groups_n = [A.levels[_chain_end(c)] for c in chains_n]
    Cn, off = direct_sum(groups_n)
    pos = {c: k for k, c in enumerate(chains_n)}
    g = Cn.ngens
    # lattice cutting is roughly cubic in g, so the budget bounds it too
    if g > cap:
        raise CapExceeded(f"{g} cochain generators in degree {n} exceed the budget {cap}")
    # per-chain blocks of the current lattice basis, rebuilt only when K changes
    cache = {"K": None, "blocks": None}

    def blocks_of(K):
        if cache["K"] is not K:
            blocks = []
            for k in range(len(chains_n)):
                a, b = off[k], off[k] + groups_n[k].ngens
                blocks.append([(j, col[a:b]) for j, col in enumerate(K) if any(col[a:b])])
            cache["K"], cache["blocks"] = K, blocks
        return cache["blocks"]

    def constraint(c):
        tgt = A.levels[_chain_end(c)]
        faces = [(sign, pos[face], A.apply(last) if last is not None else None)
                 for sign, face, last in _cobar_faces(c)]

        def apply(K):
            blocks = blocks_of(K)
            out = [[0] * tgt.ngens for _ in K]
            for sign, k, h in faces:
                for j, piece in blocks[k]:
                    img = h(piece) if h is not None else piece
                    v = out[j]
                    for r in range(tgt.ngens):
                        v[r] += sign * img[r]
            return out
        return apply, tgt

    K = cut_lattice(g, (constraint(c) for c in chains_up))
    # coboundaries from degree n - 1
    bcols = []
    if n >= 1:
        chains_lo = nondegenerate_chains(N, n - 1, cap)
        groups_lo = [A.levels[_chain_end(c)] for c in chains_lo]
        lo_pos = {c: k for k, c in enumerate(chains_lo)}
        _, lo_off = direct_sum(groups_lo)
        by_face = {}
        for c in chains_n:
            for sign, face, last in _cobar_faces(c):
                by_face.setdefault(face, []).append((sign, c, last))
        for face in chains_lo:
            G = groups_lo[lo_pos[face]]
            for j in range(G.ngens):
                col = [0] * g
                e = G.basis_vector(j)
                for sign, c, last in by_face.get(face, ()):
                    img = A.apply(last)(e) if last is not None else e
                    base = off[pos[c]]
                    for r, v in enumerate(img):
                        col[base + r] += sign * v
                bcols.append(col)
    solver = intmat.SpanSolver(K, g)
    rels = []
    for col in bcols + Cn.relations:
        y = solver.solve(col)
        if y is None:
            raise ValidationError("coboundary outside the cocycle lattice", law="δδ = 0")
        rels.append(y)
    H = FGAbGroup(len(K), rels)
    return canonical_form(H)[0]


class FreeDiagram:
    """Direct sum of representables Z Hom([a_g], -) on Δ≤N.

    The basis at level n is the list of pairs (g, θ) with θ: [a_g] -> [n].
    """

    def __init__(self, N, gens):
        self.N = N
        self.gens = list(gens)
        self.basis = []
        self.index = []
        for n in range(N + 1):
            b = [(g, t) for g, a in enumerate(self.gens) for t in monotone_maps(a, n)]
            self.basis.append(b)
            self.index.append({x: k for k, x in enumerate(b)})

    def rank(self, n):
        return len(self.basis[n])

    def act(self, theta, v):
        """Image under theta: [m] -> [n] of a vector at level m."""
        out = [0] * self.rank(theta.target)
        for (g, t), c in zip(self.basis[theta.source], v):
            if c:
                out[self.index[theta.target][(g, compose(theta, t))]] += c
        return out


class ConstantZ:
    def __init__(self, N):
        self.N = N

    def rank(self, n):
        return 1

    def act(self, theta, v):
        return list(v)


def _level_matrix(P, images, Q, n):
    """Level-n matrix of the map P -> Q sending generator g to images[g] in Q(a_g)."""
    cols = []
    for g, t in P.basis[n]:
        cols.append(Q.act(t, images[g]))
    return cols


def free_resolution(N, length):
    """Greedy free resolution P_length -> ... -> P_0 -> Z of the constant diagram.

    Returns a list of (FreeDiagram P_k, images) where images[g] is the value of
    the differential on generator g, an element of P_{k-1} (of Z for k = 0)
    at the generator's level.  At each step the kernel is computed levelwise
    and generators are added in increasing level until the subdiagram they
    generate is the whole kernel.
    """
    out = []
    Q = ConstantZ(N)
    P0 = FreeDiagram(N, [0])
    out.append((P0, [[1]]))
    prev, prev_img, prev_target = P0, [[1]], Q
    for _ in range(length):
        gens, images = [], []
        for n in range(N + 1):
            K = intmat.kernel(_level_matrix(prev, prev_img, prev_target, n), prev_target.rank(n))
            span = []
            for g, a in enumerate(gens):
                for t in monotone_maps(a, n):
                    span.append(prev.act(t, images[g]))
            solver = intmat.SpanSolver(span, prev.rank(n))
            for v in K:
                if not solver.contains(v):
                    gens.append(n)
                    images.append(v)
                    span.append(v)
                    solver = intmat.SpanSolver(span, prev.rank(n))
        P = FreeDiagram(N, gens)
        out.append((P, images))
        prev, prev_img, prev_target = P, images, prev
    return out


def resolution_cohomology(A, n):
    """Ext^n(Z, A) over Δ≤N through a greedy free resolution of Z.

    Hom(Z Hom([a], -), A) = A^a, so the cochains are direct sums of levels
    of A and the coboundary on a generator is read off from the resolution
    differential.
    """
    N = A.trunc
    if not 0 <= n <= N - 2:
        raise DegreeError(f"comparison needs n <= N - 2 = {N - 2}")
    res = free_resolution(N, n + 1)
    groups, diffs = [], []
    for k in range(n + 2):
        P, _ = res[k]
        groups.append(direct_sum([A.levels[a] for a in P.gens])[0])
    for k in range(n + 1):
        P, _ = res[k]
        P1, images = res[k + 1]
        blocks = {}
        for h, a1 in enumerate(P1.gens):
            for (g, t), c in zip(P.basis[a1], images[h]):
                if c:
                    f = A.apply(t).scaled(c)
                    blocks[(h, g)] = blocks[(h, g)] + f if (h, g) in blocks else f
        m = hom_from_blocks([A.levels[a] for a in P.gens], [A.levels[a] for a in P1.gens], blocks)
        diffs.append(AbHom(groups[k], groups[k + 1], m.matrix, check=False))
    C = CochainComplex(0, groups, diffs)
    return cohomology(C, n)


def derived_limit_cobar(A, n, method="cobar", cap=10 ** 6):
    """R lim^n of A over Δ≤N (n <= N - 2).

    ``method="cobar"`` uses the normalized cobar complex and raises
    CapExceeded when a chain set exceeds ``cap``; ``method="resolution"``
    uses a greedy free resolution of the constant diagram.
    """
    if method == "cobar":
        return cobar_cohomology(A, n, cap)
    if method == "resolution":
        return resolution_cohomology(A, n)
    raise ValueError(f"unknown method {method!r}")


# -- cosimplicial simplicial abelian groups ----------------------------------------

class TruncCosimpSimpAb(Cosimplicial):
    """Cosimplicial object in simplicial abelian groups: levels are TruncSimpAb."""

    def __init__(self, trunc, levels, cofaces, codegeneracies, check=True):
        self.trunc = trunc
        self.levels = list(levels)
        self.cofaces = dict(cofaces)
        self.codegeneracies = dict(codegeneracies)
        self.simp_trunc = levels[0].trunc
        if check:
            if any(L.trunc != self.simp_trunc for L in levels):
                raise ValidationError("levels have different simplicial truncations", law="truncation")
            self._check_identities()

    def _compose(self, g, f):
        return g @ f

    def _identity(self, n):
        L = self.levels[n]
        return SimpAbHom(L, L, [AbHom.identity(G) for G in L.levels], check=False)

    def _equal(self, a, b, n):
        return all(hom_equal(x, y) for x, y in zip(a.components, b.components))

    def simplicial_degree(self, m):
        """The cosimplicial abelian group of m-simplices."""
        return TruncCosimpAb(self.trunc, [L.levels[m] for L in self.levels],
                             {k: f.components[m] for k, f in self.cofaces.items()},
                             {k: f.components[m] for k, f in self.codegeneracies.items()},
                             check=False)


class CosimpSimpAbMap:
    def __init__(self, source, target, components, check=True):
        """``components[n]`` is a SimpAbHom source.levels[n] -> target.levels[n]."""
        self.source = source
        self.target = target
        self.components = list(components)
        if check:
            for (n, i), d in source.cofaces.items():
                for m in range(source.simp_trunc + 1):
                    if not hom_equal(self.components[n].components[m] @ d.components[m],
                                     target.cofaces[(n, i)].components[m] @ self.components[n - 1].components[m]):
                        raise ValidationError(f"map not natural for d^{i} into level {n}",
                                              law=f"d^{i} into level {n}")
            for (n, i), s in source.codegeneracies.items():
                for m in range(source.simp_trunc + 1):
                    if not hom_equal(self.components[n].components[m] @ s.components[m],
                                     target.codegeneracies[(n, i)].components[m] @ self.components[n + 1].components[m]):
                        raise ValidationError(f"map not natural for s^{i} into level {n}",
                                              law=f"s^{i} into level {n}")

    def simplicial_degree(self, m):
        return [c.components[m] for c in self.components]


def external_product(X, Y, G):
    """G[X^n × Y_m]: cosimplicial in n through X, simplicial in m through Y."""
    N, M = X.trunc, Y.trunc
    levels = []
    for n in range(N + 1):
        pts = [[(x, y) for x in X.levels[n] for y in Y.levels[m]] for m in range(M + 1)]
        groups = [_power(G, len(p)) for p in pts]
        faces = {(m, i): AbHom(groups[m], groups[m - 1],
                               _tensor_perm({(x, y): (x, t[y]) for x, y in pts[m]}, pts[m], pts[m - 1], G),
                               check=False)
                 for (m, i), t in Y.faces.items()}
        degens = {(m, i): AbHom(groups[m], groups[m + 1],
                                _tensor_perm({(x, y): (x, t[y]) for x, y in pts[m]}, pts[m], pts[m + 1], G),
                                check=False)
                  for (m, i), t in Y.degeneracies.items()}
        levels.append(TruncSimpAb(M, groups, faces, degens, check=False))

    def induced(table, src_n, tgt_n):
        comps = []
        for m in range(M + 1):
            src = [(x, y) for x in X.levels[src_n] for y in Y.levels[m]]
            tgt = [(x, y) for x in X.levels[tgt_n] for y in Y.levels[m]]
            comps.append(AbHom(levels[src_n].levels[m], levels[tgt_n].levels[m],
                               _tensor_perm({(x, y): (table[x], y) for x, y in src}, src, tgt, G), check=False))
        return SimpAbHom(levels[src_n], levels[tgt_n], comps, check=False)

    cof = {(n, i): induced(t, n - 1, n) for (n, i), t in X.cofaces.items()}
    cod = {(n, i): induced(t, n + 1, n) for (n, i), t in X.codegeneracies.items()}
    return TruncCosimpSimpAb(N, levels, cof, cod)


def external_product_map(f, g, G, source=None, target=None):
    """G[f × g] for a cosimplicial set map f and a simplicial set map g."""
    S = source or external_product(f.source, g.source, G)
    T = target or external_product(f.target, g.target, G)
    comps = []
    for n in range(S.trunc + 1):
        per = []
        for m in range(S.simp_trunc + 1):
            src = [(x, y) for x in f.source.levels[n] for y in g.source.levels[m]]
            tgt = [(x, y) for x in f.target.levels[n] for y in g.target.levels[m]]
            table = {(x, y): (f.levels[n][x], g.levels[m][y]) for x, y in src}
            per.append(AbHom(S.levels[n].levels[m], T.levels[n].levels[m],
                             _tensor_perm(table, src, tgt, G), check=False))
        comps.append(SimpAbHom(S.levels[n], T.levels[n], per, check=False))
    return CosimpSimpAbMap(S, T, comps)


def scale_map(A, k):
    """Multiplication by k on a TruncCosimpSimpAb."""
    comps = [SimpAbHom(L, L, [AbHom.identity(G).scaled(k) for G in L.levels], check=False) for L in A.levels]
    return CosimpSimpAbMap(A, A, comps)


def bk_fibration_check(f, report=False):
    """Surjectivity of A^{n+1}_m -> B^{n+1}_m ×_{M^nB_m} M^nA_m for 1 <= m <= M.

    Cosimplicial degree 0 is included with trivial matching groups, so
    there the condition is surjectivity of A^0_m -> B^0_m.  With
    ``report=True`` the failing (n + 1, m) pairs are returned as well.
    """
    A, B = f.source, f.target
    if (A.trunc, A.simp_trunc) != (B.trunc, B.simp_trunc):
        raise ValueError("truncations of source and target differ")
    failures = []
    for m in range(1, A.simp_trunc + 1):
        Am, Bm = A.simplicial_degree(m), B.simplicial_degree(m)
        fm = f.simplicial_degree(m)
        for n1 in range(A.trunc + 1):
            if n1 == 0:
                ok = is_surjective(fm[0])
            else:
                MA, MB = MatchingGroup(Am, n1), MatchingGroup(Bm, n1)
                # M^n f on ambient tuples, restricted to matching groups
                Mf_amb = hom_from_blocks([Am.levels[n1 - 1]] * n1, [Bm.levels[n1 - 1]] * n1,
                                         {(t, t): fm[n1 - 1] for t in range(n1)})
                Mf_amb = AbHom(MA.ambient, MB.ambient, Mf_amb.matrix, check=False)
                Mf = restrict(Mf_amb, MA.incl, MB.incl)
                # fibre product P = ker(B^{n1} ⊕ M^nA -> M^nB, (b, t) -> s_B b - Mf t)
                src, _ = direct_sum([Bm.levels[n1], MA.group])
                diff = hom_from_blocks([Bm.levels[n1], MA.group], [MB.group],
                                       {(0, 0): MB.s, (0, 1): -Mf})
                P, incl = kernel(AbHom(src, MB.group, diff.matrix, check=False))
                to_src = hom_from_blocks([Am.levels[n1]], [Bm.levels[n1], MA.group],
                                         {(0, 0): fm[n1], (1, 0): MA.s})
                to_src = AbHom(Am.levels[n1], src, to_src.matrix, check=False)
                lifter = Lifter(incl)
                cols = []
                for c in to_src.matrix:
                    y = lifter.lift(c)
                    if y is None:
                        raise ValidationError("map does not land in the fibre product", law="fibre product")
                    cols.append(y)
                ok = is_surjective(AbHom(Am.levels[n1], P, cols))
            if not ok:
                failures.append((n1, m))
    return (not failures, failures) if report else not failures
