"""Finitely generated abelian groups, homomorphisms and cochain cohomology.

A group is presented as ``Z^g / R`` where the columns of ``R`` are the
relations.  Elements are integer vectors of length ``g``; two vectors name
the same element when their difference lies in the column span of ``R``.

>>> G = FGAbGroup(2, [[2, 0], [0, 3]])
>>> G.invariants()
((6,), 0)
>>> str(G)
'ℤ/6'
>>> G.is_zero([4, 2])
False
>>> G.is_zero([4, 6])
True
"""

from __future__ import annotations

from functools import cached_property
from itertools import product
from math import prod

from . import intmat
from .errors import DegreeError, ValidationError


class FGAbGroup:
    """Finitely generated abelian group ``Z^g / span(relations)``."""

    def __init__(self, ngens, relations=()):
        self.ngens = int(ngens)
        rels = []
        for r in relations:
            r = [int(x) for x in r]
            if len(r) != self.ngens:
                raise ValueError(f"relation {r} has length {len(r)}, expected {self.ngens}")
            if any(r):
                rels.append(r)
        self.relations = rels

    # -- constructors -----------------------------------------------------

    @classmethod
    def free(cls, rank):
        return cls(rank, [])

    @classmethod
    def cyclic(cls, order):
        """``Z/order``; order 0 gives ``Z``."""
        return cls(1, [[order]] if order else [])

    @classmethod
    def trivial(cls):
        return cls(0, [])

    @classmethod
    def from_invariants(cls, torsion, free_rank=0):
        torsion = [t for t in torsion if t != 1]
        g = len(torsion) + free_rank
        rels = []
        for k, t in enumerate(torsion):
            col = [0] * g
            col[k] = t
            rels.append(col)
        return cls(g, rels)

    # -- Smith normal form data -------------------------------------------

    @cached_property
    def _snf(self):
        d, U, _V, Uinv = intmat.smith_normal_form(self.relations, self.ngens)
        return d, U, Uinv

    def _diag(self, i):
        d = self._snf[0]
        return d[i] if i < len(d) else 0

    @cached_property
    def _kept(self):
        """Coordinates of the SNF basis that carry a nontrivial cyclic factor."""
        return [i for i in range(self.ngens) if self._diag(i) != 1]

    def invariants(self):
        """(torsion invariant factors in divisibility order, free rank)."""
        d = self._snf[0]
        torsion = tuple(x for x in d if x > 1)
        return torsion, self.ngens - len(d)

    @property
    def free_rank(self):
        return self.invariants()[1]

    @property
    def torsion(self):
        return self.invariants()[0]

    def is_trivial(self):
        return self.invariants() == ((), 0)

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Group order; ``None`` for infinite groups."""
        t, f = self.invariants()
        return prod(t) if f == 0 else None

    def isomorphic(self, other):
        return self.invariants() == other.invariants()

    # -- elements ---------------------------------------------------------

    def _check_vec(self, x):
        if len(x) != self.ngens:
            raise ValueError(f"element {list(x)} has length {len(x)}, expected {self.ngens}")

    def normal_form(self, x):
        """Canonical coordinates of ``x`` along the nontrivial cyclic factors."""
        self._check_vec(x)
        U = self._snf[1]
        y = intmat.apply(U, x, self.ngens)
        out = []
        for i in self._kept:
            di = self._diag(i)
            out.append(y[i] % di if di else y[i])
        return tuple(out)

    def is_zero(self, x):
        return not any(self.normal_form(x))

    def equal(self, x, y):
        return self.is_zero([a - b for a, b in zip(x, y)])

    def elements(self):
        """All elements of a finite group, as integer vectors (one per class)."""
        t, f = self.invariants()
        if f:
            raise ValueError("group is infinite")
        Uinv = self._snf[2]
        kept = self._kept
        out = []
        for coords in product(*(range(self._diag(i)) for i in kept)):
            y = [0] * self.ngens
            for i, c in zip(kept, coords):
                y[i] = c
            out.append(intmat.apply(Uinv, y, self.ngens))
        return out

    def zero(self):
        return [0] * self.ngens

    def basis_vector(self, i):
        v = [0] * self.ngens
        v[i] = 1
        return v

    # -- misc ---------------------------------------------------------------

    def __str__(self):
        t, f = self.invariants()
        parts = []
        if f == 1:
            parts.append("ℤ")
        elif f > 1:
            parts.append(f"ℤ^{f}")
        parts.extend(f"ℤ/{x}" for x in t)
        return " ⊕ ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FGAbGroup({self.ngens}, {self.relations})"

    def to_json(self):
        return {"generators": self.ngens, "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["generators"], obj.get("relations", []))


def direct_sum(groups):
    """Direct sum; returns the group together with the generator offsets."""
    g = sum(G.ngens for G in groups)
    rels = []
    offsets = []
    off = 0
    for G in groups:
        offsets.append(off)
        for r in G.relations:
            col = [0] * g
            col[off:off + G.ngens] = r
            rels.append(col)
        off += G.ngens
    return FGAbGroup(g, rels), offsets


class AbHom:
    """Homomorphism given by the images of the source generators.

    ``matrix`` is a list of columns: column j is the image of generator j.
    Well-definedness is checked on construction.
    """

    def __init__(self, source, target, matrix, check=True):
        self.source = source
        self.target = target
        cols = [[int(x) for x in c] for c in matrix]
        if len(cols) != source.ngens or any(len(c) != target.ngens for c in cols):
            raise ValueError(
                f"matrix shape does not match {source.ngens} -> {target.ngens} generators")
        self.matrix = cols
        if check:
            for r in source.relations:
                if not target.is_zero(intmat.apply(cols, r, target.ngens)):
                    raise ValidationError("matrix does not respect the source relations",
                                          law="well-definedness")

    @classmethod
    def from_rows(cls, source, target, rows, check=True):
        return cls(source, target, intmat.from_rows(rows, source.ngens), check)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, intmat.zeros(target.ngens, source.ngens), check=False)

    @classmethod
    def identity(cls, G):
        return cls(G, G, intmat.identity(G.ngens), check=False)

    def __call__(self, x):
        return intmat.apply(self.matrix, x, self.target.ngens)

    def __matmul__(self, other):
        """Composite ``self o other``."""
        if other.target.ngens != self.source.ngens:
            raise ValueError("homomorphisms are not composable")
        return AbHom(other.source, self.target,
                     intmat.mul(self.matrix, other.matrix, self.target.ngens), check=False)

    def _same_shape(self, other):
        if (self.source.ngens, self.target.ngens) != (other.source.ngens, other.target.ngens):
            raise ValueError("shape mismatch")

    def __add__(self, other):
        self._same_shape(other)
        return AbHom(self.source, self.target, intmat.add(self.matrix, other.matrix), check=False)

    def __neg__(self):
        return AbHom(self.source, self.target, intmat.scale(self.matrix, -1), check=False)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return AbHom(self.source, self.target, intmat.scale(self.matrix, k), check=False)

    def is_zero(self):
        return all(self.target.is_zero(c) for c in self.matrix)

    def rows(self):
        return intmat.to_rows(self.matrix, self.target.ngens)

    def to_json(self):
        return {"matrix": self.rows()}

    @classmethod
    def from_json(cls, source, target, obj):
        return cls.from_rows(source, target, obj["matrix"])

    def __repr__(self):
        return f"AbHom({self.source.ngens}->{self.target.ngens}, rows={self.rows()})"


def hom_equal(f, g):
    """True iff f and g agree on every generator modulo the target relations."""
    f._same_shape(g)
    return all(f.target.equal(a, b) for a, b in zip(f.matrix, g.matrix))


def is_injective(f):
    return kernel(f)[0].is_trivial()


def is_surjective(f):
    return cokernel(f)[0].is_trivial()


def is_isomorphism(f):
    return is_injective(f) and is_surjective(f)


# -- subgroups, quotients and kernels ----------------------------------------

def _canonical_from(ngens, rels, gen_cols, ambient_rows):
    """Canonical presentation of ``Z^k / rels`` mapped into an ambient group.

    ``gen_cols`` gives the images in the ambient group of the k free
    generators.  Returns (canonical group, matrix of the new generators in
    the ambient group, matrix from Z^k coordinates to canonical coordinates).
    """
    d, U, _V, Uinv = intmat.smith_normal_form(rels, ngens)
    kept = [i for i in range(ngens) if (d[i] if i < len(d) else 0) != 1]
    torsion = [d[i] for i in kept if i < len(d)]
    nfree = len([i for i in kept if i >= len(d)])
    canon = FGAbGroup.from_invariants(torsion, nfree)
    images = [intmat.apply(gen_cols, Uinv[i], ambient_rows) for i in kept]
    U_rows = intmat.transpose(U, ngens)
    proj = [[U_rows[i][j] for i in kept] for j in range(ngens)]
    return canon, images, proj


def subgroup(G, gen_cols):
    """Subgroup generated by the given elements.

    Returns ``(S, incl)`` with ``S`` in canonical form and ``incl: S -> G``
    injective.
    """
    k = len(gen_cols)
    if k == 0:
        S = FGAbGroup.trivial()
        return S, AbHom(S, G, [], check=False)
    stacked = intmat.hstack(gen_cols, G.relations)
    ker = intmat.kernel(stacked, G.ngens)
    rels = [v[:k] for v in ker]
    S, images, _ = _canonical_from(k, rels, gen_cols, G.ngens)
    return S, AbHom(S, G, images, check=False)


def quotient(G, gen_cols):
    """``G`` modulo the subgroup generated by ``gen_cols``.

    Returns ``(Q, proj)`` with ``Q`` canonical and ``proj: G -> Q`` onto.
    """
    rels = intmat.hstack(G.relations, gen_cols)
    Q, _, proj = _canonical_from(G.ngens, rels, intmat.identity(G.ngens), G.ngens)
    return Q, AbHom(G, Q, proj, check=False)


def canonical_form(G):
    """Return ``(C, to_c, from_c)`` with ``C`` canonical and mutually inverse isomorphisms."""
    C, images, proj = _canonical_from(G.ngens, G.relations, intmat.identity(G.ngens), G.ngens)
    return C, AbHom(G, C, proj, check=False), AbHom(C, G, images, check=False)


def kernel(f):
    """Kernel of f as ``(K, incl)``."""
    G, H = f.source, f.target
    stacked = intmat.hstack(f.matrix, H.relations)
    ker = intmat.kernel(stacked, H.ngens)
    gens = [v[:G.ngens] for v in ker]
    return subgroup(G, gens)


def image(f):
    return subgroup(f.target, f.matrix)


def cokernel(f):
    return quotient(f.target, f.matrix)


class Lifter:
    """Express elements of ``G`` lying in the image of ``f: S -> G`` in S-coordinates."""

    def __init__(self, f):
        self.f = f
        self.k = f.source.ngens
        self.solver = intmat.SpanSolver(intmat.hstack(f.matrix, f.target.relations),
                                        f.target.ngens)

    def lift(self, x):
        y = self.solver.solve(x)
        return None if y is None else y[:self.k]

    def contains(self, x):
        return self.solver.contains(x)


def restrict(f, incl_src, incl_tgt):
    """Restriction of ``f`` to subgroups: ``g`` with ``incl_tgt o g = f o incl_src``.

    Raises ValidationError if ``f`` does not carry the source subgroup into
    the target subgroup.
    """
    lifter = Lifter(incl_tgt)
    cols = []
    for col in incl_src.matrix:
        y = lifter.lift(f(col))
        if y is None:
            raise ValidationError("homomorphism does not restrict to the subgroups",
                                  law="restriction")
        cols.append(y)
    return AbHom(incl_src.source, incl_tgt.source, cols)


def induced_on_quotients(f, proj_src, proj_tgt):
    """Map ``Q_src -> Q_tgt`` induced by ``f`` when both projections are onto."""
    src_lift = Lifter(proj_src)
    cols = []
    for i in range(proj_src.target.ngens):
        x = src_lift.lift(proj_src.target.basis_vector(i))
        cols.append(proj_tgt(f(x)))
    return AbHom(proj_src.target, proj_tgt.target, cols)


def hom_direct_sum(homs):
    """Block-diagonal sum of homomorphisms."""
    src, _ = direct_sum([h.source for h in homs])
    tgt, _ = direct_sum([h.target for h in homs])
    mat = intmat.block_diag([h.matrix for h in homs],
                            [(h.target.ngens, h.source.ngens) for h in homs])
    return AbHom(src, tgt, mat, check=False)


def hom_from_blocks(source_groups, target_groups, blocks):
    """Homomorphism between direct sums from a dict {(row, col): AbHom}."""
    src, soff = direct_sum(source_groups)
    tgt, toff = direct_sum(target_groups)
    cols = intmat.zeros(tgt.ngens, src.ngens)
    for (r, c), h in blocks.items():
        for j in range(source_groups[c].ngens):
            col = cols[soff[c] + j]
            for i, v in enumerate(h.matrix[j]):
                col[toff[r] + i] += v
    return AbHom(src, tgt, cols, check=False)


def change_basis(G, P):
    """Re-present G on new generators ``P`` (a unimodular column matrix).

    Returns ``(G2, iso: G2 -> G, inv: G -> G2)``; new generator j is the
    old element ``P[j]``.
    """
    n = G.ngens
    d, U, V, Uinv = intmat.smith_normal_form(P, n)
    if d != [1] * n:
        raise ValueError("change of basis is not unimodular")
    # P^{-1} = V U since U P V = I
    Pinv = intmat.mul(V, U, n)
    rels = [intmat.apply(Pinv, r, n) for r in G.relations]
    G2 = FGAbGroup(n, rels)
    return G2, AbHom(G2, G, [list(c) for c in P], check=False), AbHom(G, G2, Pinv, check=False)


# -- cochain complexes --------------------------------------------------------

class CochainComplex:
    """Cochain complex ``C^start -> C^{start+1} -> ...`` of finitely generated groups.

    ``differentials[k]`` maps ``groups[k]`` to ``groups[k+1]``.  The complex
    is not assumed to be zero outside the listed degrees: cohomology is only
    answered where both neighbours are known, unless ``bounded_below`` or
    ``bounded_above`` declare the missing neighbours to be zero.
    """

    def __init__(self, start, groups, differentials, bounded_below=True, bounded_above=False):
        self.start = start
        self.groups = list(groups)
        self.differentials = list(differentials)
        self.bounded_below = bounded_below
        self.bounded_above = bounded_above
        if len(self.differentials) != max(len(self.groups) - 1, 0):
            raise ValueError("need exactly one differential between consecutive groups")
        for k, d in enumerate(self.differentials):
            if d.source is not self.groups[k] and d.source.ngens != self.groups[k].ngens:
                raise ValueError(f"differential {k} has the wrong source")
        for k in range(len(self.differentials) - 1):
            comp = self.differentials[k + 1] @ self.differentials[k]
            if not comp.is_zero():
                n = self.start + k
                raise ValidationError(f"δ∘δ ≠ 0 from degree {n}", law=f"δ^{n + 1}δ^{n} = 0")

    @property
    def degrees(self):
        return range(self.start, self.start + len(self.groups))

    def group(self, n):
        return self.groups[n - self.start]

    def differential(self, n):
        """δ^n: C^n -> C^{n+1}, or None when it is outside the stored range."""
        k = n - self.start
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return None

    def cohomology_data(self, n):
        """Kernel, image and quotient data at degree n.

        Returns ``(H, incl_Z, proj)`` where ``incl_Z: Z -> C^n`` is the
        inclusion of cocycles and ``proj: Z -> H`` the quotient map.
        """
        if n not in self.degrees:
            raise DegreeError(f"degree {n} outside {self.degrees.start}..{self.degrees.stop - 1}")
        out = self.differential(n)
        if out is None and not (self.bounded_above and n == self.degrees.stop - 1):
            raise DegreeError(f"degree {n} lacks the outgoing differential")
        inc = self.differential(n - 1)
        if inc is None and not (self.bounded_below and n == self.start):
            raise DegreeError(f"degree {n} lacks the incoming differential")
        G = self.group(n)
        if out is None:
            Z, incl = subgroup(G, intmat.identity(G.ngens))
        else:
            Z, incl = kernel(out)
        if inc is None:
            bcols = []
        else:
            lifter = Lifter(incl)
            bcols = []
            for col in inc.matrix:
                y = lifter.lift(col)
                if y is None:
                    raise ValidationError("image of δ not inside the kernel", law="δδ = 0")
                bcols.append(y)
        H, proj = quotient(Z, bcols)
        return H, incl, proj


def cohomology(C, n):
    """``ker δ^n / im δ^{n-1}`` in canonical form."""
    return C.cohomology_data(n)[0]


def induced_on_cohomology(phi, C, D, n):
    """Map H^n(C) -> H^n(D) induced by the degree-n component ``phi``."""
    HC, inclC, projC = C.cohomology_data(n)
    HD, inclD, projD = D.cohomology_data(n)
    lift_proj = Lifter(projC)
    lift_Z = Lifter(inclD)
    cols = []
    for i in range(HC.ngens):
        z = lift_proj.lift(HC.basis_vector(i))
        image_in_D = phi(inclC(z))
        w = lift_Z.lift(image_in_D)
        if w is None:
            raise ValidationError("map does not carry cocycles to cocycles", law="chain map")
        cols.append(projD(w))
    return AbHom(HC, HD, cols)


class NNChainComplex:
    """Chain complex ``C_0 <- C_1 <- ... <- C_top`` with degree -1 boundaries.

    ``boundaries[k-1]`` is ∂_k: C_k -> C_{k-1}.  When ``bounded`` is true
    the complex is zero above ``top``; otherwise degree ``top`` is the last
    one known and homology is only answered below it.
    """

    def __init__(self, groups, boundaries, bounded=True):
        self.groups = list(groups)
        self.boundaries = list(boundaries)
        self.bounded = bounded
        top = len(self.groups) - 1
        # reindex as a cochain complex in degrees -top..0
        self._cochain = CochainComplex(
            -top, self.groups[::-1], self.boundaries[::-1],
            bounded_below=bounded, bounded_above=True)

    @property
    def top(self):
        return len(self.groups) - 1

    def group(self, k):
        return self.groups[k]

    def boundary(self, k):
        """∂_k: C_k -> C_{k-1} for 1 <= k <= top."""
        return self.boundaries[k - 1]

    def homology_data(self, k):
        """``(H, incl_Z, proj)`` at degree k; see :meth:`CochainComplex.cohomology_data`."""
        if k < 0 or k > self.top:
            raise DegreeError(f"degree {k} outside 0..{self.top}")
        return self._cochain.cohomology_data(-k)

    def homology(self, k):
        return self.homology_data(k)[0]

    def valid_degrees(self):
        return range(0, self.top + 1 if self.bounded else self.top)

    def __repr__(self):
        return f"NNChainComplex(gens={[G.ngens for G in self.groups]}, bounded={self.bounded})"


def induced_on_homology(phi, C, D, k):
    """Map H_k(C) -> H_k(D) induced by the degree-k component ``phi``."""
    return induced_on_cohomology(phi, C._cochain, D._cochain, -k)
