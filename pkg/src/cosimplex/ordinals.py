"""Order-preserving maps between finite ordinals [n] = {0, 1, ..., n}.

A map theta: [m] -> [n] is an :class:`OrdMap` holding the tuple of images
and the target ``n``.  Elementary maps are written as triples

* ``("d", n, i)`` for the coface d^i: [n-1] -> [n], which skips i,
* ``("s", n, i)`` for the codegeneracy s^i: [n+1] -> [n], which repeats i,

so the middle entry is always the *target* ordinal.  :func:`factor` writes
any map as such a word, in the order the maps are applied.

>>> factor(OrdMap((0, 0, 2), 2))
[('s', 1, 0), ('d', 2, 1)]
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from typing import NamedTuple


class OrdMap(NamedTuple):
    images: tuple
    target: int

    @property
    def source(self):
        return len(self.images) - 1

    def __call__(self, i):
        return self.images[i]

    def is_identity(self):
        return self.source == self.target and all(v == i for i, v in enumerate(self.images))

    def is_injective(self):
        return len(set(self.images)) == len(self.images)

    def is_surjective(self):
        return len(set(self.images)) == self.target + 1


def identity(n):
    return OrdMap(tuple(range(n + 1)), n)


def coface(n, i):
    """d^i: [n-1] -> [n], the injection missing i."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"no coface d^{i} into [{n}]")
    return OrdMap(tuple(j if j < i else j + 1 for j in range(n)), n)


def codegeneracy(n, i):
    """s^i: [n+1] -> [n], the surjection hitting i twice."""
    if not 0 <= i <= n:
        raise ValueError(f"no codegeneracy s^{i} onto [{n}]")
    return OrdMap(tuple(j if j <= i else j - 1 for j in range(n + 2)), n)


def elementary(op):
    kind, n, i = op
    return coface(n, i) if kind == "d" else codegeneracy(n, i)


def compose(g, f):
    """g after f."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    return OrdMap(tuple(g.images[v] for v in f.images), g.target)


@lru_cache(maxsize=None)
def monotone_maps(m, n):
    """All order-preserving maps [m] -> [n], in lexicographic order."""
    return tuple(OrdMap(c, n) for c in combinations_with_replacement(range(n + 1), m + 1))


@lru_cache(maxsize=None)
def all_maps(N):
    """Every morphism of the truncated category with objects [0..N]."""
    return tuple(t for m in range(N + 1) for n in range(N + 1) for t in monotone_maps(m, n))


def surjections(m, k):
    return tuple(t for t in monotone_maps(m, k) if t.is_surjective())


def epi_mono(theta):
    """Return (sigma, delta) with theta = delta o sigma, sigma onto, delta into."""
    vals = sorted(set(theta.images))
    rank = {v: r for r, v in enumerate(vals)}
    k = len(vals) - 1
    sigma = OrdMap(tuple(rank[v] for v in theta.images), k)
    delta = OrdMap(tuple(vals), theta.target)
    return sigma, delta


def factor(theta):
    """Elementary word for theta, listed in order of application.

    Codegeneracies come first (largest repeated index peeled first), then
    cofaces (largest missed value peeled last), which makes the word unique.
    """
    sigma, delta = epi_mono(theta)
    ops = []
    cur = sigma
    while cur.source > cur.target:
        j = max(p for p in range(cur.source) if cur.images[p] == cur.images[p + 1])
        ops.append(("s", cur.source - 1, j))
        cur = OrdMap(cur.images[: j + 1] + cur.images[j + 2:], cur.target)
    tail = []
    cur = delta
    while cur.target > cur.source:
        i = max(v for v in range(cur.target + 1) if v not in cur.images)
        tail.append(("d", cur.target, i))
        cur = OrdMap(tuple(v if v < i else v - 1 for v in cur.images), cur.target - 1)
    return ops + tail[::-1]


def apply_word(word, m):
    cur = identity(m)
    for op in word:
        cur = compose(elementary(op), cur)
    return cur


# Identity suites.  Each entry is (name, start level, lhs word, rhs word);
# words are in application order, the empty word is the identity.

def cosimplicial_identities(N):
    out = []
    # d^j d^i = d^i d^{j-1}, i < j, starting at level n-1 with n+1 <= N
    for n in range(1, N):
        for j in range(n + 2):
            for i in range(j):
                out.append((f"d^{j}d^{i} = d^{i}d^{j - 1} on level {n - 1}", n - 1,
                            [("d", n, i), ("d", n + 1, j)], [("d", n, j - 1), ("d", n + 1, i)]))
    # s^j s^i = s^i s^{j+1}, i <= j, starting at level n+2
    for n in range(0, N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                out.append((f"s^{j}s^{i} = s^{i}s^{j + 1} on level {n + 2}", n + 2,
                            [("s", n + 1, i), ("s", n, j)], [("s", n + 1, j + 1), ("s", n, i)]))
    # s^j d^i, starting at level n, through level n+1
    for n in range(0, N):
        for i in range(n + 2):
            for j in range(n + 1):
                lhs = [("d", n + 1, i), ("s", n, j)]
                if i < j:
                    rhs = [("s", n - 1, j - 1), ("d", n, i)]
                    name = f"s^{j}d^{i} = d^{i}s^{j - 1} on level {n}"
                elif i == j or i == j + 1:
                    rhs = []
                    name = f"s^{j}d^{i} = id on level {n}"
                else:
                    rhs = [("s", n - 1, j), ("d", n, i - 1)]
                    name = f"s^{j}d^{i} = d^{i - 1}s^{j} on level {n}"
                out.append((name, n, lhs, rhs))
    return out


def simplicial_identities(M):
    """Simplicial identities; words list face/degeneracy maps in order of application.

    ``("d", m, i)`` here means d_i: X_m -> X_{m-1} and ``("s", m, i)`` means
    s_i: X_m -> X_{m+1}; the middle entry is the *source* level.
    """
    out = []
    for m in range(2, M + 1):
        for j in range(m + 1):
            for i in range(j):
                out.append((f"d_{i}d_{j} = d_{j - 1}d_{i} on level {m}", m,
                            [("d", m, j), ("d", m - 1, i)], [("d", m, i), ("d", m - 1, j - 1)]))
    for m in range(0, M - 1):
        for j in range(m + 1):
            for i in range(j + 1):
                out.append((f"s_{i}s_{j} = s_{j + 1}s_{i} on level {m}", m,
                            [("s", m, j), ("s", m + 1, i)], [("s", m, i), ("s", m + 1, j + 1)]))
    for m in range(0, M):
        for j in range(m + 1):
            for i in range(m + 2):
                lhs = [("s", m, j), ("d", m + 1, i)]
                if i < j:
                    rhs = [("d", m, i), ("s", m - 1, j - 1)]
                    name = f"d_{i}s_{j} = s_{j - 1}d_{i} on level {m}"
                elif i == j or i == j + 1:
                    rhs = []
                    name = f"d_{i}s_{j} = id on level {m}"
                else:
                    rhs = [("d", m, i - 1), ("s", m - 1, j)]
                    name = f"d_{i}s_{j} = s_{j}d_{i - 1} on level {m}"
                out.append((name, m, lhs, rhs))
    return out


def simplicial_word(theta):
    """Face/degeneracy word computing X(theta): X_n -> X_m for theta: [m] -> [n].

    Uses source-level conventions of :func:`simplicial_identities`.
    """
    word = []
    for kind, n, i in reversed(factor(theta)):
        if kind == "d":
            word.append(("d", n, i))
        else:
            word.append(("s", n, i))
    return word
