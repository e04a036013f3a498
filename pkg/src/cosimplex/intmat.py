"""Dense integer matrices stored column by column.

A matrix with ``nrows`` rows is a list of columns, each a list of ``nrows``
Python ints.  Keeping the row count explicit lets zero-column and zero-row
matrices carry their shape.  All arithmetic is exact.
"""

from math import gcd


def identity(n):
    return [[int(i == j) for i in range(n)] for j in range(n)]


def zeros(nrows, ncols):
    return [[0] * nrows for _ in range(ncols)]


def apply(cols, x, nrows):
    """Matrix times vector."""
    out = [0] * nrows
    for c, xi in zip(cols, x):
        if xi:
            for i, v in enumerate(c):
                if v:
                    out[i] += xi * v
    return out


def mul(a, b, nrows_a):
    """a times b, where a has ``nrows_a`` rows."""
    return [apply(a, col, nrows_a) for col in b]


def transpose(cols, nrows):
    return [[c[i] for c in cols] for i in range(nrows)]


def from_rows(rows, ncols=None):
    """Column list from a row-major nested list."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return [[r[j] for r in rows] for j in range(ncols)]


def to_rows(cols, nrows):
    return transpose(cols, nrows)


def add(a, b):
    return [[x + y for x, y in zip(ca, cb)] for ca, cb in zip(a, b)]


def scale(a, k):
    return [[k * x for x in c] for c in a]


def hstack(*blocks):
    out = []
    for b in blocks:
        out.extend(list(c) for c in b)
    return out


def vstack(blocks, ncols):
    """Stack blocks vertically; every block must have ``ncols`` columns."""
    return [sum((list(b[j]) for b in blocks), []) for j in range(ncols)]


def block_diag(blocks, shapes):
    """Block-diagonal matrix; ``shapes`` lists (nrows, ncols) per block."""
    total = sum(r for r, _ in shapes)
    out = []
    off = 0
    for b, (r, c) in zip(blocks, shapes):
        for j in range(c):
            col = [0] * total
            col[off:off + r] = b[j]
            out.append(col)
        off += r
    return out


def determinant(cols):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(cols)
    if n == 0:
        return 1
    a = transpose(cols, n)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def column_echelon(cols, nrows):
    """Integer column echelon form.

    Returns ``(E, V, pivots)`` with ``E = A V``, ``V`` unimodular, the first
    ``r = len(pivots)`` columns of ``E`` nonzero with strictly increasing
    pivot rows and positive pivots, and the remaining columns zero.  Column k
    vanishes in every row above ``pivots[k]``.  The trailing columns of ``V``
    form a basis of the integer kernel of ``A``.
    """
    E = [list(c) for c in cols]
    n = len(E)
    V = identity(n)
    pivots = []
    r = 0
    for row in range(nrows):
        if r == n:
            break
        while True:
            nz = [j for j in range(r, n) if E[j][row]]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(E[j][row]))
            if p != r:
                E[p], E[r] = E[r], E[p]
                V[p], V[r] = V[r], V[p]
            piv = E[r][row]
            clean = True
            for j in range(r + 1, n):
                v = E[j][row]
                if v:
                    q = v // piv
                    Ej, Er = E[j], E[r]
                    for t in range(row, nrows):
                        if Er[t]:
                            Ej[t] -= q * Er[t]
                    Vj, Vr = V[j], V[r]
                    for t in range(n):
                        if Vr[t]:
                            Vj[t] -= q * Vr[t]
                    if Ej[row]:
                        clean = False
            if clean:
                break
        if r < n and E[r][row]:
            if E[r][row] < 0:
                E[r] = [-x for x in E[r]]
                V[r] = [-x for x in V[r]]
            pivots.append(row)
            r += 1
    return E, V, pivots


class SpanSolver:
    """Decide membership in the integer column span of a matrix and solve.

    ``solve(x)`` returns integer coefficients ``y`` with ``A y = x`` or
    ``None`` when ``x`` is not in the span.
    """

    def __init__(self, cols, nrows):
        self.nrows = nrows
        self.ncols = len(cols)
        self.E, self.V, self.pivots = column_echelon(cols, nrows)
        self.rank = len(self.pivots)

    def coefficients(self, x):
        res = list(x)
        coeffs = []
        for k, row in enumerate(self.pivots):
            piv = self.E[k][row]
            if res[row] % piv:
                return None
            c = res[row] // piv
            coeffs.append(c)
            if c:
                Ek = self.E[k]
                for t in range(row, self.nrows):
                    if Ek[t]:
                        res[t] -= c * Ek[t]
        if any(res):
            return None
        return coeffs

    def solve(self, x):
        c = self.coefficients(x)
        if c is None:
            return None
        y = [0] * self.ncols
        for k, ck in enumerate(c):
            if ck:
                Vk = self.V[k]
                for t in range(self.ncols):
                    if Vk[t]:
                        y[t] += ck * Vk[t]
        return y

    def contains(self, x):
        return self.coefficients(x) is not None

    def kernel(self):
        return [list(v) for v in self.V[self.rank:]]


def kernel(cols, nrows):
    """Basis (as columns) of the integer kernel of the matrix."""
    return SpanSolver(cols, nrows).kernel()


def smith_normal_form(cols, nrows):
    """Smith normal form with transforms.

    Returns ``(d, U, V, Uinv)`` where ``d`` lists the nonzero diagonal
    entries ``d_1 | d_2 | ...`` (all positive) and ``U A V = S`` with
    ``S`` the ``nrows x ncols`` diagonal matrix carrying ``d``.  ``U``,
    ``V``, ``Uinv`` are column lists; ``Uinv`` is the inverse of ``U``.
    """
    m, n = nrows, len(cols)
    A = [[cols[j][i] for j in range(n)] for i in range(m)]  # row-major work copy
    U = [[int(i == j) for j in range(m)] for i in range(m)]  # row-major
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]  # row-major
    V = [[int(i == j) for j in range(n)] for i in range(n)]  # row-major

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, q):
        # row_i += q row_j
        Ai, Aj = A[i], A[j]
        for t in range(n):
            if Aj[t]:
                Ai[t] += q * Aj[t]
        Ui_, Uj = U[i], U[j]
        for t in range(m):
            if Uj[t]:
                Ui_[t] += q * Uj[t]
        for row in Ui:
            if row[i]:
                row[j] -= q * row[i]

    def col_add(i, j, q):
        # col_i += q col_j
        for row in A:
            if row[j]:
                row[i] += q * row[j]
        for row in V:
            if row[j]:
                row[i] += q * row[j]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    d = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        while True:
            done = True
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // piv))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // piv))
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t onto the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    row_swap(i, t)
                if j != t:
                    col_swap(j, t)
                continue
            piv = A[t][t]
            bad = None
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            row_neg(t)
        d.append(A[t][t])
        t += 1
    Ucols = [[U[i][j] for i in range(m)] for j in range(m)]
    Uicols = [[Ui[i][j] for i in range(m)] for j in range(m)]
    Vcols = [[V[i][j] for i in range(n)] for j in range(n)]
    return d, Ucols, Vcols, Uicols


def diagonal_gcd_check(d):
    """True iff each entry divides the next."""
    return all(d[k + 1] % d[k] == 0 for k in range(len(d) - 1))


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
