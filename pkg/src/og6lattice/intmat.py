"""Exact integer and rational matrix helpers.

Matrices are lists (or tuples) of rows.  Nothing here ever touches floating
point; entries are Python ints or :class:`fractions.Fraction`.
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def bareiss_det(m):
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate quotient is exact, so the entries stay integers.
    """
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def rational_inverse(m):
    """Inverse over Q by Gauss-Jordan elimination; raises on singular input."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def smith(m):
    """Smith normal form with transforms.

    Returns ``(u, d, v)`` with ``u * m * v == d``, ``u`` and ``v`` unimodular,
    ``d`` diagonal (rectangular shapes allowed) with nonnegative entries
    forming a divisibility chain.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def row_span_basis(gens, dim):
    """A Z-basis (as rows) of the row span of integer vectors ``gens``."""
    if not gens:
        return []
    u, d, v = smith(gens)
    vinv = rational_inverse(v)
    basis = []
    for i in range(min(len(gens), dim)):
        if d[i][i] == 0:
            break
        basis.append([int(d[i][i] * x) for x in vinv[i]])
    return basis


def integer_kernel(row):
    """Columns spanning ``{x in Z^n : row . x == 0}``, returned as a list of vectors."""
    n = len(row)
    if all(x == 0 for x in row):
        return [[int(i == j) for i in range(n)] for j in range(n)]
    _, _, v = smith([list(row)])
    return [[v[i][j] for i in range(n)] for j in range(1, n)]


def kernel_basis(rows, n):
    """Z-basis of ``{x in Z^n : r . x == 0 for every row r}``; saturated by construction."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    _, d, v = smith(rows)
    rank = sum(1 for i in range(min(len(rows), n)) if d[i][i])
    return [[v[i][j] for i in range(n)] for j in range(rank, n)]


def kernel_mod2(m):
    """Basis of the kernel of the integer matrix ``m`` reduced mod 2, as 0/1 vectors."""
    n = len(m[0]) if m else 0
    a = [[x % 2 for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                a[i] = [(x + y) % 2 for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = a[i][f] % 2
        basis.append(vec)
    return basis


def vec_gcd(values):
    g = 0
    for x in values:
        g = gcd(g, x)
    return g
