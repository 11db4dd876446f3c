"""Even nondegenerate integer lattices given by Gram matrices."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import NamedTuple, Optional

from .errors import LatticeError
from .intmat import bareiss_det, dot, matvec, vec_gcd

DEFAULT_BOUND = 6


class Signature(NamedTuple):
    pos: int
    neg: int

    def __add__(self, other):
        return Signature(self.pos + other.pos, self.neg + other.neg)

    def swapped(self):
        return Signature(self.neg, self.pos)


@dataclass(frozen=True)
class Lattice:
    """An even nondegenerate lattice, stored as its Gram matrix in a fixed basis."""

    gram: tuple
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise LatticeError("Gram matrix is not square")
        for i in range(n):
            if g[i][i] % 2:
                raise LatticeError(f"odd diagonal entry {g[i][i]}: lattice is not even")
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("Gram matrix is not symmetric")
        if bareiss_det(g) == 0:
            raise LatticeError("degenerate Gram matrix")

    @property
    def rank(self):
        return len(self.gram)

    def __str__(self):
        return self.label or f"Lattice(rank={self.rank})"


# Vectors are plain tuples of ints in the lattice basis.
LatticeVector = tuple


def _block_diag(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def _cartan_from_edges(n, edges):
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return g


_U = ((0, 1), (1, 0))
# Rank-2 forms pinned by enumeration: the lexicographically smallest even
# Gram matrix (row-major) with |entries| <= 4 of the required signature and
# determinant.  Binary forms of discriminant 5 and -7 have class number one.
_H5 = ((-2, -3), (-3, -2))
_K7 = ((-4, -3), (-3, -4))


def _ade(kind, n):
    if kind == "A":
        if n < 1:
            raise LatticeError("A(n) needs n >= 1")
        return _cartan_from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "D":
        if n < 4:
            raise LatticeError("D(n) needs n >= 4")
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        return _cartan_from_edges(n, edges)
    if kind == "E":
        if n not in (6, 7, 8):
            raise LatticeError(f"E({n}) does not exist; use n in 6, 7, 8")
        # chain 0-1-...-(n-2), branch node n-1 attached to node 2
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
        return _cartan_from_edges(n, edges)
    raise LatticeError(f"unknown ADE type {kind!r}")


def make_named(name, *params):
    """Build one of the standard lattices.

    ``U`` (optionally ``U(n)``), the negative definite root lattices ``A``,
    ``D``, ``E`` (``make_named("A", 2)``), ``rank1`` (``[m]``), ``h5``, ``K7``,
    ``OG6`` (``U^3 + [-2]^2``), ``Mukai`` (``U^4`` in the (r, l, s) basis) and
    ``Lambda10`` (``U^5``).
    """
    if name == "U":
        if not params:
            return Lattice(_U, "U")
        (n,) = params
        return twist(Lattice(_U, "U"), n)
    if name in ("A", "D", "E"):
        (n,) = params
        return Lattice(_ade(name, n), f"{name}({n})")
    if name == "rank1":
        (m,) = params
        if m % 2:
            raise LatticeError(f"[{m}] is odd")
        if m == 0:
            raise LatticeError("[0] is degenerate")
        return Lattice(((m,),), f"[{m}]")
    if name == "h5":
        return Lattice(_H5, "h5")
    if name == "K7":
        return Lattice(_K7, "K7")
    if name == "OG6":
        return Lattice(_block_diag(_U, _U, _U, [[-2]], [[-2]]), "OG6")
    if name in ("Mukai", "Lambda8"):
        # basis (r, l_1..l_6, s): l . l' from H^2 = U^3, and r . s = -1
        g = [[0] * 8 for _ in range(8)]
        for i, row in enumerate(_block_diag(_U, _U, _U)):
            g[i + 1][1:7] = row
        g[0][7] = g[7][0] = -1
        return Lattice(g, "Mukai")
    if name == "Lambda10":
        return Lattice(_block_diag(_U, _U, _U, _U, _U), "Lambda10")
    raise LatticeError(f"unknown lattice name {name!r}")


def zero_lattice():
    return Lattice((), "0")


def direct_sum(a, b):
    label = None
    if a.label and b.label:
        label = f"{a.label} + {b.label}"
    return Lattice(_block_diag(a.gram, b.gram), label)


def direct_sum_all(lattices):
    lattices = list(lattices)
    if not lattices:
        return zero_lattice()
    out = lattices[0]
    for l in lattices[1:]:
        out = direct_sum(out, l)
    return out


def twist(l, n):
    """``L(n)``: same module, form multiplied by ``n``."""
    if n == 0:
        raise LatticeError("twist by 0 is degenerate")
    label = f"({l.label})({n})" if l.label else None
    return Lattice([[n * x for x in row] for row in l.gram], label)


def determinant(l):
    return bareiss_det(l.gram)


def signature(l):
    """Exact signature by symmetric congruence diagonalization over Q."""
    a = [[Fraction(x) for x in row] for row in l.gram]
    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is not None:
            piv = a[k][k]
            if piv > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            a = [[a[i][j] - a[i][k] * a[k][j] / piv for j in rest] for i in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            raise LatticeError("degenerate Gram matrix")
        # [[0, c], [c, 0]] is a hyperbolic block: one positive, one negative square.
        i, j = pair
        c = a[i][j]
        pos += 1
        neg += 1
        rest = [r for r in range(n) if r not in (i, j)]
        # Schur complement with block inverse [[0, 1/c], [1/c, 0]]
        a = [[a[r][s] - (a[r][i] * a[j][s] + a[r][j] * a[i][s]) / c for s in rest]
             for r in rest]
    return Signature(pos, neg)


def _check_vec(l, v):
    if len(v) != l.rank:
        raise LatticeError(f"vector of length {len(v)} in a rank {l.rank} lattice")


def inner(l, v, w):
    _check_vec(l, v)
    _check_vec(l, w)
    return dot(v, matvec(l.gram, w))


def norm(l, v):
    return inner(l, v, v)


def divisibility(l, v):
    """gcd of the pairings of ``v`` with the whole lattice."""
    _check_vec(l, v)
    if not any(v):
        raise LatticeError("divisibility of the zero vector")
    return vec_gcd(matvec(l.gram, v))


def _canonical_sign(v):
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def vectors_of_norm(l, n, bound=DEFAULT_BOUND):
    """All nonzero ``v`` with entries in ``[-bound, bound]`` and ``v.v == n``, up to sign.

    The last coordinate is solved for exactly, so the scan costs
    ``(2 * bound + 1) ** (rank - 1)`` evaluations.
    """
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    r = l.rank
    if r == 0:
        return []
    g = l.gram
    last = r - 1
    c = g[last][last]
    col = [g[i][last] for i in range(last)]
    sub = [row[:last] for row in g[:last]]
    found = set()
    rng = range(-bound, bound + 1)
    for head in product(rng, repeat=last):
        lin = dot(col, head)
        quad = dot(head, matvec(sub, head)) if last else 0
        # c t^2 + 2 lin t + (quad - n) == 0
        if c == 0:
            if lin == 0:
                ts = rng if quad == n else ()
            else:
                num = n - quad
                ts = (num // (2 * lin),) if num % (2 * lin) == 0 else ()
        else:
            disc = lin * lin - c * (quad - n)
            if disc < 0:
                continue
            s = isqrt(disc)
            if s * s != disc:
                continue
            ts = {t for t in ((-lin + s), (-lin - s)) if t % c == 0}
            ts = {t // c for t in ts}
        for t in ts:
            if -bound <= t <= bound:
                v = head + (t,)
                if any(v):
                    found.add(_canonical_sign(v))
    return sorted(found)
