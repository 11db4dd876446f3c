"""Discriminant groups and finite quadratic forms.

Elements of a finite form are tuples of integers reduced modulo the cyclic
factor orders.  Quadratic values live in Q/2Z (normalized to [0, 2)) and
bilinear values in Q/Z (normalized to [0, 1)).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import NamedTuple, Optional

from .errors import LatticeError, UndecidedError
from .intmat import bareiss_det, matmul, rational_inverse, row_span_basis, smith
from .lattice import Signature, signature

BRUTE_FORCE_CUTOFF = 256


def mod2(x):
    return Fraction(x) % 2


def mod1(x):
    return Fraction(x) % 1


class SmithDecomposition(NamedTuple):
    u: list
    d: list
    v: list

    @property
    def diagonal(self):
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0))]


def smith_decomposition(m):
    """``u * m * v == d`` with ``d`` diagonal in divisibility-chain order."""
    if any(len(row) != len(m) for row in m):
        raise LatticeError("smith() expects a square matrix")
    return SmithDecomposition(*smith(m))


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple
    qvals: tuple
    bform: tuple
    # rational lifts of the generators in the source lattice basis, if any
    lifts: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        object.__setattr__(self, "qvals", tuple(mod2(x) for x in self.qvals))
        object.__setattr__(self, "bform",
                           tuple(tuple(mod1(x) for x in row) for row in self.bform))

    @property
    def size(self):
        return prod(self.orders)

    @property
    def ngens(self):
        return len(self.orders)

    def zero(self):
        return (0,) * len(self.orders)

    def gen(self, i):
        return tuple(int(i == j) for j in range(len(self.orders)))

    def elements(self):
        return product(*(range(n) for n in self.orders))

    def reduce(self, x):
        return tuple(int(a) % n for a, n in zip(x, self.orders))

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def scale(self, k, x):
        return tuple((k * a) % n for a, n in zip(x, self.orders))

    def neg(self, x):
        return self.scale(-1, x)

    def element_order(self, x):
        o = 1
        for a, n in zip(x, self.orders):
            o = o * (n // gcd(a, n)) // gcd(o, n // gcd(a, n))
        return o

    def q(self, x):
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                s += a * a * self.qvals[i]
                for j in range(i + 1, len(x)):
                    if x[j]:
                        s += 2 * a * x[j] * self.bform[i][j]
        return s % 2

    def b(self, x, y):
        s = Fraction(0)
        for i, a in enumerate(x):
            if a:
                for j, c in enumerate(y):
                    if c:
                        s += a * c * self.bform[i][j]
        return s % 1

    def span(self, gens):
        """All elements of the subgroup generated by ``gens``."""
        seen = {self.zero()}
        frontier = [self.zero()]
        gens = [self.reduce(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def check_axioms(self):
        """q/b compatibility and order annihilation on all generator pairs."""
        k = len(self.orders)
        for i in range(k):
            gi = self.gen(i)
            for j in range(k):
                gj = self.gen(j)
                if (self.orders[i] * self.bform[i][j]) % 1:
                    return False
                if self.bform[i][j] != self.bform[j][i]:
                    return False
                lhs = (self.q(self.add(gi, gj)) - self.q(gi) - self.q(gj)) % 2
                if lhs != (2 * self.b(gi, gj)) % 2:
                    return False
            if (self.qvals[i] - self.bform[i][i]) % 1:
                return False
        return True


def orthogonal_elements(f, gens):
    """Elements of ``f`` orthogonal under ``b`` to every element of ``gens``."""
    gens = [f.reduce(g) for g in gens]
    if not gens:
        return list(f.elements())
    den = 1
    for row in f.bform:
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
    # pairing of generator i with each gluing vector, scaled to integers mod den
    cols = [[int(sum(f.bform[i][j] * c for j, c in enumerate(w)) * den) % den for w in gens]
            for i in range(f.ngens)]
    out = []
    for z in f.elements():
        acc = [0] * len(gens)
        for i, a in enumerate(z):
            if a:
                row = cols[i]
                for t in range(len(gens)):
                    acc[t] += a * row[t]
        if all(x % den == 0 for x in acc):
            out.append(z)
    return out


def trivial_form():
    return FiniteQuadraticForm((), (), ())


def negate(f):
    """The form ``-q`` on the same group (the discriminant form of ``L(-1)``)."""
    return FiniteQuadraticForm(f.orders, tuple(-x for x in f.qvals),
                               tuple(tuple(-x for x in row) for row in f.bform), f.lifts)


def orthogonal_sum(f, g):
    k, m = f.ngens, g.ngens
    b = [[Fraction(0)] * (k + m) for _ in range(k + m)]
    for i in range(k):
        for j in range(k):
            b[i][j] = f.bform[i][j]
    for i in range(m):
        for j in range(m):
            b[k + i][k + j] = g.bform[i][j]
    return FiniteQuadraticForm(f.orders + g.orders, f.qvals + g.qvals, tuple(map(tuple, b)))


def subquotient(f, sub_gens, quot_gens=()):
    """The form induced on ``<sub_gens> / <quot_gens>``.

    ``quot_gens`` must lie in the span of ``sub_gens`` and be isotropic and
    orthogonal to it; the result is in invariant-factor form.  Also returns
    the representatives in ``f`` of the new generators.
    """
    k = f.ngens
    if k == 0:
        return trivial_form(), []
    relations = [[n * int(i == j) for j in range(k)] for i, n in enumerate(f.orders)]
    s_rows = [list(g) for g in sub_gens] + relations
    basis = row_span_basis(s_rows, k)
    binv = rational_inverse(basis)
    r_rows = [list(g) for g in quot_gens] + relations
    coords = matmul(r_rows, binv)
    if any(x.denominator != 1 for row in coords for x in row):
        raise LatticeError("quotient subgroup is not contained in the subgroup")
    coords = [[int(x) for x in row] for row in coords]
    _, d, v = smith(coords)
    vinv = rational_inverse(v)
    reps = [[int(x) for x in row] for row in matmul(vinv, basis)]
    orders, gens = [], []
    for i in range(k):
        di = d[i][i]
        if di > 1:
            orders.append(di)
            gens.append(f.reduce(reps[i]))
    qvals = [f.q(g) for g in gens]
    bform = [[f.b(g, h) for h in gens] for g in gens]
    lifts = None
    if f.lifts is not None:
        lifts = tuple(tuple(sum(c * f.lifts[j][t] for j, c in enumerate(g))
                            for t in range(len(f.lifts[0]))) for g in gens)
    return FiniteQuadraticForm(tuple(orders), tuple(qvals), tuple(map(tuple, bform)), lifts), gens


def normalize(f):
    """Re-express ``f`` in invariant-factor (divisibility chain) form."""
    out, _ = subquotient(f, [f.gen(i) for i in range(f.ngens)])
    return out


@dataclass(frozen=True)
class DiscriminantForm(FiniteQuadraticForm):
    """A discriminant form that remembers how to locate dual vectors in it."""

    # rows of D * V^{-1}, restricted to the nontrivial factors
    coord_map: tuple = field(default=(), compare=False, repr=False)
    # the remaining rows; they must give integers on dual vectors
    unit_rows: tuple = field(default=(), compare=False, repr=False)

    def class_of(self, x):
        """Class in ``L^#`` of a dual vector ``x`` given in lattice coordinates."""
        for row in self.unit_rows:
            if sum(Fraction(a) * b for a, b in zip(row, x)).denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
        out = []
        for row, n in zip(self.coord_map, self.orders):
            c = sum(Fraction(a) * b for a, b in zip(row, x))
            if c.denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
            out.append(int(c) % n)
        return tuple(out)


@lru_cache(maxsize=None)
def discriminant_form(l):
    """``L^# = L^v / L`` with the induced quadratic and bilinear forms."""
    g = [list(row) for row in l.gram]
    n = l.rank
    if n == 0:
        return DiscriminantForm((), (), (), (), (), ())
    u, d, v = smith(g)
    vinv = rational_inverse(v)
    gens, orders, cmap, units = [], [], [], []
    for i in range(n):
        di = d[i][i]
        if di > 1:
            gens.append([Fraction(v[t][i], di) for t in range(n)])
            orders.append(di)
            cmap.append(tuple(di * x for x in vinv[i]))
        else:
            units.append(tuple(vinv[i]))

    def pair(x, y):
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])

    qvals = [pair(x, x) for x in gens]
    bform = [[pair(x, y) for y in gens] for x in gens]
    return DiscriminantForm(tuple(orders), tuple(qvals), tuple(map(tuple, bform)),
                            tuple(map(tuple, gens)), tuple(cmap), tuple(units))


def length(f):
    """Minimal number of generators of the group."""
    return normalize(f).ngens if f.ngens else 0


def is_p_elementary(f, p):
    return all(n == p for n in normalize(f).orders)


def delta_invariant(f):
    """0 if every quadratic value is integral, 1 otherwise (2-elementary forms only)."""
    if not is_p_elementary(f, 2):
        raise LatticeError("delta is only defined for 2-elementary forms")
    return 0 if all(f.q(x).denominator == 1 for x in f.elements()) else 1


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def square_class(f, p):
    """Legendre class of ``prod(u_i)`` when ``f = sum <2 u_i / p>`` (odd p-elementary forms)."""
    if p == 2 or not is_p_elementary(f, p):
        raise LatticeError(f"square class needs an odd {p}-elementary form")
    f = normalize(f)
    a = f.ngens
    if a == 0:
        return 1
    m = [[int(p * x) for x in row] for row in f.bform]
    inv2 = pow(2, -1, p)
    return legendre(bareiss_det(m) * pow(inv2, a, p), p)


@dataclass(frozen=True)
class ElementaryInvariants:
    """Genus data of a p-elementary even lattice.

    For ``p == 2`` the parity invariant ``delta`` is used; for odd ``p`` the
    Legendre square class ``sqclass`` of the discriminant form stands in for it.
    """

    p: int
    t_plus: int
    t_minus: int
    a: int
    delta: Optional[int] = None
    sqclass: Optional[int] = None

    @property
    def rank(self):
        return self.t_plus + self.t_minus

    @property
    def signature(self):
        return Signature(self.t_plus, self.t_minus)


def form_invariants(f, sig, p):
    a = length(f)
    if p == 2:
        return ElementaryInvariants(2, sig.pos, sig.neg, a, delta=delta_invariant(f))
    return ElementaryInvariants(p, sig.pos, sig.neg, a, sqclass=square_class(f, p))


def elementary_invariants(l, p):
    return form_invariants(discriminant_form(l), signature(l), p)


def _check_cutoff(*forms):
    for f in forms:
        if f.size > BRUTE_FORCE_CUTOFF:
            raise UndecidedError(
                f"undecided-by-brute-force: group of order {f.size} exceeds {BRUTE_FORCE_CUTOFF}")


def isometries(f, g, limit=None):
    """Yield generator images ``phi(f.gen(i))`` of group isometries ``f -> g``.

    ``f`` and ``g`` may be degenerate; an isometry is a group isomorphism
    preserving the quadratic form.
    """
    if f.size != g.size:
        return
    k = f.ngens
    candidates = []
    all_g = list(g.elements())
    for i in range(k):
        n = f.orders[i]
        qi = f.qvals[i]
        candidates.append([y for y in all_g
                           if g.element_order(y) == f.element_order(f.gen(i))
                           and g.q(y) == qi and g.scale(n, y) == g.zero()])
    images = []
    found = 0

    def rec(i):
        nonlocal found
        if limit is not None and found >= limit:
            return
        if i == k:
            if len(g.span(images)) == g.size:
                found += 1
                yield tuple(images)
            return
        fi = f.gen(i)
        for y in candidates[i]:
            if all(g.b(y, images[j]) == f.b(fi, f.gen(j)) for j in range(i)):
                images.append(y)
                yield from rec(i + 1)
                images.pop()
                if limit is not None and found >= limit:
                    return

    yield from rec(0)


def forms_isometric(f, g):
    """Decide isometry of two finite quadratic forms by exhaustive search."""
    _check_cutoff(f, g)
    f, g = normalize(f), normalize(g)
    if f.orders != g.orders:
        return False
    if sorted(f.q(x) for x in f.elements()) != sorted(g.q(x) for x in g.elements()):
        return False
    return next(isometries(f, g, limit=1), None) is not None


def same_genus(a, b):
    if signature(a) != signature(b):
        return False
    return forms_isometric(discriminant_form(a), discriminant_form(b))
