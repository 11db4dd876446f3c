"""Primitive embeddings through gluing data on discriminant forms.

A primitive embedding ``M -> L`` with complement ``N`` is recorded by a
subgroup ``H`` of ``M^#`` and an anti-isometry onto a subgroup of ``N^#``
(equivalently an isometry into ``N(-1)^#``).  The graph ``Gamma`` of that map
is isotropic in ``M^# + N^#`` and ``L^# = Gamma^perp / Gamma``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import isqrt, lcm

from .errors import LatticeError, UndecidedError
from .finite_forms import (
    BRUTE_FORCE_CUTOFF,
    FiniteQuadraticForm,
    discriminant_form,
    forms_isometric,
    isometries,
    length,
    negate,
    orthogonal_elements,
    orthogonal_sum,
    subquotient,
)
from .intmat import matmul, matvec, row_span_basis, vec_gcd
from .lattice import (
    Lattice,
    Signature,
    determinant,
    direct_sum,
    direct_sum_all,
    divisibility,
    make_named,
    signature,
    twist,
)


@dataclass(frozen=True)
class GluingData:
    """Generators of ``H`` in ``M^#`` and their images in ``N^#``."""

    m_gens: tuple
    n_gens: tuple
    h: int


@dataclass(frozen=True)
class EmbeddingCertificate:
    m: Lattice
    n: Lattice
    ambient_disc: FiniteQuadraticForm
    gluing: GluingData

    def verify(self):
        return forms_isometric(glue_quotient(self.m, self.n, self.gluing), self.ambient_disc)


def _check_cutoff(f):
    if f.size > BRUTE_FORCE_CUTOFF:
        raise UndecidedError(
            f"undecided-by-brute-force: discriminant group of order {f.size} "
            f"exceeds {BRUTE_FORCE_CUTOFF}")


def _generators(f, elements):
    """A small generating set for a subgroup given by its elements."""
    gens, seen = [], {f.zero()}
    for x in sorted(elements):
        if x not in seen:
            gens.append(x)
            seen = f.span(gens)
    return gens


def subgroups(f, order=None):
    """All subgroups of ``f`` (as frozensets), optionally only those of a given order."""
    found = {frozenset([f.zero()])}
    frontier = list(found)
    elements = list(f.elements())
    while frontier:
        nxt = []
        for s in frontier:
            for x in elements:
                if x in s:
                    continue
                t = set(s)
                y = x
                while y not in s:
                    t.update(f.add(z, y) for z in s)
                    y = f.add(y, x)
                t = frozenset(t)
                if order is not None and order % len(t):
                    continue
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    out = [s for s in found if order is None or len(s) == order]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def iter_gluings(m, n, h=None):
    """Yield every gluing of ``M`` with ``N`` (optionally of index ``h``), unfiltered by ambient.

    Gluings sharing the same subgroup ``H`` of ``M^#`` come out consecutively.
    """
    qm, qn = discriminant_form(m), discriminant_form(n)
    _check_cutoff(qm)
    _check_cutoff(qn)
    qn_minus = negate(qn)
    orders = [h] if h is not None else sorted({len(s) for s in subgroups(qm)})
    for order in orders:
        targets = []
        for s in subgroups(qn, order):
            form, reps = subquotient(qn_minus, _generators(qn, s))
            targets.append((form, reps))
        if not targets:
            continue
        for s in subgroups(qm, order):
            hform, hreps = subquotient(qm, _generators(qm, s))
            for tform, treps in targets:
                for images in isometries(hform, tform):
                    n_gens = []
                    for y in images:
                        z = qn.zero()
                        for c, r in zip(y, treps):
                            z = qn.add(z, qn.scale(c, r))
                        n_gens.append(z)
                    yield GluingData(tuple(hreps), tuple(n_gens), order)


def candidate_gluings(m, n, h=None):
    return list(iter_gluings(m, n, h))


def glue_quotient(m, n, g):
    """``Gamma^perp / Gamma`` inside ``M^# + N^#``."""
    qm, qn = discriminant_form(m), discriminant_form(n)
    total = orthogonal_sum(qm, qn)
    graph = [tuple(x) + tuple(y) for x, y in zip(g.m_gens, g.n_gens)]
    perp = orthogonal_elements(total, graph)
    out, _ = subquotient(total, _generators(total, perp), graph)
    return out


def gluing_index_square(m, n, ambient_order):
    """``h`` with ``h^2 |det L| = |det M det N|``, or None if no integer solution."""
    num = abs(determinant(m) * determinant(n))
    if num % ambient_order:
        return None
    h2 = num // ambient_order
    h = isqrt(h2)
    return h if h * h == h2 else None


def enumerate_gluings(m, n, ambient_disc, per_subgroup=False):
    """All gluings of ``M`` and ``N`` whose overlattice has discriminant form ``ambient_disc``.

    Raises :class:`UndecidedError` beyond the brute-force cutoff; an empty
    list means no primitive embedding with these complements exists.  With
    ``per_subgroup`` only the first valid gluing for each ``H`` is kept,
    which is enough for anything that depends on ``H`` alone.
    """
    h = gluing_index_square(m, n, ambient_disc.size)
    if h is None:
        return []
    out = []
    done = set()
    for g in iter_gluings(m, n, h):
        key = _subgroup_key(m, g)
        if per_subgroup and key in done:
            continue
        if forms_isometric(glue_quotient(m, n, g), ambient_disc):
            out.append(g)
            done.add(key)
    return out


def _subgroup_key(m, g):
    return frozenset(discriminant_form(m).span(g.m_gens))


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def divisibility_in_ambient(m, v, g):
    """``(v, L)`` for ``v`` in ``M``: the largest ``d`` with ``v/d`` in ``M^v`` and orthogonal to ``H``."""
    qm = discriminant_form(m)
    for d in reversed(_divisors(divisibility(m, v))):
        c = qm.class_of([Fraction(x, d) for x in v])
        if all(qm.b(c, x) == 0 for x in g.m_gens):
            return d
    return 1


def div_one_shortcut(m, n, ambient_det):
    """True when ``|det N| = |det L det M|``, forcing ``(v, L) = 1`` on all of ``M``."""
    return abs(determinant(n)) == abs(ambient_det * determinant(m))


def unimodular_complement_disc(m):
    """The discriminant form a complement of ``M`` in an even unimodular lattice must carry."""
    return negate(discriminant_form(m))


def overlattice(m, n, g):
    """Build the glued lattice explicitly.

    Returns ``(L, basis)`` where ``basis`` rows are rational coordinates in
    ``M + N``.  Raises if the gluing does not give an even integral lattice.
    """
    qm, qn = discriminant_form(m), discriminant_form(n)
    rm, rn = m.rank, n.rank
    rows = [[Fraction(int(i == j)) for j in range(rm + rn)] for i in range(rm + rn)]
    for x, y in zip(g.m_gens, g.n_gens):
        lift = [sum((c * qm.lifts[i][t] for i, c in enumerate(x)), Fraction(0)) for t in range(rm)]
        lift += [sum((c * qn.lifts[i][t] for i, c in enumerate(y)), Fraction(0)) for t in range(rn)]
        rows.append(lift)
    den = lcm(*(x.denominator for row in rows for x in row))
    basis = row_span_basis([[int(x * den) for x in row] for row in rows], rm + rn)
    basis = [[Fraction(x, den) for x in row] for row in basis]
    gram_mn = direct_sum(m, n).gram
    gram = matmul(matmul(basis, gram_mn), [list(c) for c in zip(*basis)])
    if any(x.denominator != 1 for row in gram for x in row):
        raise LatticeError("gluing is not isotropic: overlattice is not integral")
    return Lattice([[int(x) for x in row] for row in gram]), basis


def ambient_divisibility(m, n, g, v):
    """``(v, L)`` computed directly in the explicitly glued lattice."""
    _, basis = overlattice(m, n, g)
    gram_mn = direct_sum(m, n).gram
    w = list(v) + [0] * n.rank
    pairings = matvec(basis, matvec(gram_mn, w))
    if any(x.denominator != 1 for x in pairings):
        raise LatticeError("non-integral pairing in the overlattice")
    return vec_gcd(int(x) for x in pairings)


def _complement_blocks(det_abs):
    blocks = [make_named("U")]
    for k in range(1, det_abs + 1):
        if det_abs % k == 0:
            blocks.append(make_named("rank1", 2 * k))
            blocks.append(make_named("rank1", -2 * k))
            if k > 1 and det_abs % (k * k) == 0:
                blocks.append(make_named("U", k))
    for name, ns in (("A", range(1, 9)), ("D", range(4, 9)), ("E", (6, 7, 8))):
        for k in ns:
            l = make_named(name, k)
            if det_abs % abs(determinant(l)) == 0:
                blocks += [l, twist(l, -1)]
    for name in ("h5", "K7"):
        l = make_named(name)
        if det_abs % abs(determinant(l)) == 0:
            blocks += [l, twist(l, -1)]
    return blocks


def find_unimodular_complement(m, comp_sig):
    """Search sums of named blocks for a lattice of signature ``comp_sig`` and form ``-q_M``."""
    target = unimodular_complement_disc(m)
    rank = comp_sig.pos + comp_sig.neg
    det_abs = abs(determinant(m))
    blocks = [b for b in _complement_blocks(det_abs) if b.rank <= rank]
    sigs = [signature(b) for b in blocks]
    for count in range(1, rank + 1):
        for combo in combinations_with_replacement(range(len(blocks)), count):
            if sum(blocks[i].rank for i in combo) != rank:
                continue
            s = Signature(sum(sigs[i].pos for i in combo), sum(sigs[i].neg for i in combo))
            if s != comp_sig:
                continue
            cand = direct_sum_all(blocks[i] for i in combo)
            if abs(determinant(cand)) != det_abs:
                continue
            if forms_isometric(discriminant_form(cand), target):
                return cand
    return None


def embedding_exists_in_unimodular(m, target_sig):
    """Primitive embedding of ``M`` into the even unimodular lattice of ``target_sig``.

    True by the rank/length criterion or an exhibited complement; False when
    the signature does not fit or the complement is too small to carry
    ``M^#``.  Anything else raises :class:`UndecidedError`.
    """
    target_sig = Signature(*target_sig)
    if (target_sig.pos - target_sig.neg) % 8:
        raise LatticeError(f"no even unimodular lattice has signature {tuple(target_sig)}")
    sm = signature(m)
    if sm.pos > target_sig.pos or sm.neg > target_sig.neg:
        return False
    comp = Signature(target_sig.pos - sm.pos, target_sig.neg - sm.neg)
    crank = comp.pos + comp.neg
    a = length(discriminant_form(m))
    if crank < a:
        return False
    if crank >= a + 2:
        return True
    if crank == 0:
        return a == 0
    if find_unimodular_complement(m, comp) is not None:
        return True
    raise UndecidedError("undecided: no complement found among named blocks")
