"""Existence and U-splitting of p-elementary even lattices.

``exists_elementary`` applies the classical arithmetic conditions on
``(t+, t-, a, delta)`` (or the square class for odd p).  ``construct_witness``
is an independent brute-force search over direct sums of standard blocks and
serves as a cross-check.
"""

from functools import lru_cache

from .errors import LatticeError
from .finite_forms import (
    ElementaryInvariants,
    delta_invariant,
    discriminant_form,
    is_p_elementary,
    legendre,
    length,
    square_class,
)
from .intmat import rational_inverse
from .lattice import Lattice, direct_sum_all, make_named, signature, twist

ElementaryGenusQuery = ElementaryInvariants

MAX_WITNESS_RANK = 10

# Negative definite, det 25, 5-elementary of length 2 with nonsquare class;
# first hit of a scan over rank-4 Gram matrices with entries in [-6, 1].
_F5 = ((-2, -1, -1, -1), (-1, -2, -1, -1), (-1, -1, -4, 1), (-1, -1, 1, -4))

# Negative definite, rank 8, det 5: the complement of (2y, 1) in E8 + [-2],
# y a root of E8.  Its rescaled dual covers length 7.
_N5 = ((-6, 2, 0, 0, 0, 0, 0, -3), (2, -2, 1, 0, 0, 0, 1, 1), (0, 1, -2, 1, 0, 0, 0, 0),
       (0, 0, 1, -2, 1, 0, 0, 0), (0, 0, 0, 1, -2, 1, 0, 0), (0, 0, 0, 0, 1, -2, 0, 0),
       (0, 1, 0, 0, 0, 0, -2, 0), (-3, 1, 0, 0, 0, 0, 0, -4))


def _exists_2(r, s, a, delta):
    if delta not in (0, 1):
        return False
    if a > r or (r - a) % 2:
        return False
    if delta == 0 and s % 4:
        return False
    if a == 0 and (delta != 0 or s % 8):
        return False
    if a == 1 and s % 8 not in (1, 7):
        return False
    if a == 2 and s % 8 == 4 and delta != 0:
        return False
    if delta == 0 and a == r and s % 8:
        return False
    return True


def _exists_odd(p, t_minus, r, s, a, sqclass):
    if sqclass not in (1, -1):
        return False
    if a > r or r % 2:
        return False
    if a == 0 and sqclass != 1:
        return False
    # Gauss sum of sum <2u_i/p>: chi(prod u_i) * eps_p^a, with eps_p = i when p = 3 mod 4
    expected = 2 * a * (p % 4 == 3) + 4 * (sqclass == -1)
    if (s - expected) % 8:
        return False
    if a == r:
        # L = M(p) with M even unimodular, so chi(prod u) = chi(2)^a chi(det M)
        if s % 8:
            return False
        if sqclass != legendre(2, p) ** a * legendre(-1, p) ** t_minus:
            return False
    return True


def exists_elementary(q):
    """Whether an even ``p``-elementary lattice with invariants ``q`` exists."""
    if q.t_plus < 0 or q.t_minus < 0 or q.a < 0:
        return False
    r = q.t_plus + q.t_minus
    s = q.t_plus - q.t_minus
    if q.p == 2:
        return _exists_2(r, s, q.a, q.delta)
    return _exists_odd(q.p, q.t_minus, r, s, q.a, q.sqclass)


def splits_off_U(q):
    """Whether every lattice with invariants ``q`` is ``U + R`` for some ``R``.

    Removing ``U`` keeps the discriminant form, so this is existence of the
    reduced genus ``(t+ - 1, t- - 1, a)``; uniqueness in the genus is assumed.
    """
    if q.t_plus < 1 or q.t_minus < 1:
        return False
    reduced = ElementaryInvariants(q.p, q.t_plus - 1, q.t_minus - 1, q.a, q.delta, q.sqclass)
    return exists_elementary(reduced)


def _both_signs(l):
    return [l, twist(l, -1)]


def dual_twist(l, p):
    """``L^v(p)``, the rescaled dual; None unless it is an even integral lattice."""
    inv = rational_inverse(l.gram)
    g = [[p * x for x in row] for row in inv]
    if any(x.denominator != 1 for row in g for x in row):
        return None
    if any(g[i][i] % 2 for i in range(len(g))):
        return None
    label = f"({l.label})^v({p})" if l.label else None
    return Lattice([[int(x) for x in row] for row in g], label)


@lru_cache(maxsize=None)
def witness_blocks(p):
    """Standard p-elementary building blocks, in canonical search order."""
    blocks = [make_named("U"), make_named("U", p)]
    if p == 2:
        blocks += [make_named("rank1", 2), make_named("rank1", -2)]
        for name, n in (("D", 4), ("D", 6), ("E", 7), ("D", 8)):
            blocks += _both_signs(make_named(name, n))
    else:
        blocks += _both_signs(make_named("A", p - 1))
    if p == 3:
        blocks += _both_signs(make_named("E", 6))
    if p == 5:
        blocks += _both_signs(make_named("h5"))
    if p == 7:
        blocks += _both_signs(make_named("K7"))
    if p == 5:
        blocks += _both_signs(Lattice(_F5, "F5"))
        blocks += _both_signs(Lattice(_N5, "N5"))
    blocks += _both_signs(make_named("E", 8))
    for b in list(blocks):
        d = dual_twist(b, p)
        if d is not None and d.rank > 1 and d not in blocks:
            blocks.append(d)
    out = []
    for b in blocks:
        f = discriminant_form(b)
        if not is_p_elementary(f, p):
            raise LatticeError(f"block {b} is not {p}-elementary")
        out.append(b)
    return tuple(out)


@lru_cache(maxsize=None)
def _block_data(p):
    data = []
    for b in witness_blocks(p):
        f = discriminant_form(b)
        sig = signature(b)
        a = length(f)
        tag = delta_invariant(f) if p == 2 else square_class(f, p)
        data.append((b, sig.pos, sig.neg, a, tag))
    return data


def construct_witness(q, max_rank=8):
    """Search sums of standard blocks for a lattice with invariants ``q``.

    Blocks are combined by length additivity, and ``delta`` (max) or the
    square class (product) of the summands; the first hit in canonical
    multiset order is rebuilt and re-checked from its Gram matrix.
    """
    if max_rank > MAX_WITNESS_RANK:
        raise LatticeError(f"max_rank must be at most {MAX_WITNESS_RANK}")
    r = q.t_plus + q.t_minus
    if r > max_rank or q.t_plus < 0 or q.t_minus < 0:
        return None
    p = q.p
    data = _block_data(p)
    target_tag = q.delta if p == 2 else q.sqclass
    neutral = 0 if p == 2 else 1

    def combine(x, y):
        return max(x, y) if p == 2 else x * y

    def rec(start, pos, neg, a, tag, chosen, size):
        if len(chosen) == size:
            if (pos, neg, a, tag) == (q.t_plus, q.t_minus, q.a, target_tag):
                return list(chosen)
            return None
        for i in range(start, len(data)):
            _, bp, bn, ba, btag = data[i]
            if pos + bp > q.t_plus or neg + bn > q.t_minus or a + ba > q.a:
                continue
            chosen.append(i)
            hit = rec(i, pos + bp, neg + bn, a + ba, combine(tag, btag), chosen, size)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    if r == 0:
        hit = [] if (q.a, target_tag) == (0, neutral) else None
    else:
        hit = None
        for size in range(1, r + 1):
            hit = rec(0, 0, 0, 0, neutral, [], size)
            if hit is not None:
                break
    if hit is None:
        return None
    lat = direct_sum_all(data[i][0] for i in hit)
    if not _matches(lat, q):
        raise LatticeError(f"witness {lat} does not reproduce the requested invariants")
    return lat


def _matches(lat, q):
    sig = signature(lat)
    f = discriminant_form(lat)
    if (sig.pos, sig.neg) != (q.t_plus, q.t_minus):
        return False
    if not is_p_elementary(f, q.p) or length(f) != q.a:
        return False
    if q.p == 2:
        return delta_invariant(f) == q.delta
    return square_class(f, q.p) == q.sqclass
