"""Explicit ambient constructions for checking the gluing calculus.

Pick an even lattice L, change basis by a random unimodular matrix, let M be
spanned by the first k new basis vectors (so M is primitive) and N = M^perp.
Everything about the embedding can then be read off directly in L.
"""

import random
from fractions import Fraction

from og6lattice.embeddings import GluingData
from og6lattice.expr import lattice_from_text
from og6lattice.finite_forms import BRUTE_FORCE_CUTOFF, discriminant_form
from og6lattice.intmat import bareiss_det, kernel_basis, matmul, rational_inverse, transpose
from og6lattice.lattice import Lattice, direct_sum_all

BLOCKS = ["U", "U(2)", "[2]", "[-2]", "[4]", "[-6]", "A(2)", "A(2)(-1)", "U(3)", "[-4]"]


def random_unimodular(rng, n, steps=8):
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-1, 1, 2))
        p[i] = [a + k * b for a, b in zip(p[i], p[j])]
    rng.shuffle(p)
    return p


def sublattice(l, basis):
    g = matmul(matmul(basis, [list(r) for r in l.gram]), transpose(basis))
    return g


class ExplicitEmbedding:
    def __init__(self, l, bm, bn):
        self.l, self.bm, self.bn = l, bm, bn
        self.m = Lattice(sublattice(l, bm))
        self.n = Lattice(sublattice(l, bn))

    def to_ambient(self, v):
        return [sum(c * row[j] for c, row in zip(v, self.bm)) for j in range(self.l.rank)]

    def true_gluing(self):
        """``H`` = image of ``L`` in ``M^#`` under orthogonal projection."""
        qm = discriminant_form(self.m)
        gm_inv = rational_inverse(self.m.gram)
        pair = matmul(self.bm, [list(r) for r in self.l.gram])
        gens = []
        for j in range(self.l.rank):
            f = [row[j] for row in pair]
            y = [sum(gm_inv[i][t] * f[t] for t in range(len(f))) for i in range(len(f))]
            c = qm.class_of(y)
            if c not in qm.span(gens):
                gens.append(c)
        h = len(qm.span(gens))
        return GluingData(tuple(gens), (), h)


def random_embedding(rng, max_rank=6):
    """A random explicit primitive embedding ``M + N -> L`` with small discriminants."""
    while True:
        blocks = []
        rank = rng.randint(2, max_rank)
        while sum(lattice_from_text(b).rank for b in blocks) < rank:
            blocks.append(rng.choice(BLOCKS))
        l = direct_sum_all(lattice_from_text(b) for b in blocks)
        if l.rank > max_rank or abs(bareiss_det(l.gram)) > 48:
            continue
        p = random_unimodular(rng, l.rank)
        k = rng.randint(1, l.rank - 1)
        bm = p[:k]
        gm = sublattice(l, bm)
        if bareiss_det(gm) == 0:
            continue
        bn = kernel_basis(matmul(bm, [list(r) for r in l.gram]), l.rank)
        emb = ExplicitEmbedding(l, bm, bn)
        if discriminant_form(emb.m).size * discriminant_form(emb.n).size > BRUTE_FORCE_CUTOFF:
            continue
        return emb


def scanned_vectors(m, bound=1):
    from itertools import product
    for v in product(range(-bound, bound + 1), repeat=m.rank):
        if any(v):
            yield v


def embedding_corpus(count=24, seed=20240601):
    rng = random.Random(seed)
    return [random_embedding(rng) for _ in range(count)]


def frac_vec(v):
    return [Fraction(x) for x in v]
