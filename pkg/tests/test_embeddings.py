import pytest

from og6lattice.embeddings import (
    EmbeddingCertificate,
    GluingData,
    ambient_divisibility,
    candidate_gluings,
    div_one_shortcut,
    divisibility_in_ambient,
    embedding_exists_in_unimodular,
    enumerate_gluings,
    glue_quotient,
    overlattice,
    subgroups,
    unimodular_complement_disc,
)
from og6lattice.errors import LatticeError, UndecidedError
from og6lattice.expr import lattice_from_text as L
from og6lattice.finite_forms import (
    FiniteQuadraticForm,
    discriminant_form,
    forms_isometric,
    same_genus,
    trivial_form,
)
from og6lattice.lattice import Signature, determinant, divisibility, make_named, signature

from ambient_oracle import embedding_corpus, scanned_vectors

OG6_DISC = discriminant_form(make_named("OG6"))
CORPUS = embedding_corpus()


def test_subgroups_of_klein_four():
    f = discriminant_form(L("[-2]^2"))
    subs = subgroups(f)
    assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 4]
    assert len(subgroups(f, 2)) == 3


def test_rank_one_into_hyperbolic_plane():
    gl = enumerate_gluings(L("[-2]"), L("[2]"), trivial_form())
    assert len(gl) == 1
    (g,) = gl
    assert g.h == 2 and g.m_gens == ((1,),)
    # v = e - f spans [-2]; v/2 pairs to 1/2 with the glue, so (v, U) = 1
    assert divisibility_in_ambient(L("[-2]"), (1,), g) == 1
    amb, _ = overlattice(L("[-2]"), L("[2]"), g)
    assert same_genus(amb, make_named("U"))


def test_row12_gluing_exists():
    gl = enumerate_gluings(L("U + [2] + [-2]^3"), L("[2] + [-2]"), OG6_DISC)
    assert gl
    for g in gl:
        assert g.h ** 2 * 4 == 16 * 4


def test_rank_one_into_og6():
    m, n = L("[2]"), L("U^2 + [-2]^3")
    gl = enumerate_gluings(m, n, OG6_DISC)
    assert gl
    assert all(g.h == 2 for g in gl)
    assert div_one_shortcut(m, n, 4)
    for g in gl:
        assert divisibility_in_ambient(m, (1,), g) == 1


def test_trivial_self_gluing():
    og = make_named("OG6")
    g = GluingData((), (), 1)
    s1 = (0,) * 6 + (1, 0)
    assert divisibility_in_ambient(og, s1, g) == 2 == divisibility(og, s1)


def test_no_square_relation_means_no_gluing():
    assert enumerate_gluings(L("[2]"), L("[-2]^2"), trivial_form()) == []


def test_cutoff_is_reported():
    with pytest.raises(UndecidedError):
        enumerate_gluings(L("[-2]^9"), L("[2]"), OG6_DISC)


def test_div_one_shortcut_examples():
    assert div_one_shortcut(L("[2]"), L("U^2 + [-2]^3"), 4)
    assert not div_one_shortcut(L("U + [2] + [-2]^3"), L("[2] + [-2]"), 4)
    assert div_one_shortcut(make_named("U"), make_named("U"), 1)


def test_unimodular_complement_disc_examples():
    f = unimodular_complement_disc(L("[-2]"))
    assert f.orders == (2,) and f.qvals == (FiniteQuadraticForm((2,), (0.5,), ((0.5,),)).qvals)
    assert unimodular_complement_disc(L("U^2 + [-2]")).qvals == (0.5,)
    k = discriminant_form(L("U^2 + K7"))
    neg = unimodular_complement_disc(L("U^2 + K7"))
    assert neg.orders == (7,) and (neg.qvals[0] + k.qvals[0]) % 2 == 0


def test_embedding_exists_in_unimodular_examples():
    assert embedding_exists_in_unimodular(L("U^3 + [-2]"), (4, 4))
    assert not embedding_exists_in_unimodular(L("U^4 + [2]"), (4, 4))
    assert embedding_exists_in_unimodular(make_named("OG6"), (5, 5))
    assert embedding_exists_in_unimodular(L("[2] + [-2]"), (1, 1)) is False
    with pytest.raises(LatticeError):
        embedding_exists_in_unimodular(make_named("U"), (2, 1))


def test_embedding_exists_via_complement_search():
    # complement rank equals length: must exhibit [2] as the complement of [-2] in U
    assert embedding_exists_in_unimodular(L("[-2]"), (1, 1))
    # OG6 into U^5: complement of rank 2 = length 2 is [2]^2
    assert embedding_exists_in_unimodular(make_named("OG6"), Signature(5, 5))


@pytest.mark.parametrize("emb", CORPUS, ids=lambda e: f"L={e.l.gram}")
def test_gluing_formula_on_explicit_ambients(emb):
    m, n, l = emb.m, emb.n, emb.l
    target = discriminant_form(l)
    gl = enumerate_gluings(m, n, target)
    assert gl, "a realized embedding must have at least one gluing"
    truth = emb.true_gluing()
    qm = discriminant_form(m)
    enumerated_subgroups = {frozenset(qm.span(g.m_gens)) for g in gl}
    assert frozenset(qm.span(truth.m_gens)) in enumerated_subgroups
    for g in gl:
        assert g.h ** 2 * abs(determinant(l)) == abs(determinant(m) * determinant(n))
        assert EmbeddingCertificate(m, n, target, g).verify()
        amb, _ = overlattice(m, n, g)
        assert abs(determinant(amb)) == abs(determinant(l))
        assert signature(amb) == signature(l)
        assert forms_isometric(discriminant_form(amb), target)
        for v in scanned_vectors(m):
            d = divisibility_in_ambient(m, v, g)
            assert d == ambient_divisibility(m, n, g, v)
            assert divisibility(m, v) % d == 0
    for v in scanned_vectors(m):
        assert divisibility_in_ambient(m, v, truth) == divisibility(l, emb.to_ambient(v))
    if div_one_shortcut(m, n, determinant(l)):
        for g in gl:
            assert all(divisibility_in_ambient(m, v, g) == 1 for v in scanned_vectors(m))


def test_glue_quotient_orders():
    m, n = L("U + [-2]^2"), L("U + U(2)")
    (g,) = candidate_gluings(m, n, 2)
    assert glue_quotient(m, n, g).size == 4
    assert forms_isometric(glue_quotient(m, n, g), OG6_DISC)


def test_overlattice_rejects_non_isotropic_graph():
    m = L("[-2]")
    bad = GluingData(((1,),), ((0,),), 2)
    with pytest.raises(LatticeError):
        overlattice(m, L("[-2]"), bad)
