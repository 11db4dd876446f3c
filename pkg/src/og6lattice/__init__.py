"""Exact even lattices, discriminant forms, gluings and the OG6 classification."""

from .elementary import (
    ElementaryGenusQuery,
    construct_witness,
    exists_elementary,
    splits_off_U,
)
from .embeddings import (
    EmbeddingCertificate,
    GluingData,
    div_one_shortcut,
    divisibility_in_ambient,
    embedding_exists_in_unimodular,
    enumerate_gluings,
    unimodular_complement_disc,
)
from .errors import ExprSyntaxError, LatticeError, UndecidedError
from .expr import elaborate, lattice_from_text, parse_lattice, to_text
from .finite_forms import (
    ElementaryInvariants,
    FiniteQuadraticForm,
    SmithDecomposition,
    delta_invariant,
    discriminant_form,
    forms_isometric,
    is_p_elementary,
    length,
    same_genus,
    smith_decomposition,
)
from .lattice import (
    Lattice,
    LatticeVector,
    Signature,
    determinant,
    direct_sum,
    divisibility,
    inner,
    make_named,
    signature,
    twist,
    vectors_of_norm,
)
from .og6 import (
    ClassificationRow,
    MukaiVector,
    Verdict,
    classify_row,
    classify_table,
    determinant_of_action,
    is_numerical_moduli_space,
    lambda11_invariants,
    lambda11_signature,
    picard_incidence_actions,
    sigma_class_exists,
    sigma_complement,
)

__version__ = "0.1.0"
