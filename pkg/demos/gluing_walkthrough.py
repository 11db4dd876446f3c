"""How L^G and L_G glue into the OG6 lattice, for two rows of the table.

Row 12 admits a class of square -2 and divisibility 2; row 17 does not,
because its only gluing subgroup leaves no class with q = 3/2.
"""

from og6lattice.embeddings import enumerate_gluings, overlattice
from og6lattice.finite_forms import discriminant_form, same_genus
from og6lattice.og6 import find_row, load_table, og6_lattice, sigma_candidate_classes, sigma_class_exists

rows = load_table()
target = discriminant_form(og6_lattice())
for index in (12, 17):
    row = find_row(rows, index)
    m, n = row.invariant_lattice, row.coinvariant_lattice
    print(f"row {index}: L^G = {m.label}, L_G = {n.label}")
    for g in enumerate_gluings(m, n, target):
        amb, _ = overlattice(m, n, g)
        cands = sigma_candidate_classes(m, g)
        print(f"  gluing H = {list(g.m_gens)} -> {list(g.n_gens)}, |H| = {g.h}; "
              f"overlattice in the OG6 genus: {same_genus(amb, og6_lattice())}; "
              f"classes with q = 3/2 orthogonal to H: {cands}")
    res = sigma_class_exists(row)
    print(f"  sigma exists: {res.exists} (rule {res.rule}, witness {res.witness})")
