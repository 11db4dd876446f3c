"""Basic facts about the OG6 lattice U^3 + [-2]^2 and the class sigma."""

from og6lattice import discriminant_form, lattice_from_text, same_genus
from og6lattice.lattice import determinant, divisibility, norm, signature
from og6lattice.og6 import og6_lattice, sigma_complement

l = og6_lattice()
f = discriminant_form(l)
print("OG6 lattice:", l.label)
print("  signature", tuple(signature(l)), "determinant", determinant(l))
print("  discriminant group orders", f.orders, "q-values", [str(x) for x in f.qvals])

s1 = (0,) * 6 + (1, 0)
print("sigma = generator of a [-2] summand")
print("  sigma^2 =", norm(l, s1), " divisibility =", divisibility(l, s1))
comp = sigma_complement(l, s1)
print("  sigma^perp has rank", comp.rank, "and signature", tuple(signature(comp)))
print("  same genus as U^3 + [-2]:", same_genus(comp, lattice_from_text("U^3 + [-2]")))
