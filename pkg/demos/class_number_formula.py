"""
Class number formula for 817 * 4
================================

For two negative fundamental discriminants d1, d2 the product of their
class numbers is recovered from the real order of discriminant d1 d2 f^2:
one term per wide class, a genus character times a Hirzebruch sum.  Here
d1 = -19, d2 = -43 and f = 2.  The published reference row for this
discriminant carries a misprint, and the class-by-class sum shows why
the corrected value must be right.
"""

from fractions import Fraction

from quadcong.classgroup import class_number_negative, class_structure, genus_character, roots_of_unity, theta
from quadcong.congruence import H_value, class_terms, verify_kmz
from quadcong.quadratic import psi

d1, d2, f = -19, -43, 2
D = d1 * d2 * f * f
structure = class_structure(D)
print(f"D = {D}: h = {structure.h}, narrow h = {structure.h_plus}, unit norm {structure.unit.norm:+d}")

# each cycle of reduced irrationals is one wide class
for i, cycle in enumerate(structure.cycles):
    xi = cycle[0]
    chi = genus_character(d1, structure.disc, xi)
    print(f"class {i}: {len(cycle):2d} reduced irrationals, first {xi}, character {chi:+d}, Psi {psi(xi)}")

# the left side: 24 h(d1) h(d2) / (w1 w2) times the conductor factor
lhs = Fraction(24 * class_number_negative(d1) * class_number_negative(d2),
               roots_of_unity(d1) * roots_of_unity(d2)) * theta(d1, d2, f)
terms = [t for _, _, t in class_terms(19, 43, 2)]
print("left side:", lhs, " class terms:", terms, " sum:", sum(terms))
print("both right-hand evaluations:", verify_kmz(d1, d2, f))

# every class term is congruent to the principal one mod 8, which is what
# makes H divisible by 8
rec = H_value(19, 43, 2)
print(f"Psi(omega) = {rec.psi_omega}, H = {rec.H} = {rec.H_factored}")
print("the published row shows Psi = 42 and H = 2^4; with h = 5, theta = 5 that would give H = 5*42/6 - 5 = 30")
