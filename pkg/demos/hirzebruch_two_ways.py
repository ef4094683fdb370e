"""
Hirzebruch sums two ways
========================

The Hirzebruch sum of a real quadratic irrational is an alternating sum
over the period of its continued fraction.  When the fundamental unit has
norm +1, the same number falls out of a Dedekind sum attached to the
matrix of multiplication by that unit.  This script walks through both for
sqrt(21) and then checks them against each other on every reduced
irrational of a few discriminants.
"""

from quadcong import cf_expand, fundamental_unit, hirzebruch_sum, make_discriminant, omega
from quadcong.classgroup import enumerate_reduced
from quadcong.dedekind import dedekind_sum, m_of_irrational, n_of_matrix

# omega for discriminant 84 is sqrt(21)
disc = make_discriminant(84)
w = omega(disc)
cf = cf_expand(w)
print(f"{w}: pre-period {list(cf.preperiod)}, period {list(cf.period)}")

# the period has even length, so the sum alternates from the first term on
print("Hirzebruch sum from the continued fraction:", hirzebruch_sum(cf))

# the unit of Z[sqrt 21] is (55 + 12 sqrt 21), the cube of (5 + sqrt 21)/2
unit = fundamental_unit(disc)
print(f"unit: ({unit.t} + {unit.u} sqrt {disc.delta})/2, norm {unit.norm:+d}")

# multiplication by the unit in the basis (omega, 1)
M = m_of_irrational(w, unit)
print(f"matrix: [[{M.x}, {M.y}], [{M.z}, {M.w}]], det {M.det}")
print(f"s({M.w}, {M.z}) =", dedekind_sum(M.w, M.z))
print("Hirzebruch sum from the Dedekind sum:", n_of_matrix(M))

# a wider comparison: every reduced irrational of a few discriminants
for D in (21, 77, 321, 469, 3268):
    unit = fundamental_unit(D)
    reduced = enumerate_reduced(D)
    agree = all(hirzebruch_sum(cf_expand(xi)) == n_of_matrix(m_of_irrational(xi, unit)) for xi in reduced)
    print(f"D={D}: {len(reduced)} reduced irrationals, routes agree: {agree}")
