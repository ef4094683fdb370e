"""Exact computations with real and imaginary quadratic orders.

Class numbers, fundamental units, continued fractions, Hirzebruch sums,
Dedekind sums and genus characters, together with checkers for the
class number formula for d1 d2 f^2 and the mod 8 / mod 16
class number congruences it implies.
"""

from .arith import chi, is_prime, isqrt, jacobi, kronecker
from .quadratic import (
    CFExpansion,
    Discriminant,
    QuadraticIrrational,
    UnitCoeffs,
    cf_expand,
    cf_step,
    fundamental_unit,
    hirzebruch_sum,
    is_reduced,
    make_discriminant,
    omega,
    psi,
    unit_index,
)

__version__ = "0.1.0"
