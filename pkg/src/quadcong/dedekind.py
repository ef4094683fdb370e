"""Dedekind sums and the matrix invariant n_M.

For ``M = [[x, y], [z, w]]`` in SL2(Z) with ``z != 0``::

    n_M = (x + w)/z - sign(z) * (3 + 12 s(w, |z|))

Attaching to a real quadratic irrational xi the matrix of multiplication by
the fundamental unit in the basis (xi, 1) gives a second way of computing
the Hirzebruch sum, independent of continued fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .quadratic import QuadraticIrrational, UnitCoeffs, fundamental_unit, omega

__all__ = [
    "Mat2",
    "dedekind_sum",
    "dedekind_sum_naive",
    "n_of_matrix",
    "m_of_omega",
    "m_of_irrational",
    "psi_via_dedekind",
    "S",
    "T",
    "SWAP",
]


@dataclass(frozen=True)
class Mat2:
    x: int
    y: int
    z: int
    w: int

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.x * other.x + self.y * other.z,
            self.x * other.y + self.y * other.w,
            self.z * other.x + self.w * other.z,
            self.z * other.y + self.w * other.w,
        )

    @property
    def det(self) -> int:
        return self.x * self.w - self.y * self.z

    @property
    def trace(self) -> int:
        return self.x + self.w

    def inverse(self) -> Mat2:
        d = self.det
        if d not in (1, -1):
            raise ValueError("matrix is not invertible over the integers")
        return Mat2(self.w * d, -self.y * d, -self.z * d, self.x * d)

    def transpose(self) -> Mat2:
        return Mat2(self.x, self.z, self.y, self.w)


S = Mat2(0, -1, 1, 0)
T = Mat2(1, 1, 0, 1)
SWAP = Mat2(0, 1, 1, 0)


def dedekind_sum_naive(h: int, k: int) -> Fraction:
    """s(h, k) straight from the defining sum; O(k), meant as a test oracle."""
    if k < 1 or math.gcd(h, k) != 1:
        raise ValueError(f"dedekind sum needs k >= 1 and gcd(h, k) = 1, got ({h}, {k})")
    # ((x)) = x - floor(x) - 1/2 off the integers; the m = k term vanishes.
    # Each term is (2(hm mod k) - k)(2m - k) / (4k^2).
    total = sum((2 * (h * m % k) - k) * (2 * m - k) for m in range(1, k))
    return Fraction(total, 4 * k * k)


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) in O(log k) steps via reciprocity."""
    if k < 1 or math.gcd(h, k) != 1:
        raise ValueError(f"dedekind sum needs k >= 1 and gcd(h, k) = 1, got ({h}, {k})")
    total = Fraction(0)
    sign = 1
    h %= k
    while k > 1:
        # s(h,k) = (h^2 + k^2 + 1)/(12hk) - 1/4 - s(k,h), with 1 <= h < k
        total += sign * (Fraction(h * h + k * k + 1, 12 * h * k) - Fraction(1, 4))
        sign = -sign
        h, k = k % h, h
    return total


def n_of_matrix(M: Mat2) -> Fraction:
    if M.z == 0:
        raise ValueError("n_M needs a nonzero lower-left entry")
    if M.det != 1:
        raise ValueError(f"n_M needs det 1, got {M.det}")
    sgn = 1 if M.z > 0 else -1
    return Fraction(M.x + M.w, M.z) - sgn * (3 + 12 * dedekind_sum(M.w, abs(M.z)))


def m_of_omega(disc, unit: UnitCoeffs | None = None) -> Mat2:
    """Matrix of multiplication by the fundamental unit in the basis (omega, 1)."""
    w = omega(disc)
    unit = unit or fundamental_unit(w.disc)
    if unit.norm != 1:
        raise ValueError(f"fundamental unit of {w.delta} has norm -1")
    q, r, sigma, delta = unit.q, unit.r, w.disc.sigma, w.delta
    return Mat2(q + r * sigma, r * (delta - sigma) // 4, r, q)


def m_of_irrational(xi: QuadraticIrrational, unit: UnitCoeffs | None = None) -> Mat2:
    """The integral M with eps*xi = x*xi + y and eps = z*xi + w."""
    unit = unit or fundamental_unit(xi.disc)
    if unit.norm != 1:
        raise ValueError(f"fundamental unit of {xi.delta} has norm -1")
    a, b, c = xi.form
    sigma = xi.disc.sigma
    q, r = unit.q, unit.r
    m = (b - sigma) // 2
    M = Mat2(q + r * m + r * sigma, -r * c, r * a, q - r * m)
    assert M.det == 1, "unit matrix lost unimodularity"
    return M


def psi_via_dedekind(xi: QuadraticIrrational, unit: UnitCoeffs | None = None) -> int:
    """Hirzebruch sum of a reduced xi (or of omega) computed as n(M_xi)."""
    value = n_of_matrix(m_of_irrational(xi, unit))
    if value.denominator != 1:
        raise ArithmeticError(f"n(M_xi) = {value} is not an integer for {xi}")
    return value.numerator
