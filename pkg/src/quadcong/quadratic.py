"""Quadratic discriminants, quadratic irrationals and their continued fractions.

A quadratic irrational of discriminant ``D`` is stored as the pair ``(a, b)``
meaning ``(b + sqrt(D)) / (2a)``, with ``c = (b*b - D) / (4a)`` an integer and
``gcd(a, b, c) = 1``.  All floors and sign tests are decided with integer
arithmetic against ``isqrt(D)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .arith import factorize, is_square, isqrt

__all__ = [
    "Discriminant",
    "QuadraticIrrational",
    "CFExpansion",
    "UnitCoeffs",
    "make_discriminant",
    "is_fundamental",
    "omega",
    "cf_step",
    "is_reduced",
    "cf_expand",
    "hirzebruch_sum",
    "psi",
    "fundamental_unit",
    "unit_index",
    "unit_power",
]


@dataclass(frozen=True)
class Discriminant:
    delta: int
    d: int
    f: int

    @property
    def sigma(self) -> int:
        return self.delta % 2

    @cached_property
    def sqrt_floor(self) -> int:
        return isqrt(self.delta) if self.delta > 0 else isqrt(-self.delta)

    def __int__(self) -> int:
        return self.delta

    def __str__(self) -> str:
        return str(self.delta)


def is_fundamental(d: int) -> bool:
    """True for discriminants of quadratic fields (d = 1 excluded)."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


@lru_cache(maxsize=4096)
def make_discriminant(delta: int) -> Discriminant:
    """Validate ``delta`` and split it as ``f**2 * d`` with ``d`` fundamental."""
    if delta % 4 not in (0, 1):
        raise ValueError(f"discriminant {delta} is not congruent to 0 or 1 mod 4")
    if is_square(delta) or delta == 0:
        raise ValueError(f"discriminant {delta} is a perfect square")
    core, sq = (1 if delta > 0 else -1), 1
    for p, e in factorize(delta).items():
        core *= p ** (e % 2)
        sq *= p ** (e // 2)
    if core % 4 == 1:
        d, f = core, sq
    else:
        # delta = 0 mod 4 forces sq even here
        d, f = 4 * core, sq // 2
    return Discriminant(delta, d, f)


def _as_disc(disc) -> Discriminant:
    return disc if isinstance(disc, Discriminant) else make_discriminant(int(disc))


def _floor_div_sqrt(b: int, a: int, delta: int, s: int) -> int:
    """floor((b + sqrt(delta)) / (2a)) for non-square delta > 0, s = isqrt(delta)."""
    if a > 0:
        return (b + s) // (2 * a)
    return (b + s + 1) // (2 * a)


@dataclass(frozen=True)
class QuadraticIrrational:
    a: int
    b: int
    disc: Discriminant

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("a must be nonzero")
        num = self.b * self.b - self.disc.delta
        if num % (4 * self.a):
            raise ValueError(
                f"(b^2 - D)/(4a) not integral for a={self.a}, b={self.b}, D={self.disc.delta}"
            )
        if math.gcd(self.a, self.b, num // (4 * self.a)) != 1:
            raise ValueError(f"imprimitive triple for a={self.a}, b={self.b}")

    @classmethod
    def of(cls, a: int, b: int, delta) -> QuadraticIrrational:
        return cls(a, b, _as_disc(delta))

    @property
    def delta(self) -> int:
        return self.disc.delta

    @property
    def c(self) -> int:
        return (self.b * self.b - self.disc.delta) // (4 * self.a)

    @property
    def form(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def floor(self) -> int:
        if self.delta < 0:
            raise ValueError("floor is only defined for real quadratic irrationals")
        return _floor_div_sqrt(self.b, self.a, self.delta, self.disc.sqrt_floor)

    def conjugate_floor(self) -> int:
        if self.delta < 0:
            raise ValueError("floor is only defined for real quadratic irrationals")
        return _floor_div_sqrt(-self.b, -self.a, self.delta, self.disc.sqrt_floor)

    def neg(self) -> QuadraticIrrational:
        return QuadraticIrrational(-self.a, -self.b, self.disc)

    def translate(self, n: int) -> QuadraticIrrational:
        """xi + n."""
        return QuadraticIrrational(self.a, self.b + 2 * self.a * n, self.disc)

    def op(self) -> QuadraticIrrational:
        """floor(xi) - xi', the irrational attached to the inverse class."""
        return QuadraticIrrational(self.a, 2 * self.a * self.floor() - self.b, self.disc)

    def __str__(self) -> str:
        return f"({self.b}+sqrt({self.delta}))/{2 * self.a}"


@dataclass(frozen=True)
class CFExpansion:
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.preperiod)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.period)

    def terms(self, n: int) -> list[int]:
        """The first n partial quotients."""
        out = list(self.preperiod[:n])
        i = 0
        while len(out) < n:
            out.append(self.period[i % self.l])
            i += 1
        return out


@dataclass(frozen=True)
class UnitCoeffs:
    """A unit (t + u*sqrt(D))/2 of the order of discriminant D, also q + r*omega."""

    t: int
    u: int
    norm: int
    delta: int

    @property
    def sigma(self) -> int:
        return self.delta % 2

    @property
    def q(self) -> int:
        return (self.t - self.sigma * self.u) // 2

    @property
    def r(self) -> int:
        return self.u


def omega(disc) -> QuadraticIrrational:
    disc = _as_disc(disc)
    return QuadraticIrrational(1, disc.sigma, disc)


def cf_step(xi: QuadraticIrrational) -> tuple[int, QuadraticIrrational]:
    """One continued-fraction step: (floor(xi), 1/(xi - floor(xi)))."""
    n = xi.floor()
    a, b, c = xi.form
    shifted_c = c - b * n + a * n * n
    nxt = QuadraticIrrational(-shifted_c, 2 * a * n - b, xi.disc)
    return n, nxt


def is_reduced(xi: QuadraticIrrational) -> bool:
    """xi > 1 and -1 < xi' < 0."""
    if xi.delta < 0:
        raise ValueError("reduction is defined for positive discriminants only")
    return xi.floor() >= 1 and xi.conjugate_floor() == -1


def cf_expand(xi: QuadraticIrrational) -> CFExpansion:
    """Minimal pre-period and period of the continued fraction of xi."""
    if xi.delta < 0:
        raise ValueError("continued fractions need a positive discriminant")
    pre = []
    while not is_reduced(xi):
        n, xi = cf_step(xi)
        pre.append(n)
    start = xi
    period = []
    while True:
        n, xi = cf_step(xi)
        period.append(n)
        if xi == start:
            break
    return CFExpansion(tuple(pre), tuple(period))


def hirzebruch_sum(cf: CFExpansion) -> int:
    if cf.l % 2:
        return 0
    sign = -1 if cf.k % 2 else 1
    return sign * sum(v if i % 2 == 0 else -v for i, v in enumerate(cf.period))


def psi(xi: QuadraticIrrational) -> int:
    """Hirzebruch sum of xi via its continued fraction."""
    return hirzebruch_sum(cf_expand(xi))


def _period_unit(xi: QuadraticIrrational) -> UnitCoeffs:
    """The unit q_{l-1} xi + q_{l-2} fixed by one period of a reduced xi.

    For a primitive xi this generates the unit group of the order of its
    discriminant modulo +-1.
    """
    delta = xi.delta
    q_prev, q_cur = 1, 0
    y = xi
    l = 0
    while True:
        n, y = cf_step(y)
        q_prev, q_cur = q_cur, n * q_cur + q_prev
        l += 1
        if y == xi:
            break
    a, b = xi.a, xi.b
    if q_cur % a or (q_cur * b) % a:
        raise ArithmeticError("period matrix does not give an integral unit")
    u = q_cur // a
    t = q_cur * b // a + 2 * q_prev
    norm = -1 if l % 2 else 1
    if t * t - delta * u * u != 4 * norm:
        raise ArithmeticError(f"unit check failed for D={delta}")
    return UnitCoeffs(t, u, norm, delta)


def unit_power(unit: UnitCoeffs, n: int) -> tuple[int, int]:
    """(T, U) with ((t + u sqrt D)/2)**n = (T + U sqrt D)/2."""
    if n < 0:
        raise ValueError("negative powers not supported")
    T, U = 2, 0
    for _ in range(n):
        T, U = (T * unit.t + unit.delta * U * unit.u) // 2, (T * unit.u + U * unit.t) // 2
    return T, U


@lru_cache(maxsize=4096)
def _fundamental_unit_with_index(delta: int) -> tuple[UnitCoeffs, int]:
    disc = make_discriminant(delta)
    if delta < 0:
        raise ValueError("fundamental units are defined here for positive discriminants")
    if disc.f == 1:
        first = omega(disc)
        while not is_reduced(first):
            first = cf_step(first)[1]
        return _period_unit(first), 1
    base, _ = _fundamental_unit_with_index(disc.d)
    T, U, n = base.t, base.u, 1
    while U % disc.f:
        T, U = (T * base.t + disc.d * U * base.u) // 2, (T * base.u + U * base.t) // 2
        n += 1
    unit = UnitCoeffs(T, U // disc.f, base.norm**n, delta)
    return unit, n


def fundamental_unit(disc) -> UnitCoeffs:
    """Fundamental unit (t + u*sqrt(D))/2 > 1 of the order of discriminant D > 0."""
    return _fundamental_unit_with_index(int(_as_disc(disc).delta))[0]


def unit_index(d: int, f: int) -> int:
    """n with eps_{f^2 d} = eps_d ** n."""
    if d <= 0 or not is_fundamental(d):
        raise ValueError(f"{d} is not a positive fundamental discriminant")
    if f < 1:
        raise ValueError("conductor must be positive")
    return _fundamental_unit_with_index(f * f * d)[1]
