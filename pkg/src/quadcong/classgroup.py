"""Class numbers, cycles of reduced irrationals, genus characters.

Positive discriminants
    The reduced irrationals of discriminant D split into continued-fraction
    cycles, one cycle per wide class.  The narrow class number is twice the
    number of cycles when the fundamental unit has norm +1 (even and odd
    positions of a cycle are then distinct narrow classes), and equals it
    otherwise.

Negative discriminants
    Classical count of reduced positive-definite forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import chi, kronecker, prime_divisors, valuation
from .quadratic import (
    Discriminant,
    QuadraticIrrational,
    UnitCoeffs,
    cf_step,
    fundamental_unit,
    is_fundamental,
    is_reduced,
    make_discriminant,
    omega,
    psi,
    unit_index,
)

__all__ = [
    "BQForm",
    "ClassStructure",
    "reduced_forms_negative",
    "class_number_negative",
    "enumerate_reduced",
    "class_structure",
    "class_number",
    "class_number_by_conductor",
    "prime_discriminants",
    "genus_character",
    "coprime_representative",
    "theta",
    "roots_of_unity",
    "cycle_terms",
    "iter_fundamental",
]


@dataclass(frozen=True)
class BQForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def form(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def is_primitive(self) -> bool:
        return math.gcd(self.a, self.b, self.c) == 1


def _as_disc(disc) -> Discriminant:
    return disc if isinstance(disc, Discriminant) else make_discriminant(int(disc))


def reduced_forms_negative(disc) -> list[BQForm]:
    """Reduced primitive positive-definite forms of a negative discriminant."""
    disc = _as_disc(disc)
    delta = disc.delta
    if delta >= 0:
        raise ValueError("expected a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -delta:
        for b in range(-a + 1, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b - delta
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(a, b, c) == 1:
                out.append(BQForm(a, b, c))
        a += 1
    return out


@lru_cache(maxsize=4096)
def class_number_negative(delta: int) -> int:
    return len(reduced_forms_negative(int(delta)))


def enumerate_reduced(disc) -> list[QuadraticIrrational]:
    """All primitive reduced irrationals of a positive discriminant, by (b, a)."""
    disc = _as_disc(disc)
    delta = disc.delta
    if delta <= 0:
        raise ValueError("expected a positive discriminant")
    s = disc.sqrt_floor
    out = []
    for b in range(2 - delta % 2, s + 1, 2):
        negc_times_a = (delta - b * b) // 4
        # 2a + b > sqrt(D) and 2a < b + sqrt(D)
        for a in range((s + 2 - b) // 2, (b + s) // 2 + 1):
            if negc_times_a % a == 0 and math.gcd(a, b, negc_times_a // a) == 1:
                out.append(QuadraticIrrational(a, b, disc))
    return out


@dataclass(frozen=True)
class ClassStructure:
    """Cycles of reduced irrationals of a positive discriminant.

    ``cycles[i]`` starts at its least member in (b, a) order and follows
    continued-fraction steps.  Cycles are sorted by that first member.
    """

    disc: Discriminant
    cycles: tuple[tuple[QuadraticIrrational, ...], ...]
    unit: UnitCoeffs
    _index: dict = field(repr=False, compare=False, hash=False, default_factory=dict)

    @property
    def h(self) -> int:
        return len(self.cycles)

    @property
    def h_plus(self) -> int:
        return 2 * self.h if self.unit.norm == 1 else self.h

    def cycle_of(self, xi: QuadraticIrrational) -> int:
        """Index of the cycle containing a reduced xi."""
        return self._index[(xi.a, xi.b)]

    @property
    def principal(self) -> int:
        xi = omega(self.disc)
        while not is_reduced(xi):
            xi = cf_step(xi)[1]
        return self.cycle_of(xi)

    def inverse_cycle(self, i: int) -> int:
        """Cycle of the inverse wide class, located through xi -> floor(xi) - xi'."""
        return self.cycle_of(self.cycles[i][0].op())

    def __len__(self) -> int:
        return len(self.cycles)


@lru_cache(maxsize=1024)
def _class_structure(delta: int) -> ClassStructure:
    disc = make_discriminant(delta)
    reduced = enumerate_reduced(disc)
    index: dict[tuple[int, int], int] = {}
    cycles = []
    for xi in reduced:
        if (xi.a, xi.b) in index:
            continue
        cyc = [xi]
        index[(xi.a, xi.b)] = len(cycles)
        nxt = cf_step(xi)[1]
        while nxt != xi:
            cyc.append(nxt)
            index[(nxt.a, nxt.b)] = len(cycles)
            nxt = cf_step(nxt)[1]
        cycles.append(tuple(cyc))
    if len(index) != len(reduced):
        raise AssertionError("cycles do not partition the reduced irrationals")
    return ClassStructure(disc, tuple(cycles), fundamental_unit(disc), index)


def class_structure(disc) -> ClassStructure:
    disc = _as_disc(disc)
    if disc.delta <= 0:
        raise ValueError("class_structure needs a positive discriminant")
    return _class_structure(disc.delta)


def class_number(disc) -> int:
    """Wide class number h(D) for any non-square discriminant."""
    disc = _as_disc(disc)
    if disc.delta < 0:
        return class_number_negative(disc.delta)
    return class_structure(disc).h


def class_number_by_conductor(d: int, f: int) -> int:
    """h(f^2 d) from h(d) through the conductor formula."""
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    if f < 1:
        raise ValueError("conductor must be positive")
    if d > 0:
        base = class_structure(d).h
        index = unit_index(d, f)
    else:
        base = class_number_negative(d)
        index = roots_of_unity(d) // 2 if f > 1 else 1
    value = Fraction(base * f, index)
    for q in prime_divisors(f) if f > 1 else []:
        value *= 1 - Fraction(chi(d, q), q)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral class number {value} for d={d}, f={f}")
    return value.numerator


def prime_discriminants(d: int) -> list[int]:
    """Write a fundamental d as a product of prime discriminants q*."""
    if not is_fundamental(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    odd = [q if q % 4 == 1 else -q for q in prime_divisors(d) if q != 2]
    rest = d
    for q in odd:
        rest //= q
    if rest != 1:
        assert rest in (-4, 8, -8), rest
        return [rest] + odd
    return odd


def _form_of(obj) -> tuple[int, int, int]:
    if isinstance(obj, tuple):
        return obj
    return obj.form


def genus_character(d1: int, disc, form) -> int:
    """The genus character attached to the splitting D = d1 * d2 * f^2, on a form.

    ``form`` may be a ``BQForm``, a ``QuadraticIrrational`` (its form
    ``[a, b, c]``) or a plain triple.
    """
    disc = _as_disc(disc)
    a, b, c = _form_of(form)
    if b * b - 4 * a * c != disc.delta:
        raise ValueError(f"form {(a, b, c)} does not have discriminant {disc.delta}")
    if disc.delta % d1:
        raise ValueError(f"{d1} does not divide {disc.delta}")
    try:
        make_discriminant(disc.delta // d1)
    except ValueError:
        raise ValueError(f"{disc.delta} is not d1 * d2 * f^2 for d1 = {d1}") from None
    value = 1
    for qs in prime_discriminants(d1):
        q = abs(qs) if qs % 2 else 2
        if math.gcd(a, q) == 1:
            value *= kronecker(qs, a)
        else:
            assert math.gcd(c, q) == 1, f"both a and c divisible by {q}"
            value *= kronecker(qs, c)
    return value


def coprime_representative(cycle: Sequence[QuadraticIrrational], p: int) -> QuadraticIrrational:
    """A member of the cycle whose a-coefficient is prime to p.

    If the first member fails, its successor works whenever p exactly
    divides the discriminant.
    """
    first = cycle[0]
    if math.gcd(first.a, p) == 1:
        return first
    succ = cf_step(first)[1]
    if math.gcd(succ.a, p) == 1:
        return succ
    for xi in cycle:
        if math.gcd(xi.a, p) == 1:
            return xi
    raise ValueError(f"no member of the cycle has a prime to {p}")


def roots_of_unity(d: int) -> int:
    if d >= 0:
        raise ValueError("roots_of_unity expects a negative discriminant")
    return {-3: 6, -4: 4}.get(d, 2)


def theta(d1: int, d2: int, f: int) -> int:
    """Euler factor at the primes dividing the conductor f."""
    if f < 1:
        raise ValueError("conductor must be positive")
    value = 1
    for p in prime_divisors(f) if f > 1 else []:
        m = valuation(p, f)
        c1, c2 = chi(d1, p), chi(d2, p)
        num = (1 - c1) * (1 - c2) - p ** (m - 1) * (p - c1) * (p - c2)
        q, rem = divmod(num, 1 - p)
        if rem:
            raise ArithmeticError(f"theta factor at {p} is not integral")
        value *= q
    return value


def cycle_terms(d1: int, structure: ClassStructure) -> list[int]:
    """Genus character times Hirzebruch sum, one term per wide class."""
    return [genus_character(d1, structure.disc, cyc[0]) * psi(cyc[0]) for cyc in structure.cycles]


def iter_fundamental(lo: int, hi: int) -> Iterable[int]:
    """Fundamental discriminants d with lo <= d <= hi."""
    for d in range(lo, hi + 1):
        if is_fundamental(d):
            yield d
