"""Checks of the class number formula for d1 d2 f^2 and the congruences it implies.

For distinct primes p1, p2 = 3 (mod 4) and f in {1, 2}, with n = 6 when
min(p1, p2) > 3 and n = 2 otherwise, the quantity::

    H(f) = h(p1 p2 f^2) * Psi(omega_{p1 p2 f^2}) / n - h(-p1) h(-p2) theta(-p1, -p2, f)

is always divisible by 8.  The functions here compute every ingredient from
scratch (class numbers by cycle enumeration, Hirzebruch sums by continued
fractions) and check that and the unit and per-class facts behind it.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import chi, format_factorization, is_prime, is_square, isqrt
from .classgroup import (
    class_number,
    class_number_negative,
    class_structure,
    coprime_representative,
    genus_character,
    iter_fundamental,
    roots_of_unity,
    theta,
)
from .quadratic import cf_step, fundamental_unit, is_fundamental, make_discriminant, omega, psi, unit_power

__all__ = [
    "KmzReport",
    "CongruenceRecord",
    "UnitStructureReport",
    "verify_kmz",
    "kmz_cases",
    "H_value",
    "check_mod16_4p",
    "check_mod16_16p",
    "check_mod8_conductor1",
    "check_mod8_conductor2",
    "check_unit_structure",
    "class_terms",
    "check_class_term_congruence",
    "check_inverse_pairing",
    "prime_pairs",
    "scan",
    "square_root_of_p1_unit",
]


@dataclass(frozen=True)
class KmzReport:
    d1: int
    d2: int
    f: int
    lhs: Fraction
    rhs_reduced: int
    rhs_classes: int
    unit_norm: int

    @property
    def delta(self) -> int:
        return self.d1 * self.d2 * self.f * self.f

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs_reduced == self.rhs_classes


def verify_kmz(d1: int, d2: int, f: int) -> KmzReport:
    """Evaluate both sides of the class number formula for D = d1 d2 f^2.

    The right side is computed twice: summing character * floor over every
    reduced irrational, and summing character * Hirzebruch sum over one
    representative per wide class.
    """
    for d in (d1, d2):
        if d >= 0 or not is_fundamental(d):
            raise ValueError(f"{d} is not a negative fundamental discriminant")
    if d1 == d2:
        raise ValueError("d1 and d2 must be distinct")
    if f < 1:
        raise ValueError("conductor must be positive")
    disc = make_discriminant(d1 * d2 * f * f)
    lhs = (
        Fraction(24 * class_number_negative(d1) * class_number_negative(d2),
                 roots_of_unity(d1) * roots_of_unity(d2))
        * theta(d1, d2, f)
    )
    structure = class_structure(disc)
    rhs_reduced = sum(
        genus_character(d1, disc, xi) * xi.floor() for cyc in structure.cycles for xi in cyc
    )
    rhs_classes = sum(genus_character(d1, disc, cyc[0]) * psi(cyc[0]) for cyc in structure.cycles)
    return KmzReport(d1, d2, f, lhs, rhs_reduced, rhs_classes, structure.unit.norm)


def kmz_cases(bound: int) -> list[tuple[int, int, int]]:
    """All (d1, d2, f) with d1, d2 negative fundamental, |d1| < |d2|, |d1 d2| f^2 <= bound."""
    negs = [-d for d in range(3, bound // 3 + 1) if is_fundamental(-d)]
    out = []
    for i, d1 in enumerate(negs):
        for d2 in negs[i + 1:]:
            prod = d1 * d2
            if prod > bound:
                break
            f = 1
            while prod * f * f <= bound:
                out.append((d1, d2, f))
                f += 1
    out.sort(key=lambda c: (c[0] * c[1] * c[2] ** 2, -c[0], -c[1]))
    return out


@dataclass(frozen=True)
class CongruenceRecord:
    p1: int
    p2: int
    f: int
    delta: int
    n: int
    h_neg1: int
    h_neg2: int
    h_pos: int
    psi_omega: int
    theta: int
    H: int
    holds_mod8: bool

    @property
    def H_factored(self) -> str:
        return format_factorization(self.H, "ascii")

    def as_dict(self) -> dict:
        return asdict(self)


def _check_pair(p1: int, p2: int) -> None:
    if p1 == p2:
        raise ValueError("p1 and p2 must be distinct")
    for p in (p1, p2):
        if p % 4 != 3 or not is_prime(p):
            raise ValueError(f"{p} is not a prime congruent to 3 mod 4")


def H_value(p1: int, p2: int, f: int) -> CongruenceRecord:
    _check_pair(p1, p2)
    if f not in (1, 2):
        raise ValueError("f must be 1 or 2")
    delta = p1 * p2 * f * f
    n = 6 if min(p1, p2) > 3 else 2
    psi_omega = psi(omega(delta))
    if psi_omega % n:
        raise ArithmeticError(f"{n} does not divide Psi(omega_{delta}) = {psi_omega}")
    h_neg1, h_neg2 = class_number_negative(-p1), class_number_negative(-p2)
    h_pos = class_number(delta)
    th = theta(-p1, -p2, f)
    H = h_pos * (psi_omega // n) - h_neg1 * h_neg2 * th
    return CongruenceRecord(p1, p2, f, delta, n, h_neg1, h_neg2, h_pos, psi_omega, th, H, H % 8 == 0)


def check_mod8_conductor1(p1: int, p2: int) -> bool:
    """h(-p1) h(-p2) = h(p1 p2) Psi(omega_{p1 p2}) / n  (mod 8)."""
    return H_value(p1, p2, 1).holds_mod8


def check_mod8_conductor2(p1: int, p2: int) -> bool:
    """h(-p1) h(-p2) theta(-p1, -p2, 2) = h(4 p1 p2) Psi(omega_{4 p1 p2}) / n  (mod 8)."""
    return H_value(p1, p2, 2).holds_mod8


def check_mod16_4p(p: int) -> bool:
    """h(-p) = h(4p) Psi(omega_{4p}) / 3 (mod 16) for primes p = 3 (mod 4), p > 3."""
    if p <= 3 or p % 4 != 3 or not is_prime(p):
        raise ValueError(f"{p} is not a prime > 3 congruent to 3 mod 4")
    s = psi(omega(4 * p))
    if s % 3:
        return False
    return (class_number_negative(-p) - class_number(4 * p) * (s // 3)) % 16 == 0


def check_mod16_16p(p: int) -> bool:
    """h(-4p) = h(16p) Psi(omega_{16p}) / 3 (mod 16) for primes p = 1 (mod 4)."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    s = psi(omega(16 * p))
    if s % 3:
        return False
    return (class_number_negative(-4 * p) - class_number(16 * p) * (s // 3)) % 16 == 0


@dataclass
class UnitStructureReport:
    p1: int
    p2: int
    clauses: list = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.clauses.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.clauses)

    @property
    def failures(self) -> list:
        return [c for c in self.clauses if not c[1]]


def square_root_of_p1_unit(p1: int, p2: int, x: int, y: int) -> tuple[int, int] | None:
    """Integers (X, Y) with p1 (x + y sqrt(p1 p2)) = (X + Y sqrt(p1 p2))^2, or None."""
    D = p1 * p2
    for alpha in (1, -1):
        num = x + alpha
        if num % (2 * p2):
            continue
        Y2 = num // (2 * p2)
        if not is_square(Y2) or Y2 == 0:
            continue
        Y = isqrt(Y2)
        X2 = p1 * x - D * Y2
        if not is_square(X2):
            continue
        X = isqrt(X2)
        if 2 * X * Y != p1 * y:
            X = -X
        if X * X + D * Y * Y == p1 * x and 2 * X * Y == p1 * y:
            return X, Y
    return None


def check_unit_structure(p1: int, p2: int) -> UnitStructureReport:
    """Parity, congruence and square-root facts about the units of Z[omega_{p1 p2}] and Z[sqrt(p1 p2)]."""
    _check_pair(p1, p2)
    D = p1 * p2
    rep = UnitStructureReport(p1, p2)
    eps = fundamental_unit(D)
    t, u = eps.t, eps.u
    h = class_number(D)
    rep.add("h_odd_and_norm_plus_one", h % 2 == 1 and eps.norm == 1, f"h={h} norm={eps.norm}")
    if D % 8 == 1:
        rep.add("even_coefficients_when_1_mod_8", t % 2 == 0 and u % 2 == 0, f"t={t} u={u}")

    eps4 = fundamental_unit(4 * D)
    as_D = (eps4.t, 2 * eps4.u)  # (t + u sqrt(4D))/2 = (t + 2u sqrt(D))/2
    h4 = class_number(4 * D)
    if D % 8 == 1:
        expect = (h, (t, u))
    elif t % 2 == 0:
        expect = (3 * h, (t, u))
    else:
        expect = (h, unit_power(eps, 3))
    rep.add("conductor_two_case_table", (h4, as_D) == expect, f"got {(h4, as_D)} expected {expect}")

    half_integral = t % 2 == 1
    conductors = (2,) if (D % 8 == 5 and half_integral) else (1, 2)
    for f in conductors:
        e = fundamental_unit(D * f * f)
        if e.t % 2 or (e.u * f) % 2:
            rep.add(f"integral_unit_f{f}", False, f"t={e.t} u={e.u}")
            continue
        x, y = e.t // 2, e.u * f // 2
        rep.add(f"x_7_mod_8_f{f}", x % 8 == 7, f"x={x}")
        rep.add(f"y_0_mod_4_f{f}", y % 4 == 0, f"y={y}")
        if p1 % 8 == 3 and p2 % 8 == 3:
            rep.add(f"y_4_mod_8_f{f}", y % 8 == 4, f"y={y}")
        if p1 % 8 == 7 and p2 % 8 == 7:
            rep.add(f"y_0_mod_8_f{f}", y % 8 == 0, f"y={y}")
        root = square_root_of_p1_unit(p1, p2, x, y)
        rep.add(f"p1_times_unit_is_square_f{f}", root is not None, f"root={root}")

    if D % 8 == 5 and half_integral:
        rep.add("t_1_mod_4", t % 4 == 1, f"t={t}")
    return rep


def class_terms(p1: int, p2: int, f: int) -> list[tuple[int, int, int]]:
    """(cycle index, a of the representative, chi * Psi) for every wide class of p1 p2 f^2.

    The representative is a cycle member with a prime to p1, so the genus
    character reduces to chi_{-p1}(a).
    """
    _check_pair(p1, p2)
    delta = p1 * p2 * f * f
    structure = class_structure(delta)
    out = []
    for i, cyc in enumerate(structure.cycles):
        xi = coprime_representative(cyc, p1)
        ch = chi(-p1, xi.a)
        if ch != genus_character(-p1, structure.disc, xi):
            raise AssertionError(f"character shortcut disagrees at {xi}")
        out.append((i, xi.a, ch * psi(xi)))
    return out


def check_class_term_congruence(p1: int, p2: int, f: int) -> bool:
    """Every class term chi * Psi is congruent to Psi(omega) mod 8."""
    target = psi(omega(p1 * p2 * f * f))
    return all((term - target) % 8 == 0 for _, _, term in class_terms(p1, p2, f))


def check_inverse_pairing(p1: int, p2: int, f: int) -> bool:
    """Inverse wide classes carry equal terms; only the principal class is its own inverse."""
    delta = p1 * p2 * f * f
    structure = class_structure(delta)
    terms = {i: term for i, _, term in class_terms(p1, p2, f)}
    principal = structure.principal
    if terms[principal] != psi(omega(delta)):
        return False
    for i in range(structure.h):
        j = structure.inverse_cycle(i)
        if terms[i] != terms[j]:
            return False
        if (i == principal) != (i == j):
            return False
        if structure.inverse_cycle(j) != i:
            return False
    return True


@lru_cache(maxsize=None)
def _primes_3_mod_4(limit: int) -> tuple[int, ...]:
    return tuple(p for p in range(3, limit + 1, 4) if is_prime(p))


def prime_pairs(bound: int) -> list[tuple[int, int]]:
    """Pairs p1 < p2 of primes = 3 (mod 4) with p1 p2 <= bound, sorted by product."""
    primes = _primes_3_mod_4(max(bound // 3, 3))
    out = []
    for i, p1 in enumerate(primes):
        if p1 * p1 >= bound:
            break
        for p2 in primes[i + 1:]:
            if p1 * p2 > bound:
                break
            out.append((p1, p2))
    out.sort(key=lambda pr: pr[0] * pr[1])
    return out


def _record(args: tuple[int, int, int]) -> CongruenceRecord:
    return H_value(*args)


def scan(bound: int, f_set=(1, 2), jobs: int = 1) -> list[CongruenceRecord]:
    """Congruence records for every pair with p1 p2 <= bound and f in f_set."""
    tasks = [(p1, p2, f) for p1, p2 in prime_pairs(bound) for f in sorted(set(f_set))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_record, tasks, chunksize=8))
    else:
        records = [_record(t) for t in tasks]
    records.sort(key=lambda r: (r.p1 * r.p2, r.f))
    return records
