"""Exact integer helpers: square roots, residue symbols, primality, factoring.

Everything here works on Python ints (arbitrary precision) and
``fractions.Fraction`` for rationals; nothing touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Fraction",
    "isqrt",
    "is_square",
    "jacobi",
    "kronecker",
    "chi",
    "is_prime",
    "factorize",
    "prime_divisors",
    "is_squarefree",
    "valuation",
    "format_factorization",
]

# Deterministic for n < 3.3 * 10**24, which covers everything below 2**64.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def isqrt(n: int) -> int:
    """Largest r with r*r <= n."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def jacobi(h: int, k: int) -> int:
    """Jacobi symbol (h/k) for odd positive k."""
    if k <= 0 or k % 2 == 0:
        raise ValueError(f"jacobi symbol needs odd positive modulus, got {k}")
    h %= k
    acc = 1
    while h:
        while h % 2 == 0:
            h //= 2
            if k % 8 in (3, 5):
                acc = -acc
        h, k = k, h
        if h % 4 == 3 and k % 4 == 3:
            acc = -acc
        h %= k
    return acc if k == 1 else 0


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n), defined for all integers D and n.

    (D/0) is taken to be 1 when D = +-1 and 0 otherwise.
    """
    if n == 0:
        return 1 if D in (1, -1) else 0
    acc = 1
    if n < 0:
        n = -n
        if D < 0:
            acc = -1
    if n % 2 == 0:
        if D % 2 == 0:
            return 0
        e = (n & -n).bit_length() - 1
        n >>= e
        if e % 2 and D % 8 in (3, 5):
            acc = -acc
    if n == 1:
        return acc
    return acc * jacobi(D, n)


def chi(d: int, n: int) -> int:
    """Quadratic character attached to the discriminant d, evaluated at n."""
    if d % 4 not in (0, 1):
        raise ValueError(f"{d} is not congruent to 0 or 1 mod 4")
    return kronecker(d, n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division (desk-scale inputs only)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(n).values())


def valuation(p: int, n: int) -> int:
    """Exponent of the prime p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def format_factorization(n: int, style: str = "ascii") -> str:
    """Render n as a product of prime powers.

    ``style="ascii"`` gives ``2^3*3``; ``style="text"`` gives ``2³·3``.
    Zero renders as ``0``.
    """
    if n == 0:
        return "0"
    sign = "-" if n < 0 else ""
    if abs(n) == 1:
        return sign + "1"
    parts = []
    for p, e in sorted(factorize(n).items()):
        if e == 1:
            parts.append(str(p))
        elif style == "text":
            parts.append(f"{p}{str(e).translate(_SUPERSCRIPT)}")
        else:
            parts.append(f"{p}^{e}")
    return sign + ("·" if style == "text" else "*").join(parts)
