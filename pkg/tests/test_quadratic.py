import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from quadcong.arith import is_square, isqrt
from quadcong.classgroup import enumerate_reduced
from quadcong.quadratic import (
    CFExpansion, QuadraticIrrational, cf_expand, cf_step, fundamental_unit, hirzebruch_sum,
    is_fundamental, is_reduced, make_discriminant, omega, psi, unit_index, unit_power,
)

DISCS = [D for D in range(5, 3001) if D % 4 in (0, 1) and not is_square(D)]


def random_irrational(draw_delta, a, b):
    """Some primitive irrational of discriminant delta near (a, b), or None."""
    for bb in range(b, b + 2 * abs(a) * 4 + 2):
        if (bb * bb - draw_delta) % (4 * a) == 0:
            c = (bb * bb - draw_delta) // (4 * a)
            if math.gcd(a, bb, c) == 1:
                return QuadraticIrrational.of(a, bb, draw_delta)
    return None


irrationals = st.builds(
    random_irrational,
    st.sampled_from(DISCS),
    st.integers(-60, 60).filter(bool),
    st.integers(-200, 200),
).filter(lambda x: x is not None)


def test_make_discriminant_examples():
    d = make_discriminant(84)
    assert (d.d, d.f, d.sigma) == (21, 2, 0)
    d = make_discriminant(21)
    assert (d.d, d.f, d.sigma) == (21, 1, 1)
    d = make_discriminant(-12)
    assert (d.d, d.f) == (-3, 2)
    assert make_discriminant(4 * 9 * 8).f == 6


@pytest.mark.parametrize("bad", [22, 23, 0, 1, 16, -1, 4])
def test_make_discriminant_rejects(bad):
    with pytest.raises(ValueError):
        make_discriminant(bad)


def test_fundamental_decomposition_is_consistent():
    for D in list(range(-2000, 0)) + list(range(2, 2000)):
        if D % 4 not in (0, 1) or is_square(D):
            continue
        disc = make_discriminant(D)
        assert disc.f ** 2 * disc.d == D and is_fundamental(disc.d)


def test_irrational_validation():
    with pytest.raises(ValueError):
        QuadraticIrrational.of(2, 1, 21)  # (1 - 21)/8 not integral
    with pytest.raises(ValueError):
        QuadraticIrrational.of(2, 2, 84)  # gcd(2, 2, -10) = 2
    with pytest.raises(ValueError):
        QuadraticIrrational.of(0, 1, 21)


def test_omega_examples():
    assert omega(21).form == (1, 1, -5)
    w = omega(84)
    assert (w.a, w.b, w.floor()) == (1, 0, 4)
    assert (omega(208).b, omega(208).c) == (0, -52)


def _floor_oracle(xi):
    # floor((b + sqrt D) / 2a) via a high precision fixed point value of sqrt D
    scale = 10**40
    root = isqrt(xi.delta * scale * scale)
    return math.floor(Fraction(xi.b * scale + root, 2 * xi.a * scale))


@settings(max_examples=300)
@given(irrationals)
def test_floor_matches_high_precision(xi):
    assert xi.floor() == _floor_oracle(xi)
    conj = QuadraticIrrational(-xi.a, -xi.b, xi.disc)
    assert xi.conjugate_floor() == _floor_oracle(conj)


def test_cf_step_examples():
    n, nxt = cf_step(omega(21))
    assert n == 2 and is_reduced(nxt)
    n, nxt = cf_step(omega(84))
    assert n == 4 and nxt.form == (5, 8, -1)


@settings(max_examples=300)
@given(irrationals)
def test_cf_step_preserves_primitivity_and_inverts(xi):
    y = xi
    for _ in range(30):
        n, z = cf_step(y)
        assert math.gcd(*z.form) == 1 and z.delta == y.delta
        # 0 < y - n < 1, so the next irrational exceeds 1
        assert n == y.floor() and z.floor() >= 1
        y = z


def _pq_expansion(N, count):
    """Continued fraction of sqrt(N) by the classical P, Q recurrence."""
    a0 = isqrt(N)
    P, Q, out = 0, 1, []
    for _ in range(count):
        a = (a0 + P) // Q
        out.append(a)
        P = a * Q - P
        Q = (N - P * P) // Q
    return out


@pytest.mark.parametrize("N", [2, 3, 7, 13, 21, 61, 94, 109, 151, 817, 1897])
def test_cf_of_sqrt_matches_pq_recurrence(N):
    w = QuadraticIrrational.of(1, 0, 4 * N)
    cf = cf_expand(w)
    assert cf.terms(60) == _pq_expansion(N, 60)


def test_cf_examples():
    cf = cf_expand(omega(84))
    assert cf.preperiod == (4,) and cf.period == (1, 1, 2, 1, 1, 8)
    cf = cf_expand(omega(21))
    assert cf.k == 1 and cf.l % 2 == 0 and hirzebruch_sum(cf) == 2
    assert psi(omega(84)) == 6 and psi(omega(321)) == 18 and psi(omega(5)) == 0


def _convergent(terms):
    value = Fraction(terms[-1])
    for v in reversed(terms[:-1]):
        value = v + 1 / value
    return value


def _below(x, xi):
    """Exact test of x < xi."""
    v = 2 * xi.a * x - xi.b
    if xi.a > 0:
        return v < 0 or v * v < xi.delta
    return v > 0 and v * v > xi.delta


@settings(max_examples=200)
@given(irrationals)
def test_cf_roundtrip(xi):
    # consecutive convergents bracket xi
    terms = cf_expand(xi).terms(25)
    for n in (20, 23):
        a, b = _convergent(terms[:n + 1]), _convergent(terms[:n + 2])
        assert _below(min(a, b), xi) and not _below(max(a, b), xi)


@settings(max_examples=300)
@given(irrationals)
def test_purely_periodic_iff_reduced(xi):
    assert (cf_expand(xi).k == 0) == is_reduced(xi)


@settings(max_examples=300)
@given(irrationals)
def test_psi_flips_under_one_step(xi):
    assert psi(cf_step(xi)[1]) == -psi(xi)


@settings(max_examples=300)
@given(irrationals)
def test_psi_stable_when_preperiod_extended(xi):
    cf = cf_expand(xi)
    longer = CFExpansion(cf.preperiod + cf.period[:1], cf.period[1:] + cf.period[:1])
    assert hirzebruch_sum(longer) == hirzebruch_sum(cf)


def test_all_reduced_of_small_discriminants_purely_periodic():
    for D in DISCS[:200]:
        for xi in enumerate_reduced(D):
            assert cf_expand(xi).k == 0


def test_inverse_period_law():
    for D in DISCS[:400]:
        for xi in enumerate_reduced(D):
            per = cf_expand(xi).period
            op = xi.op()
            assert is_reduced(op)
            assert cf_expand(op).period == per[:1] + tuple(reversed(per[1:]))


def test_fundamental_unit_examples():
    u = fundamental_unit(21)
    assert (u.t, u.u, u.norm, u.q, u.r) == (5, 1, 1, 2, 1)
    u = fundamental_unit(129)
    assert (u.q, u.r) == (15371, 2968)
    u = fundamental_unit(84)
    assert (u.t, u.u) == (110, 12)  # eps_21^3 = (55 + 12 sqrt 21)/... in the order of conductor 2
    assert fundamental_unit(5).norm == -1


def test_unit_minimal_by_brute_force():
    # no solution of t^2 - D u^2 = +-4 with 0 < u below the computed one (searched up to 3000)
    for D in DISCS:
        if D > 2000:
            break
        unit = fundamental_unit(D)
        assert unit.t ** 2 - D * unit.u ** 2 == 4 * unit.norm
        for u in range(1, min(unit.u, 3000)):
            for t2 in (D * u * u - 4, D * u * u + 4):
                r = math.isqrt(t2)
                assert r * r != t2, (D, u)


def test_unit_index_examples():
    assert unit_index(21, 1) == 1
    assert unit_index(21, 2) == 3  # eps_21 = (5 + sqrt 21)/2 is half-integral
    assert unit_index(33, 2) == 1  # eps_33 = 23 + 4 sqrt 33 already integral
    with pytest.raises(ValueError):
        unit_index(84, 2)


def test_unit_power_matches_index():
    for d in (5, 13, 21, 29, 77, 133, 817):
        base = fundamental_unit(d)
        n = unit_index(d, 2)
        T, U = unit_power(base, n)
        small = fundamental_unit(4 * d)
        assert (T, U) == (small.t, 2 * small.u)


def test_large_units_stay_exact():
    base = fundamental_unit(1257)
    T, U = unit_power(base, 3)
    assert T * T - 1257 * U * U == 4 * base.norm ** 3
    assert (base.q, base.r) == (98539, 5720)
