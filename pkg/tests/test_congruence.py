from fractions import Fraction

import pytest

from quadcong.classgroup import class_number, class_number_negative, class_structure
from quadcong.congruence import (
    H_value, check_class_term_congruence, check_inverse_pairing, check_unit_structure, class_terms,
    kmz_cases, prime_pairs, scan, square_root_of_p1_unit, verify_kmz, check_mod16_4p,
    check_mod16_16p, check_mod8_conductor1, check_mod8_conductor2,
)
from quadcong.quadratic import fundamental_unit, omega, psi


def test_kmz_examples():
    rep = verify_kmz(-3, -7, 1)
    assert (rep.lhs, rep.rhs_reduced, rep.rhs_classes, rep.unit_norm) == (2, 2, 2, 1) and rep.equal
    rep = verify_kmz(-3, -7, 2)
    assert (rep.lhs, rep.rhs_reduced, rep.rhs_classes, rep.delta) == (6, 6, 6, 84)
    rep = verify_kmz(-4, -8, 1)
    assert rep.equal and rep.lhs == 3


def test_kmz_with_imprimitive_lhs_denominators():
    # w(-3) w(-4) = 24 makes the prefactor 1; theta carries the rest
    rep = verify_kmz(-3, -4, 5)
    assert isinstance(rep.lhs, Fraction) and rep.equal


@pytest.mark.parametrize("args", [(-3, -3, 1), (-3, -12, 1), (5, -3, 1), (-3, -7, 0)])
def test_kmz_rejects(args):
    with pytest.raises(ValueError):
        verify_kmz(*args)


def test_kmz_cases_shape():
    cases = kmz_cases(100)
    assert (-3, -7, 1) in cases and (-3, -7, 2) in cases and (-7, -3, 1) not in cases
    assert all(abs(d1) < abs(d2) and abs(d1 * d2 * f * f) <= 100 for d1, d2, f in cases)


@pytest.mark.parametrize("p1, p2, f, H", [(3, 7, 1, 0), (3, 47, 2, 24), (19, 43, 1, 24), (3, 107, 1, 24),
                                          (3, 107, 2, 48), (7, 199, 2, 56)])
def test_H_examples(p1, p2, f, H):
    rec = H_value(p1, p2, f)
    assert rec.H == H and rec.holds_mod8


def test_H_record_fields():
    rec = H_value(3, 47, 2)
    assert (rec.n, rec.h_neg1, rec.h_neg2, rec.h_pos, rec.psi_omega, rec.theta) == (2, 1, 5, 3, 26, 3)
    assert rec.H_factored == "2^3*3" and rec.as_dict()["H"] == 24
    assert H_value(7, 11, 1).n == 6


@pytest.mark.parametrize("args", [(3, 3, 1), (5, 7, 1), (3, 15, 1), (3, 7, 3)])
def test_H_rejects(args):
    with pytest.raises(ValueError):
        H_value(*args)


def test_mod8_examples():
    for p1, p2 in [(3, 7), (3, 107), (7, 199)]:
        assert check_mod8_conductor1(p1, p2) and check_mod8_conductor2(p1, p2)


def test_mod16_for_4p():
    assert check_mod16_4p(7) and check_mod16_4p(23)
    assert class_number_negative(-23) == 3
    for bad in (3, 5, 15):
        with pytest.raises(ValueError):
            check_mod16_4p(bad)


def test_mod16_for_16p():
    assert check_mod16_16p(5) and check_mod16_16p(13) and check_mod16_16p(17)
    # h(16p) is 3 h(p) when p = 5 (mod 8) and eps_p is integral, h(p) otherwise
    for q in (5, 13, 17, 29, 37, 41, 53, 61, 101, 197):
        integral = fundamental_unit(q).t % 2 == 0
        factor = 3 if (q % 8 == 5 and integral) else 1
        assert class_number(16 * q) == factor * class_number(q), q
    with pytest.raises(ValueError):
        check_mod16_16p(7)


def test_unit_structure_examples():
    rep = check_unit_structure(3, 11)
    assert rep.ok
    eps = fundamental_unit(33)
    assert (eps.t, eps.u) == (46, 8)
    rep = check_unit_structure(3, 7)
    assert rep.ok and "t_1_mod_4" in [name for name, _, _ in rep.clauses]
    rep = check_unit_structure(7, 11)
    assert rep.ok and fundamental_unit(77).t % 2 == 1


def test_square_root_of_p1_unit():
    # eps_{4 * 21} = 55 + 12 sqrt 21 and 3 * eps = (X + Y sqrt 21)^2
    X, Y = square_root_of_p1_unit(3, 7, 55, 12)
    assert X * X + 21 * Y * Y == 165 and 2 * X * Y == 36
    assert square_root_of_p1_unit(3, 7, 56, 12) is None


def test_class_term_examples():
    terms = [t for _, _, t in class_terms(3, 47, 2)]
    assert len(terms) == 3 and all((t - 26) % 8 == 0 for t in terms)
    assert all((t - 18) % 8 == 0 for _, _, t in class_terms(3, 107, 1))
    assert [t for _, _, t in class_terms(3, 7, 1)] == [2]
    assert sorted(t for _, _, t in class_terms(19, 43, 2)) == [-18, -18, 6, 6, 54]


def test_class_terms_sum_to_kmz():
    for p1, p2, f in [(3, 7, 2), (19, 43, 2), (3, 107, 1), (7, 199, 2)]:
        total = sum(t for _, _, t in class_terms(p1, p2, f))
        assert total == verify_kmz(-p1, -p2, f).rhs_classes


def test_class_term_and_pairing_small_scan():
    for p1, p2 in prime_pairs(1600):
        for f in (1, 2):
            assert check_class_term_congruence(p1, p2, f), (p1, p2, f)
            assert check_inverse_pairing(p1, p2, f), (p1, p2, f)


def test_inverse_classes_pair_up():
    cs = class_structure(817)
    inv = [cs.inverse_cycle(i) for i in range(cs.h)]
    assert sorted(inv) == list(range(cs.h))
    assert sum(1 for i, j in enumerate(inv) if i == j) == 1


def test_prime_pairs_and_scan():
    assert prime_pairs(21) == [(3, 7)]
    assert prime_pairs(20) == []
    recs = scan(161, (1, 2))
    assert len(recs) == 20 and [r.delta for r in recs[:2]] == [21, 84]
    assert all(r.holds_mod8 and r.psi_omega % r.n == 0 for r in recs)
    h3 = [p for p in prime_pairs(1509) if class_number(p[0] * p[1]) == 3]
    assert [a * b for a, b in h3] == [321, 469, 473, 993, 1101, 1257, 1509]


def test_scan_parallel_matches_serial():
    assert scan(2000, (1, 2), jobs=2) == scan(2000, (1, 2), jobs=1)


def test_psi_of_omega_for_four_p1p2_matches_sqrt():
    for p1, p2 in prime_pairs(500):
        w = omega(4 * p1 * p2)
        assert (w.a, w.b) == (1, 0) and psi(w) == H_value(p1, p2, 2).psi_omega
