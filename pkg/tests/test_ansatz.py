import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moment_cruncher import oracle
from moment_cruncher.ansatz import (PROVED, SEMI, expand_at_infinity, guess_in_n_and_r,
                                    guess_in_n_and_rs, guess_poly, interpolate)
from moment_cruncher.errors import NoFit, NotEnoughPoints
from moment_cruncher.exact import Poly

n = Poly.x()
FAIR = {1: Q(1, 2), -1: Q(1, 2)}


def test_guess_square():
    poly, cert = guess_poly([(k, k * k) for k in range(1, 9)], 3, 5)
    assert poly == n * n and cert.fitted_degree == 2
    assert cert.held_out_matches == 5 and cert.status == SEMI


def test_guess_rejects_non_polynomial():
    with pytest.raises(NoFit):
        guess_poly([(k, 3 - Q(2, k)) for k in range(1, 9)], 2, 5)


def test_fair_coin_m4_from_enumeration():
    data = [(k, oracle.moments_by_enumeration(oracle.iid_sum(FAIR, k), 4).central[4]) for k in range(1, 13)]
    poly, cert = guess_poly(data, 4, 5)
    assert poly == 3 * n * n - 2 * n
    for k in (13, 14):
        assert poly(k) == oracle.moments_by_enumeration(oracle.iid_sum(FAIR, k), 4).central[4]


def test_not_enough_points():
    with pytest.raises(NotEnoughPoints):
        guess_poly([(1, 1), (2, 2)], 3, 5)


def test_n0_filters_transients():
    data = [(k, 7 if k < 4 else 2 * k + 1) for k in range(1, 15)]
    with pytest.raises(NoFit):
        guess_poly(data, 3, 5)
    poly, cert = guess_poly(data, 3, 5, n0=4)
    assert poly == 2 * n + 1 and cert.points_used[0] == 4


def test_certificate_status():
    data = [(k, k ** 3 - k) for k in range(0, 12)]
    _, cert = guess_poly(data, 5, 5)
    assert cert.status == SEMI
    _, cert = guess_poly(data, 5, 5, degree_bound=3)
    assert cert.status == PROVED


def test_expand_at_infinity_examples():
    e = expand_at_infinity(3 * n * n - 2 * n, n * n, 1)
    assert e.coefficient(0) == 3 and e.coefficient(1) == -2
    e = expand_at_infinity(n, n + 1, 2)
    assert [e.coefficient(i) for i in range(3)] == [1, -1, 1]
    assert expand_at_infinity(Poly((1,)), n * n, 2).leading_power == 2
    assert expand_at_infinity(n * n, n, 1).limit() is None


def _fair_moment_polys(r_max):
    # m_{2r}(n) for the fair +-1 walk, fitted from exact walk distributions
    polys = {}
    for j in range(2, 2 * r_max + 2):
        data = [(k, oracle.moments_by_enumeration(oracle.iid_sum(FAIR, k), j).central[j]) for k in range(1, j + 8)]
        polys[j] = guess_poly(data, j, 5)[0]
    return {r: (polys[2 * r], polys[2 * r + 1]) for r in range(1, r_max + 1)}, polys[2]


def test_guess_in_n_and_r_fair_coin():
    mp, var = _fair_moment_polys(4)
    even, odd = guess_in_n_and_r(mp, var, 1, 4)
    assert even.c(0) == Poly((1,), "r")
    assert even.c(1)(2) == Q(-2, 3)
    assert all(f.ok and f.poly.is_zero() for f in odd.coefficients)
    assert "(2r-1)!!" in even.render()
    js = even.to_json()
    assert js["class"] == "even" and js["coefficients"][0]["rCoefficients"] == ["1"]


def test_stage1_round_trip():
    mp, var = _fair_moment_polys(3)
    K = 3
    for r, (m_even, _) in mp.items():
        e = expand_at_infinity(m_even, var ** r, K)
        # exact remainder num/den - truncation is O(n^-(K+1))
        M = e.leading_power + len(e.coeffs) - 1
        trunc = sum((Poly((c,)) * n ** (M - e.leading_power - k) for k, c in enumerate(e.coeffs)), Poly(()))
        rem = expand_at_infinity(m_even * n ** M - var ** r * trunc, var ** r * n ** M, 0)
        assert rem.is_zero() or rem.leading_power >= K + 1
        for k in (50, 101):
            assert m_even(k) / var(k) ** r - e.truncated_value(k) == (m_even * n ** M - var ** r * trunc)(k) / (var ** r * n ** M)(k)


def test_guess_in_n_and_rs_independent_pair():
    # product structure: m_{i,j}(n) = m_i(n) * m_j(n) for independent fair walks
    mp, var = _fair_moment_polys(2)
    single = {0: Poly((1,)), 1: Poly(()), 2: var}
    for r, (a, b) in mp.items():
        single[2 * r], single[2 * r + 1] = a, b
    mixed = {(i, j): single[i] * single[j] for i in range(6) for j in range(6)}
    out = guess_in_n_and_rs(mixed, var, var, 1, 2)
    c0 = out[0, 0].c(0)
    assert all(c0.evaluate((a, b)) == 1 for a in range(3) for b in range(3))
    for cls in ((1, 0), (0, 1), (1, 1)):
        assert all(f.ok and f.poly.is_zero() for f in out[cls].coefficients)


def test_random_recovery_and_rejection():
    rng = random.Random(7)
    for _ in range(30):
        coeffs = [Q(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rng.randint(1, 7))]
        p = Poly(tuple(coeffs))
        poly, cert = guess_poly([(k, p(k)) for k in range(0, 13)], 6, 5)
        assert poly == p and cert.status == SEMI


@settings(max_examples=50, deadline=None)
@given(st.lists(st.fractions(max_denominator=20), min_size=6, max_size=14), st.integers(0, 5))
def test_soundness(values, max_deg):
    data = list(enumerate(values))
    try:
        poly, cert = guess_poly(data, max_deg, 2)
    except (NoFit, NotEnoughPoints):
        return
    assert all(poly(x) == y for x, y in data)
    assert cert.status == SEMI
    assert guess_poly(data, max_deg, 2) == (poly, cert)


def test_interpolate():
    assert interpolate([(0, 1), (1, 3), (2, 7)]) == n * n + n + 1
