from fractions import Fraction

import numpy as np
import pytest

from latticelab.context import SeriesError
from latticelab.qseries import (
    I,
    EtaQuotient,
    GaussQ,
    QExpansion,
    check_series_identity,
    coefficients,
    eta_product_coefficients,
    eta_quotient_series,
    eta_series,
    g_product_parts,
    q_monomial,
    series_arith,
    theta_series,
    twist_by_i,
)


def brute_eta_product(levels: dict, order: int) -> list:
    """prod_j prod_n (1 - q^(j n))^r_j as an integer coefficient list (no q-power prefactor)."""
    a = [0] * order
    a[0] = 1
    for j, r in levels.items():
        for _ in range(r):
            for n in range(1, order):
                m = j * n
                if m >= order:
                    break
                for i in range(order - 1, m - 1, -1):
                    a[i] -= a[i - m]
    return a


def test_pentagonal_exponents():
    e = eta_series(1, 5)
    assert e.coeff(Fraction(1, 24)) == 1
    assert e.coeff(Fraction(25, 24)) == -1
    assert e.coeff(Fraction(49, 24)) == -1
    assert e.coeff(Fraction(73, 24)) == 0


def test_eta_product_matches_brute_force():
    s = eta_quotient_series({3: 1, 5: 3}, 50)
    a = brute_eta_product({3: 1, 5: 3}, 50)
    shift = Fraction(18, 24)
    for n in range(49):
        assert s.coeff(shift + n) == a[n]


def test_b33_of_level_eight_form():
    a = coefficients(eta_quotient_series({8: 5, 16: -1}, 40))
    assert a[1] == 1
    assert a[3] == 0 and a[11] == 0
    assert a[33] == -8


def test_theta_e1sq_over_e2():
    s = theta_series("e1sq_over_e2", 20)
    want = {0: 1, 1: -2, 4: 2, 9: -2, 16: 2}
    for n in range(20):
        assert s.coeff(n) == want.get(n, 0)


def test_theta_kinds_match_eta_quotients():
    N = 120
    assert check_series_identity(theta_series("e1sq_e4sq_over_e2", N), eta_quotient_series({1: 2, 4: 2, 2: -1}, N), N)["equal"]
    assert check_series_identity(theta_series("weight32_cm", N), eta_quotient_series({3: 1, 15: 3}, N), N)["equal"]
    assert check_series_identity(theta_series("phi", N), eta_quotient_series({2: 5, 1: -2, 4: -2}, N), N)["equal"]


def test_inverse_is_identity():
    e = eta_series(1, 60)
    one = e * series_arith("div", q_monomial(0, 1, 60), e)
    assert check_series_identity(one.truncate(50), q_monomial(0, 1, 50), 50)["equal"]


def test_products_compose():
    # e_1^2 e_2^2 = (e_1^2/e_2) e_2^3
    N = 80
    lhs = eta_quotient_series({1: 2, 2: 2}, N)
    rhs = eta_quotient_series({1: 2, 2: -1}, N) * eta_quotient_series({2: 3}, N)
    assert check_series_identity(lhs, rhs, N)["equal"]


def test_substitute_q_power():
    f = theta_series("f_minus", 40)
    f3 = series_arith("substitute_q_power", f, 3)
    assert f3.precision == 120
    e3 = eta_series(3, 100)
    aligned = q_monomial(Fraction(3, 24), 1, 100) * f3.truncate(100)
    assert check_series_identity(aligned, e3, 100)["equal"]


def test_mismatch_reported():
    N = 60
    a = eta_series(1, N)
    b = a + q_monomial(50, 1, N)
    res = check_series_identity(a, b, N)
    assert res == {"equal": False, "first_mismatch": Fraction(50)}


def test_order_beyond_truncation():
    with pytest.raises(SeriesError):
        check_series_identity(eta_series(1, 10), eta_series(1, 10), 20)


def test_g_product_literal_vs_corrected():
    order = 40
    ph = twist_by_i(theta_series("phi", 20))
    g = series_arith("substitute_q_power", ph, 2) * eta_quotient_series({8: 3}, order)
    a = coefficients(g)
    assert a[1] == 1 and a[3] == 2 * I and a[9] == -1 and a[11] == -6 * I
    printed = eta_quotient_series({8: 5, 16: -1}, order) + 2 * I * eta_quotient_series({32: 2, 8: 3, 16: -1}, order)
    fixed = eta_quotient_series({8: 1, 16: 5, 32: -2}, order) + 2 * I * eta_quotient_series({32: 2, 8: 3, 16: -1}, order)
    assert check_series_identity(g, printed, order)["first_mismatch"] == 9
    assert check_series_identity(g, fixed, order)["equal"]


def test_g_parts():
    E, O = g_product_parts(30)
    assert E.coeff(0) == 1 and O.coeff(1) == -1


def test_json_round_trip():
    s = eta_series(1, 10) * (1 + I) + q_monomial(Fraction(1, 3), Fraction(2, 7), 10)
    assert QExpansion.from_json(s.to_json()) == s


def test_gaussq_arithmetic():
    z = GaussQ(1, 2) * GaussQ(3, -1)
    assert (z.re, z.im) == (5, 5)
    assert I * I == -1


def test_immutable():
    s = eta_series(1, 5)
    with pytest.raises(AttributeError):
        s.order = 3


def test_constant_coefficients():
    a = coefficients(q_monomial(0, 1, 10), normalize_leading=False)
    assert a[0] == 1 and all(c == 0 for c in a[1:])


def test_eta_quotient_leading_exponent():
    assert EtaQuotient.of({1: 1, 11: 1}).leading_exponent == Fraction(12, 24)


def test_numpy_coefficients_match_exact():
    fast = eta_product_coefficients({3: 1, 5: 1, 1: 1, 15: 1}, 300)
    exact = coefficients(eta_quotient_series({1: 1, 3: 1, 5: 1, 15: 1}, 300))
    assert fast.dtype == np.int64
    assert list(fast[:300]) == list(exact[:300])
