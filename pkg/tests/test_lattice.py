from fractions import Fraction

import mpmath as mp
import pytest

from latticelab.context import DomainError, PrecisionContext
from latticelab.lattice import (
    L_TABLE,
    F111_bloch_wigner,
    F12_theta_integral,
    F_2d,
    F_2d_special,
    F_direct,
    F_eta_integral,
    F_piecewise,
    F_qintegral,
    F_qseries,
    F_special_qseries,
    L_eta,
    L_value,
    TwoDFamily,
    certified_root,
    cusp_form_coefficients,
    cusp_form_partial_sum,
    eta_product_mellin,
)
from latticelab.mahler import family_closed
from latticelab.qseries import coefficients, eta_quotient_series

from conftest import close

# F(1,1) = L(E_36, 2); agreed by the eta-integral, 2D-sum and q-series routes to 40 digits
F11 = "0.9400130073882257814963021213634563"


def test_direct_zero_cube():
    r = F_direct(1, 1, 1, 1, 0)
    assert r.partial == 1.0 and r.damped == 1.0


def test_direct_literal_and_integral_agree():
    # v = 10 is summed literally, v = 11 through the Laplace form; their means straddle the limit
    a = F_direct(1, 1, 2, 2, 10).partial
    b = F_direct(1, 1, 2, 2, 11).partial
    assert abs(a - b) < 5e-3
    with pytest.raises(ValueError):
        F_direct(1, 1, 1, 1, -1)


def test_direct_converges_to_f11():
    assert abs(F_direct(1, 1, 1, 1, 200).damped - float(mp.mpf(F11))) < 1e-4


def test_direct_approaches_mahler_m1():
    with mp.workdps(30):
        m1 = 4 * mp.pi ** 2 / 15 * family_closed("m", 1, PrecisionContext(20))
    assert abs(F_direct(1, 3, 5, 15, 100).damped - float(m1)) < 1e-3


def test_eta_integral_f11(ctx):
    assert close(F_eta_integral(1, 1, 1, 1, ctx), F11, 25)


def test_f11_hypergeometric(ctx):
    from latticelab.specfun import pfq

    with mp.workdps(ctx.dps):
        rhs = mp.log(54) / 9 - pfq([mp.mpf(4) / 3, mp.mpf(5) / 3, 1, 1], [2, 2, 2], mp.mpf(1) / 2, ctx) / 81
        assert close(9 / (2 * mp.pi ** 2) * F_eta_integral(1, 1, 1, 1, ctx), rhs, 25)


def test_split_point_independence(ctx):
    with mp.workdps(ctx.dps):
        a = F_eta_integral(1, 3, 5, 15, ctx, t0=mp.mpf("0.1"))
        b = F_eta_integral(1, 3, 5, 15, ctx, t0=mp.mpf("0.2"))
    assert close(a, b, 25)


@pytest.mark.parametrize("quad,perm", [((1, 2, 3, 6), (6, 3, 1, 2)), ((1, 3, 5, 15), (15, 5, 3, 1))])
def test_permutation_and_scaling(quad, perm, ctx):
    a = F_eta_integral(*quad, ctx)
    assert close(a, F_eta_integral(*perm, ctx), 25)
    assert close(a, F_eta_integral(*[3 * x for x in quad], ctx), 25)
    assert close(a, F_eta_integral(*[Fraction(x, 7) for x in perm], ctx), 25)


def test_eta_integral_rejects_nonpositive(ctx):
    with pytest.raises((DomainError, ValueError)):
        F_eta_integral(1, -1, 1, 1, ctx)


@pytest.mark.parametrize("tag", ["F12", "F14", "F22", "F111"])
@pytest.mark.parametrize("x", [Fraction(1, 2), 1, 2])
def test_2d_vs_qseries(tag, x):
    ctx = PrecisionContext(20)
    fam = TwoDFamily(tag, x)
    assert close(F_2d(fam, ctx), F_qseries(fam, ctx), 20)


def test_2d_f12_is_f12(ctx):
    assert close(F_2d(TwoDFamily("F12", 1), ctx), F_eta_integral(1, 1, 2, 2, ctx), 25)


def test_f1555(ctx):
    v = F_2d_special("F1555", ctx)
    assert close(v, F_eta_integral(1, 5, 5, 5, ctx), 25)
    assert abs(F_direct(1, 5, 5, 5, 200).damped - float(v)) < 1e-4


def test_family_domain():
    with pytest.raises(DomainError):
        TwoDFamily("F12", 0)
    with pytest.raises(ValueError):
        TwoDFamily("F99", 1)


def test_qseries_f12_is_m4i(ctx):
    with mp.workdps(ctx.dps):
        assert close(16 / mp.pi ** 2 * F_qseries(TwoDFamily("F12", 1), ctx), family_closed("m", 4j, ctx), 25)
        assert close(27 / (2 * mp.pi ** 2) * 16 * F_qseries(TwoDFamily("F111", 1), ctx),
                     family_closed("n", 3 * mp.cbrt(2), ctx), 25)


@pytest.mark.parametrize("which,quad", [("F1124", (1, 1, 2, 4)), ("F1244", (1, 2, 4, 4)),
                                        ("F1288", (1, 2, 8, 8)), ("F1148", (1, 1, 4, 8))])
def test_special_qseries(which, quad, ctx):
    v = F_special_qseries(which, ctx)
    assert close(v, F_eta_integral(*quad, ctx), 25)
    assert abs(F_direct(*quad, 100).damped - float(v)) < 1e-3


@pytest.mark.parametrize("tag", ["F111", "F14", "F22"])
def test_qintegral(tag, ctx):
    fam = TwoDFamily(tag, Fraction(3, 2))
    assert close(F_qintegral(fam, ctx), F_qseries(fam, ctx), 25)


def test_f12_qintegral_prefactor(ctx):
    with mp.workdps(ctx.dps):
        x = mp.mpf(1)
        I = F12_theta_integral(x, ctx)
        want = F_qseries(TwoDFamily("F12", 1), ctx)
        assert close(mp.pi ** 3 / 32 - mp.pi ** 2 / (32 * x) * I, want, 25)
        assert not close(mp.pi ** 3 / 32 - mp.pi ** 2 / (16 * x) * I, want, 3)


def test_piecewise_f22_final_formula(ctx):
    with mp.workdps(ctx.dps):
        f = lambda s: 2 * (2 - 3 * s * s) / mp.sqrt(1 - s * s) * mp.hyp2f1(0.5, 0.5, 1, 1 - (1 - s * s) ** 2)
        integral = mp.quad(f, [0, mp.sqrt(2 - mp.sqrt(2))])
        assert close(256 / (9 * mp.pi ** 2) * F_piecewise("F22", 1, ctx), integral, 25)


def test_piecewise_unknown():
    with pytest.raises(ValueError):
        F_piecewise("F99", 1)


def test_l_table():
    assert L_TABLE[15] == (3, 5)
    assert L_TABLE[36] == (1, 1)
    with pytest.raises(DomainError):
        L_value(37)


def test_cusp_form_coefficients():
    a = cusp_form_coefficients(15, 500)
    exact = coefficients(eta_quotient_series({1: 1, 3: 1, 5: 1, 15: 1}, 500))
    assert a[1] == 1
    assert list(a[:500]) == list(exact[:500])


def test_partial_sum_truncation():
    # sum_{n <= N} a_n / n^2 has tail O(N^(-1/2)) at worst (Hasse bound |a_p| <= 2 sqrt p)
    ctx = PrecisionContext(20)
    F35 = float(L_value(15, 2, ctx))
    for N in (10 ** 4, 10 ** 6):
        assert abs(cusp_form_partial_sum(15, N) - F35) < 2 * N ** -0.5


def test_l_value_other_s(ctx):
    assert close(L_value((3, 5), 3, ctx), L_eta({1: 1, 3: 1, 5: 1, 15: 1}, 3, ctx), 25)


def test_eta_product_mellin_list_form(ctx):
    # duplicate levels collapse correctly in the list form
    a = L_eta([(1, [(8, 3), (4, 2), (8, -1)])], 2, ctx)
    b = L_eta({8: 2, 4: 2}, 2, ctx)
    assert close(a, b, 25)
    with mp.workdps(ctx.dps):
        assert close((2 * mp.pi) ** 2 * eta_product_mellin({4: 2, 8: 2}, 2, ctx), b, 25)


def test_certified_root(ctx):
    with mp.workdps(ctx.dps):
        r = certified_root(lambda z: z ** 2 - 2, 1.4, ctx)
        assert close(r, mp.sqrt(2), 25)


@pytest.mark.parametrize("x", [1, 4])
def test_bloch_wigner(x):
    ctx = PrecisionContext(20)
    assert close(F111_bloch_wigner(x, ctx), F_qseries(TwoDFamily("F111", x), ctx), 15)


def test_bloch_wigner_f11(ctx):
    with mp.workdps(ctx.dps):
        assert close(F111_bloch_wigner(1, ctx), mp.mpf(F11) / 16, 20)
