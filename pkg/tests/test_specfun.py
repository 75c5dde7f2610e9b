from fractions import Fraction

import mpmath as mp
import pytest

from latticelab.context import DomainError, PrecisionContext
from latticelab.specfun import (
    R_fn,
    bloch_wigner_D,
    catalan_oracle,
    const_A,
    const_A_reflected,
    const_B,
    gamma_fn,
    hyp2f1_on_cut,
    hyp4f3_log_family,
    integrate_path,
    pfq,
    polylog,
    ramanujan_catalan_series,
    s_factor,
)

from conftest import close

# Catalan's constant, 40 digits (OEIS A006752)
CATALAN = "0.9159655941772190150546035149323841107741"
# max of the Bloch-Wigner function, D(e^(i pi/3)) (OEIS A143298)
D_MAX = "1.014941606409653625021202554274520285462"


def test_pfq_zero_argument(ctx):
    assert pfq([0.5, 0.5, 0.5], [1, 1.5], 0, ctx) == 1


def test_pfq_matches_partial_sums():
    ctx = PrecisionContext(30)
    with mp.workdps(50):
        a = [mp.mpf(4) / 3, mp.mpf(5) / 3, 1, 1]
        b = [2, 2, 2]
        z = mp.mpf(1) / 2
        s, t = mp.mpf(0), mp.mpf(1)
        for n in range(400):
            s += t
            t *= (a[0] + n) * (a[1] + n) * (a[2] + n) * (a[3] + n) / ((b[0] + n) ** 3 * (n + 1)) * z
        assert close(pfq(a, b, z, ctx), s, 30)


def test_pfq_rejects_outside_disk(ctx):
    with pytest.raises(DomainError):
        pfq([1, 1, 1], [2, 2], 2, ctx)


def test_pfq_bad_lower_parameter(ctx):
    with pytest.raises(DomainError):
        pfq([1], [-2], 0.5, ctx)


def test_hyp2f1_zero_and_lemniscate(ctx):
    assert hyp2f1_on_cut(0.5, 0.5, 1, 0, ctx=ctx) == 1
    with mp.workdps(40):
        # 2F1(1/2,1/2;1;1/2) = 2K(1/sqrt2)/pi = Gamma(1/4)^2 / (2 pi^(3/2))
        ref = mp.gamma(mp.mpf(1) / 4) ** 2 / (2 * mp.pi ** mp.mpf(1.5))
        assert close(hyp2f1_on_cut(0.5, 0.5, 1, mp.mpf(1) / 2, ctx=ctx), ref, 25)


def test_hyp2f1_series_at_09():
    ctx = PrecisionContext(20)
    with mp.workdps(40):
        a, b = mp.mpf(1) / 3, mp.mpf(2) / 3
        s, t = mp.mpf(0), mp.mpf(1)
        for n in range(3000):
            s += t
            t *= (a + n) * (b + n) / (n + 1) ** 2 * mp.mpf("0.9")
        assert close(hyp2f1_on_cut(a, b, 1, mp.mpf("0.9"), ctx=ctx), s, 20)


def test_hyp2f1_branch_jump(ctx):
    with mp.workdps(ctx.dps):
        al = 3 + 2 * mp.sqrt(2)
        up = hyp2f1_on_cut(0.5, 0.5, 1, al, "above", ctx)
        lo = hyp2f1_on_cut(0.5, 0.5, 1, al, "below", ctx)
        assert close(up - lo, 2j * mp.hyp2f1(0.5, 0.5, 1, 1 - al), 25)
        assert close(up, mp.conj(lo), 25)


def test_hyp2f1_bad_side(ctx):
    with pytest.raises(ValueError):
        hyp2f1_on_cut(0.5, 0.5, 1, 2, "sideways", ctx)


def test_4f3_continuation_agrees_inside_disk():
    ctx = PrecisionContext(25)
    with mp.workdps(40):
        for which, up in (("half", [1.5, 1.5, 1, 1]), ("third", [mp.mpf(4) / 3, mp.mpf(5) / 3, 1, 1])):
            for w in (mp.mpf("0.3"), mp.mpf("-0.7"), mp.mpc("0.2", "0.5")):
                assert close(hyp4f3_log_family(which, w, ctx), pfq(up, [2, 2, 2], w, ctx), 25)


def test_gamma_half_squared(ctx):
    with mp.workdps(ctx.dps):
        assert close(gamma_fn(mp.mpf(1) / 2, ctx) ** 2, mp.pi, 25)


def test_const_A_two_ways():
    ctx = PrecisionContext(30)
    assert close(const_A(ctx), const_A_reflected(ctx), 30)
    assert const_B(ctx) > 0


def test_s_factor():
    assert s_factor(1) == 1
    assert s_factor(-1) == Fraction(-1, 2)
    assert s_factor(7.5) == 1
    with pytest.raises(DomainError):
        s_factor(0)


def test_polylog_boundaries(ctx):
    assert polylog(2, 0, ctx) == 0
    with mp.workdps(ctx.dps):
        assert close(polylog(2, 1, ctx), mp.pi ** 2 / 6, 25)
        assert close(mp.im(polylog(2, 1j, ctx)), CATALAN, 25)
        assert close(mp.im(polylog(2, 1j, ctx)), ramanujan_catalan_series(ctx), 25)


def test_polylog_li4_half_series():
    ctx = PrecisionContext(30)
    with mp.workdps(45):
        s = sum(mp.mpf(2) ** -n / mp.mpf(n) ** 4 for n in range(1, 200))
        assert close(polylog(4, mp.mpf(1) / 2, ctx), s, 30)


def test_polylog_cut_needs_side(ctx):
    with pytest.raises(DomainError):
        polylog(2, 3, ctx)
    with mp.workdps(ctx.dps):
        a, b = polylog(2, 3, ctx, "above"), polylog(2, 3, ctx, "below")
        assert close(a - b, 2j * mp.pi * mp.log(3), 25)


def test_bloch_wigner(ctx):
    assert bloch_wigner_D(0.3, ctx) == 0
    assert bloch_wigner_D(-4, ctx) == 0
    with mp.workdps(ctx.dps):
        assert close(bloch_wigner_D(mp.expjpi(mp.mpf(1) / 3), ctx), D_MAX, 25)
        z = mp.mpc("0.4", "1.3")
        assert close(bloch_wigner_D(z, ctx), -bloch_wigner_D(mp.conj(z), ctx), 25)
    with pytest.raises(DomainError):
        bloch_wigner_D(1, ctx)


def test_R_fn_vanishes_on_unit_circle_reality(ctx):
    # L = log|z| = 0 on |z| = 1, so every term carries a zero factor
    assert R_fn(1j, ctx) == 0
    assert R_fn(-1, ctx) == 0
    with pytest.raises(DomainError):
        R_fn(0, ctx)


def test_integrate_path(ctx):
    with mp.workdps(ctx.dps):
        assert close(integrate_path(lambda u: 1 / u, [mp.mpf(1) / 2, 1], ctx), mp.log(2), 25)
        # closed loop around 0
        loop = [1, 1j, -1, -1j, 1]
        assert close(integrate_path(lambda u: 1 / u, loop, ctx), 2j * mp.pi, 20)


def test_catalan():
    ctx = PrecisionContext(30)
    assert close(catalan_oracle(ctx), CATALAN, 30)
    assert close(ramanujan_catalan_series(ctx), CATALAN, 30)
