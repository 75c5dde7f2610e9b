from fractions import Fraction

import mpmath as mp
import pytest

from latticelab.context import DomainError, PrecisionContext
from latticelab.theta import (
    ThetaKind,
    class_invariants,
    clear_cache,
    eta_inverted,
    eta_level,
    eta_product,
    f_minus,
    phi,
    psi,
    ray_point,
    sig3,
    theta_eval,
)

from conftest import close


def test_values_at_zero(ctx):
    assert phi(0, ctx) == 1 and psi(0, ctx) == 1 and f_minus(0, ctx) == 1


def test_phi_at_e_minus_pi(ctx):
    # phi(e^-pi) = pi^(1/4) / Gamma(3/4)
    with mp.workdps(ctx.dps):
        assert close(phi(mp.exp(-mp.pi), ctx), mp.pi ** mp.mpf(0.25) / mp.gamma(mp.mpf(3) / 4), 25)


def test_eta_at_i(ctx):
    # eta(i) = Gamma(1/4) / (2 pi^(3/4)), and both branches agree at the fixed point
    with mp.workdps(ctx.dps):
        ref = mp.gamma(mp.mpf(1) / 4) / (2 * mp.pi ** mp.mpf(0.75))
        assert close(eta_inverted(1, 1, ctx), ref, 25)
        assert close(eta_product({1: 1}, 1, ctx, "direct"), eta_product({1: 1}, 1, ctx, "inverted"), 25)


def test_inversion_small_t():
    ctx = PrecisionContext(25)
    with mp.workdps(60):
        q = mp.exp(-2 * mp.pi * mp.mpf("0.01"))
        # direct product, plenty of terms for |q| = e^(-0.0628)
        direct = q ** (mp.mpf(1) / 24) * mp.nprod(lambda n: 1 - q ** n, [1, mp.inf])
    assert close(eta_inverted(1, mp.mpf("0.01"), ctx), direct, 25)


def test_eta_product_branches_small_t():
    ctx = PrecisionContext(25)
    f = {1: 1, 3: 1, 5: 1, 15: 1}
    assert close(eta_product(f, mp.mpf("0.02"), ctx, "direct"), eta_product(f, mp.mpf("0.02"), ctx, "inverted"), 25)


def test_eta_level_matches_product(ctx):
    with mp.workdps(ctx.dps):
        q = mp.mpf("0.3")
        assert close(eta_level(4, q, ctx), q ** (mp.mpf(4) / 24) * f_minus(q ** 4, ctx), 25)


def test_cubic_relation(ctx):
    q = mp.mpc("0.1", "0.2")
    with mp.workdps(ctx.dps):
        assert close(sig3("a", q, ctx) ** 3, sig3("b", q, ctx) ** 3 + sig3("c", q, ctx) ** 3, 25)


def test_c_product(ctx):
    q = mp.mpf("0.3")
    with mp.workdps(ctx.dps):
        lhs = sig3("c", q, ctx) ** 3 / (27 * q)
        rhs = f_minus(q ** 3, ctx) ** 9 / f_minus(q, ctx) ** 3
        assert close(lhs, rhs, 25)


def test_jacobi_identity_phi(ctx):
    q = mp.mpc("0.3", "0.4")
    with mp.workdps(ctx.dps):
        assert close(phi(q, ctx) ** 4, phi(-q, ctx) ** 4 + 16 * q * psi(q * q, ctx) ** 4, 25)


def test_domain(ctx):
    with pytest.raises(DomainError):
        phi(1, ctx)
    with pytest.raises(ValueError):
        ThetaKind("nope")
    with pytest.raises(ValueError):
        ThetaKind("eta_level", 0)


def test_memo_consistent(ctx):
    clear_cache()
    q = mp.mpf("0.45")
    a = theta_eval(ThetaKind("psi"), q, ctx)
    b = theta_eval(ThetaKind("psi"), q, ctx, memo=False)
    assert a == b


def test_ray_point_exact(ctx):
    assert ray_point(Fraction(1, 2), 0.5, ctx) == mp.mpc(0, 0.5)
    assert ray_point(1, 0.5, ctx) == -0.5
    with mp.workdps(ctx.dps):
        assert close(ray_point(Fraction(2, 3), 1, ctx), mp.expjpi(mp.mpf(2) / 3), 25)


def test_class_invariants_g1():
    ctx = PrecisionContext(30)
    p = class_invariants(1, ctx)
    assert close(p.G, 1, 25)
    assert close(p.table_value(), 4, 25)


@pytest.mark.parametrize("m,expr", [
    (3, lambda: 4 * (2 + mp.sqrt(3))),
    (15, lambda: 4 * (28 + 16 * mp.sqrt(3) + 12 * mp.sqrt(5) + 7 * mp.sqrt(15))),
])
def test_class_invariant_table(m, expr):
    ctx = PrecisionContext(30)
    with mp.workdps(ctx.dps):
        assert close(class_invariants(m, ctx).table_value(), expr(), 30)


@pytest.mark.parametrize("m", [Fraction(1, 3), 2, 5, 10])
def test_class_invariant_relation(m, ctx):
    with mp.workdps(ctx.dps):
        assert abs(class_invariants(m, ctx).relation_residual()) < mp.mpf(10) ** -25
