import mpmath as mp
import numpy as np
import pytest

from latticelab.context import DomainError, PrecisionContext
from latticelab.mahler import (
    LaurentPoly2,
    MahlerFamily,
    aux_m2_n2_ntilde,
    family_closed,
    family_direct,
    family_poly,
    m_rewrite,
    mahler_2var,
    n_rewrite,
    n_rewrite_printed,
)

from conftest import close

P12 = PrecisionContext(12)
# m(1 + y + z) = (3 sqrt3 / 4 pi) L(chi_-3, 2) (Smyth)
SMYTH = "0.3230659472194505140936365107238063945"


def grid_measure(P: LaurentPoly2, N: int = 2000) -> float:
    """Midpoint-rule mean of log|P| over the torus."""
    t = (np.arange(N) + 0.5) / N
    y = np.exp(2j * np.pi * t)[:, None]
    z = np.exp(2j * np.pi * t)[None, :]
    v = sum(complex(c) * y ** a * z ** b for (a, b), c in P.terms.items())
    return float(np.mean(np.log(np.abs(v))))


def test_constant():
    with mp.workdps(30):
        assert close(mahler_2var(LaurentPoly2.parse("5"), P12), mp.log(5), 12)


def test_smyth():
    assert close(mahler_2var(LaurentPoly2.parse("1 + y + z"), PrecisionContext(20)), SMYTH, 20)


def test_parse():
    P = LaurentPoly2.parse("3 + y + y^-1 - 2*z + z^(-1)")
    assert P.terms == {(0, 0): 3, (1, 0): 1, (-1, 0): 1, (0, 1): -2, (0, -1): 1}
    assert LaurentPoly2.parse(P.to_text()).terms == P.terms
    Q = LaurentPoly2.parse("(1+2i)*y*z - 3/2")
    assert Q.terms[(1, 1)] == 1 + 2j
    with pytest.raises(ValueError):
        LaurentPoly2.parse("y + ?")
    with pytest.raises(DomainError):
        LaurentPoly2.parse("y - y")


def test_family_poly_shapes():
    assert family_poly("m", 1).terms == LaurentPoly2.parse("1 + y + y^-1 + z + z^-1").terms
    assert family_poly("n", 2).terms == LaurentPoly2.parse("y^3 + z^3 + 1 - 2*y*z").terms
    with pytest.raises(ValueError):
        MahlerFamily("q", 1)


@pytest.mark.parametrize("tag,k", [("m", 1), ("m", 3), ("m", 0.5 + 2j), ("n", 5), ("n", -1), ("g", 7), ("r", -1)])
def test_jensen_vs_grid(tag, k):
    P = family_poly(tag, k)
    assert abs(float(mahler_2var(P, P12)) - grid_measure(P)) < 2e-4


@pytest.mark.parametrize("tag,k", [("m", 1), ("m", 3), ("m", 6), ("m", 2j), ("n", 5), ("n", -6), ("n", -1),
                                   ("n", 4 + 1j), ("g", 7), ("g", -8), ("g", 20 + 20j)])
def test_closed_form_vs_direct(tag, k):
    assert close(family_direct(tag, k, P12), family_closed(tag, k, P12), 11)


def test_n_closed_form_domain():
    with pytest.raises(DomainError):
        family_closed("n", 2, P12)
    with pytest.raises(DomainError):
        family_closed("g", 1, P12)
    with pytest.raises(DomainError):
        family_closed("m", 0, P12)
    with pytest.raises(DomainError):
        family_closed("g", 3j, P12)


def test_ntilde_differs_from_n_inside():
    # n(2^(1/3)) by quadrature is 0.4412..., n-tilde gives 0.3329...
    with mp.workdps(30):
        k = mp.cbrt(2)
    direct = family_direct("n", k, P12)
    tilde = family_closed("ntilde", k, P12)
    assert close(direct, "0.441222023874635", 12)
    assert close(tilde, "0.332972616500569", 12)


def test_n_rewrite_sign_factor():
    ctx = PrecisionContext(20)
    with mp.workdps(ctx.dps):
        k = mp.mpf(-2)
        direct = family_direct("n", k, P12)
        assert close(n_rewrite(k, ctx), direct, 11)
        assert close(n_rewrite_printed(k, ctx) * 4, n_rewrite(k, ctx), 20)
        assert close(n_rewrite_printed(2, ctx), n_rewrite(2, ctx), 20)


def test_m_rewrite_m1():
    ctx = PrecisionContext(20)
    assert close(m_rewrite(1, ctx), family_direct("m", 1, P12), 11)


def test_g_through_n_values():
    # g(k) = n(k1)/3 + 4 n(k2)/3, k1^3 = (4+k)^3/k^2, k2^3 = (k-2)^3/k
    ctx = PrecisionContext(20)
    with mp.workdps(ctx.dps):
        k = mp.mpf(7)
        k1 = mp.cbrt((4 + k) ** 3 / k ** 2)
        k2 = mp.cbrt((k - 2) ** 3 / k)
        rhs = family_closed("n", k1, ctx) / 3 + 4 * family_closed("ntilde", k2, ctx) / 3
        assert close(family_closed("g", k, ctx), rhs, 20)


def test_n2_vanishes_on_real_interval(ctx):
    assert aux_m2_n2_ntilde("n2", 0.4, ctx) == 0
    assert aux_m2_n2_ntilde("m2", 0.9, ctx) == 0
    with pytest.raises(DomainError):
        aux_m2_n2_ntilde("n2", -0.5, ctx)
