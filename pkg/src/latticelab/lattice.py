"""The alternating lattice sum F(a,b,c,d) and its reductions.

    F(a,b,c,d) = (a+b+c+d)^2 sum_{n in Z^4} (-1)^(n1+n2+n3+n4)
                 / (a(6n1+1)^2 + b(6n2+1)^2 + c(6n3+1)^2 + d(6n4+1)^2)^2,

summed over expanding cubes, and F(b,c) = F(1,b,c,bc).

Routes implemented here:

* :func:`F_direct` - partial cube sums (slow oracle, a few digits);
* :func:`F_eta_integral` - F = S^2 pi^2/144 int_0^oo t e_a e_b e_c e_d dt,
  exponentially convergent through the eta inversion formula;
* :func:`F_2d` - two-dimensional sums whose rows are summed in closed form;
* :func:`F_qseries`, :func:`F_special_qseries` - one-dimensional character sums;
* :func:`F_qintegral` - integrals of theta products;
* :func:`F_piecewise` - hypergeometric forms with regime switches.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Mapping

import mpmath as mp
import numpy as np

from .context import DomainError, PrecisionContext, PrecisionError
from .mahler import aux_m2_n2_ntilde, family_closed
from .qseries import _unit_part, eta_product_coefficients
from .specfun import R_fn, bloch_wigner_D, integrate_path, to_mp
from .theta import eta_inverted, f_minus, phi, psi, ray_point, sig3

__all__ = [
    "CharacterMod",
    "CHI_M3",
    "CHI_M4",
    "CHI_12",
    "LatticeSumSpec",
    "TwoDFamily",
    "DirectResult",
    "F_direct",
    "eta_product_mellin",
    "F_eta_integral",
    "L_eta",
    "F_2d",
    "F_2d_special",
    "F_qseries",
    "F_special_qseries",
    "F_qintegral",
    "F12_theta_integral",
    "F_piecewise",
    "L_value",
    "L_TABLE",
    "cusp_form_coefficients",
    "cusp_form_partial_sum",
    "certified_root",
    "F13_eisenstein",
    "F111_bloch_wigner",
    "Lf4_polylog",
]


@dataclass(frozen=True)
class CharacterMod:
    modulus: int
    table: tuple  # values at residues 0..modulus-1

    @classmethod
    def from_map(cls, modulus: int, values: Mapping[int, int]) -> "CharacterMod":
        return cls(modulus, tuple(values.get(r, 0) for r in range(modulus)))

    def __call__(self, n: int) -> int:
        return self.table[n % self.modulus]

    def is_completely_multiplicative(self) -> bool:
        M = self.modulus
        return all(self(a * b) == self(a) * self(b) for a in range(M) for b in range(M))


CHI_M3 = CharacterMod.from_map(3, {1: 1, 2: -1})
CHI_M4 = CharacterMod.from_map(4, {1: 1, 3: -1})
CHI_12 = CharacterMod.from_map(12, {1: 1, 5: -1, 7: -1, 11: 1})


def _pos(*xs):
    out = []
    for x in xs:
        x = Fraction(x) if not isinstance(x, (mp.mpf, float)) else x
        if x <= 0:
            raise DomainError("lattice-sum parameters must be positive")
        out.append(x)
    return out


# ---------------------------------------------------------------- direct sums


@dataclass(frozen=True)
class DirectResult:
    v: int
    partial: float
    damped: float


def _direct_literal(coef, v: int) -> float:
    n = np.arange(-v, v + 1)
    sq = (6 * n + 1).astype(float) ** 2
    sg = np.where(n % 2 == 0, 1.0, -1.0)
    a, b, c, d = coef
    X = (a * sq[:, None, None, None] + b * sq[None, :, None, None]
         + c * sq[None, None, :, None] + d * sq[None, None, None, :])
    S = sg[:, None, None, None] * sg[None, :, None, None] * sg[None, None, :, None] * sg[None, None, None, :]
    return float(np.sum(S / X ** 2))


def _direct_integral(coef, v: int) -> float:
    # 1/X^2 = int_0^oo u e^(-uX) du turns the cube sum into a product of
    # truncated theta sums; the integral is taken in log u
    from scipy.integrate import quad

    n = np.arange(-v, v + 1)
    sq = (6 * n + 1).astype(float) ** 2
    sg = np.where(n % 2 == 0, 1.0, -1.0)

    def integrand(s):
        u = math.exp(s)
        p = 1.0
        for a in coef:
            p *= float(np.dot(sg, np.exp(-u * a * sq)))
        return u * u * p

    lo = math.log(1e-8)
    hi = math.log(60.0 / sum(coef))
    pts = sorted({math.log(1.0 / (36.0 * a * v * v)) for a in coef} | {math.log(1.0 / (36.0 * a)) for a in coef})
    pts = [p for p in pts if lo < p < hi]
    val, _ = quad(integrand, lo, hi, points=pts or None, limit=2000, epsabs=1e-15, epsrel=1e-12)
    return val


def F_direct(a, b, c, d, v: int) -> DirectResult:
    """Cube partial sum |n_i| <= v times (a+b+c+d)^2, plus the mean with v-1.

    Small v is summed literally in lexicographic order; larger v uses the
    exact Laplace-integral form of the same finite sum.
    """
    if v < 0:
        raise ValueError("v must be >= 0")
    coef = [float(x) for x in _pos(a, b, c, d)]
    S2 = sum(coef) ** 2

    def part(w):
        if w == 0:
            return 1.0
        return S2 * (_direct_literal(coef, w) if w <= 10 else _direct_integral(coef, w))

    p = part(v)
    damped = p if v == 0 else 0.5 * (p + part(v - 1))
    return DirectResult(v, p, damped)


# ------------------------------------------------------- eta-product integrals


def _normalize_terms(terms):
    """Accept {j: r}, [(coef, {j: r})] or [(coef, [(j, r), ...])]."""
    if isinstance(terms, Mapping):
        terms = [(1, terms)]
    out = []
    for coef, fac in terms:
        items = fac.items() if isinstance(fac, Mapping) else fac
        c = Counter()
        for j, r in items:
            c[Fraction(j)] += int(r)
        out.append((coef, {j: r for j, r in c.items() if r}))
    return out


def eta_product_mellin(terms, s: int, ctx: PrecisionContext | None = None, t0=None):
    """int_0^oo t^(s-1) H(t) dt where H = sum coef * prod_j e_j^(r_j) at q = e^(-2 pi t).

    The range is split at t0.  Above t0 the integral is summed termwise from
    the q-expansion, using int_{t0}^oo t^(s-1) e^(-lam t) dt = Gamma(s, lam t0)/lam^s;
    below t0 the integrand is evaluated through the eta inversion formula
    and integrated by tanh-sinh quadrature.  Levels may be rational.
    """
    ctx = ctx or PrecisionContext()
    terms = _normalize_terms(terms)
    den = reduce(lambda x, y: x * y // math.gcd(x, y), [j.denominator for _, f in terms for j in f], 1)
    scaled = []
    for coef, fac in terms:
        ifac = {int(j * den): r for j, r in fac.items()}
        if sum(r * j for j, r in ifac.items()) <= 0:
            raise DomainError("eta product does not vanish at the cusp oo")
        if sum(Fraction(r, j) for j, r in ifac.items()) <= 0:
            raise DomainError("eta product does not vanish at the cusp 0")
        scaled.append((coef, ifac))
    with mp.workdps(ctx.dps):
        if t0 is None:
            levels = [j for _, f in scaled for j in f]
            u0 = mp.mpf(1) / mp.sqrt(mp.mpf(max(levels)) * min(levels))
            if len(scaled) == 1:
                f = scaled[0][1]
                tot = sum(abs(r) for r in f.values())
                u0 = mp.exp(-sum(abs(r) * mp.log(j) for j, r in f.items()) / tot)
        else:
            u0 = to_mp(t0) * den
        upper = mp.mpf(0)
        for coef, f in scaled:
            e0 = Fraction(sum(r * j for j, r in f.items()), 24)
            n_terms = int((ctx.dps + 10) * math.log(10) / (2 * math.pi * float(u0))) + 10
            if n_terms > ctx.max_terms:
                raise PrecisionError("split point too small for the series part")
            unit = _unit_part(list(f.items()), n_terms)
            acc = mp.mpf(0)
            for n, c in enumerate(unit):
                if c == 0:
                    continue
                lam = 2 * mp.pi * (to_mp(e0) + n)
                acc += c * mp.gammainc(s, lam * u0) / lam ** s
            upper += to_mp(coef) * acc

        def H(t):
            v = mp.mpf(0)
            for coef, f in scaled:
                p = mp.mpf(1)
                for j, r in f.items():
                    p *= eta_inverted(j, t, ctx) ** r
                v += to_mp(coef) * p
            return t ** (s - 1) * v

        lower, err = mp.quad(H, [0, u0 / 4, u0 / 2, u0], error=True)
        if err > ctx.tol * max(1, abs(lower)) * 10 ** (ctx.guard_digits // 2):
            raise PrecisionError(f"eta-product quadrature error {mp.nstr(err, 3)}")
        return (lower + upper) * mp.mpf(den) ** s


def L_eta(terms, s: int = 2, ctx: PrecisionContext | None = None, t0=None):
    """L(f, s) = sum a_n n^-s for f a combination of eta products (q-exponents integral)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        return (2 * mp.pi) ** s / mp.gamma(s) * eta_product_mellin(terms, s, ctx, t0)


def F_eta_integral(a, b, c, d, ctx: PrecisionContext | None = None, t0=None):
    """F(a,b,c,d) = (a+b+c+d)^2 pi^2/144 int_0^oo t e_a e_b e_c e_d dt.

    Default split t0 = (abcd)^(-1/4).
    """
    ctx = ctx or PrecisionContext()
    lv = _pos(a, b, c, d)
    fac = Counter(lv)
    with mp.workdps(ctx.dps):
        S = sum(to_mp(x) for x in lv)
        return S ** 2 * mp.pi ** 2 / 144 * eta_product_mellin(dict(fac), 2, ctx, t0)


# ------------------------------------------------------------ 2D reductions


@dataclass(frozen=True)
class TwoDFamily:
    tag: str
    x: object

    def __post_init__(self):
        if self.tag not in ("F12", "F14", "F22", "F111"):
            raise ValueError(f"unknown family {self.tag!r}")
        if to_mp(self.x) <= 0:
            raise DomainError("x must be positive")


def _row(r: int, M: int, y):
    """sum over all integers m = r (mod M) of m / (m^2 + y^2)^2, in closed form."""
    if y == 0:
        a = mp.mpf(r) / M
        return (mp.zeta(3, a) - mp.zeta(3, 1 - a)) / M ** 3
    w = mp.pi * mp.mpc(r, -y) / M
    return (mp.pi / M) ** 2 * mp.im(1 / mp.sin(w) ** 2) / (2 * y)


def _row_chi4(y):
    # sum_{k>=0} (-1)^k (2k+1) / ((2k+1)^2 + y^2)^2
    return (_row(1, 4, y) - _row(3, 4, y)) / 2


def _sum_rows(term: Callable[[int], object], start: int, ctx, both_signs=False):
    """Sum term(n) for n >= start (and n <= -1 if both_signs) until terms die out."""
    total = mp.mpf(0)
    tol = ctx.tol / 100
    small = 0
    n = start
    while True:
        t = term(n)
        if both_signs and n != 0:
            t += term(-n)
        total += t
        small = small + 1 if abs(t) < tol * max(1, abs(total)) else 0
        if small >= 3:
            return total
        n += 1
        if n > ctx.max_terms:
            raise PrecisionError("2D sum: row budget exhausted")


def F_2d(family: TwoDFamily, ctx: PrecisionContext | None = None):
    """Defining two-dimensional sum of the family, rows summed in closed form.

    F12(x), F14(x), F22(x) are the sums that equal F(1,2), F(1,4), F(2,2) at
    x = 1; F111(x) returns F(1,1,1,x)/(3+x)^2.
    """
    ctx = ctx or PrecisionContext()
    tag = family.tag
    with mp.workdps(ctx.dps):
        x = to_mp(family.x)
        if tag == "F12":
            return _sum_rows(lambda n: (-1) ** n * _row_chi4(2 * x * abs(n)), 0, ctx, both_signs=True)
        if tag == "F14":
            return 25 * _sum_rows(lambda n: (-1) ** n * _row(1, 3, x * abs(6 * n + 1) / 2) / 16, 0, ctx, True)
        if tag == "F22":
            return 9 * _sum_rows(lambda n: (-1) ** (n * (n + 1) // 2) * _row_chi4(x * (2 * n + 1) / mp.sqrt(2)) / 4,
                                 0, ctx)
        # F111
        return _sum_rows(lambda n: (-1) ** n * _row_chi4(abs(6 * n + 1) * mp.sqrt(x / 3)) / 9, 0, ctx, True)


def F_2d_special(which: str, ctx: PrecisionContext | None = None):
    """Two-dimensional sums for F(1,5,5,5), F(1,1,2,4) and F(1,2,4,4)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        if which == "F1555":
            # 16^2 sum (-1)^(n+k) (2k+1) / ((6n+1)^2 + 15(2k+1)^2)^2
            return mp.mpf(256) / 225 * _sum_rows(
                lambda n: (-1) ** n * _row_chi4(abs(6 * n + 1) / mp.sqrt(15)), 0, ctx, True)
        if which == "F1124":
            # sum_{n,k} (-1)^k (3n+1) / ((3n+1)^2 + 6k^2)^2
            return _sum_rows(lambda k: (-1) ** k * _row(1, 3, mp.sqrt(6) * abs(k)), 0, ctx, True)
        if which == "F1244":
            # 121/2 sum_{n,k} (3n+1) / (8(3n+1)^2 + 3(2k+1)^2)^2
            return mp.mpf(121) / 2 * _sum_rows(
                lambda k: _row(1, 3, mp.sqrt(mp.mpf(3) / 8) * abs(2 * k + 1)) / 64, 0, ctx, True)
        raise ValueError(f"unknown sum {which!r}")


# ------------------------------------------------------------ q-series sums


def _char_log_sum(chi, q, w, ctx, step=1, kind="abs"):
    """sum_k k chi(k) log|(1 + w q^(step k)) / (1 - w q^(step k))|."""
    tol = ctx.tol / 100
    r = abs(q) ** step
    total = mp.mpf(0)
    k = 0
    while True:
        k += 1
        c = chi(k)
        if c:
            u = w * q ** (step * k)
            total += k * c * mp.log(abs((1 + u) / (1 - u)))
        if k * r ** k * 4 / (1 - r) < tol and k * (1 - r) > 1:
            return total
        if k > ctx.max_terms:
            raise PrecisionError("q-series sum: term budget exhausted")


def F_qseries(family: TwoDFamily, ctx: PrecisionContext | None = None):
    """The family value from its exponentially convergent character sum."""
    ctx = ctx or PrecisionContext()
    tag = family.tag
    with mp.workdps(ctx.dps):
        x = to_mp(family.x)
        pi = mp.pi
        if tag == "F111":
            X = mp.sqrt(x)  # the sum computes F(1,1,1,X^2)/(3+X^2)^2
            q = mp.exp(-pi * X / mp.sqrt(12))
            return pi ** 2 / (72 * X) * _char_log_sum(CHI_M4, q, mp.expjpi(mp.mpf(1) / 6), ctx)
        if tag == "F12":
            q = mp.exp(-pi * x)
            tol = ctx.tol / 100
            s = mp.mpf(0)
            k = 0
            while True:
                k += 1
                if CHI_M4(k):
                    s += k * CHI_M4(k) * mp.log1p(q ** k)
                if k * q ** k / (1 - q) < tol and k * (1 - q) > 1:
                    break
            return -pi ** 2 / (32 * x) * (mp.log(q) + 4 * s)
        if tag == "F14":
            q = mp.exp(-pi * x / 3)
            return 25 * pi ** 2 / (72 * x) * _char_log_sum(CHI_M3, q, mp.expjpi(mp.mpf(1) / 6), ctx)
        q = mp.exp(-pi * x / mp.sqrt(8))
        return 9 * pi ** 2 / (32 * x) * _char_log_sum(CHI_M4, q, mp.expjpi(mp.mpf(1) / 4), ctx)


def F_special_qseries(which: str, ctx: PrecisionContext | None = None):
    """F(1,1,2,4), F(1,2,4,4), F(1,2,8,8), F(1,1,4,8) from their chi_{-3} sums."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        pi = mp.pi
        s2 = mp.sqrt(2)
        if which in ("F1124", "F1244"):
            q = mp.exp(-pi / mp.sqrt(6))
            if which == "F1124":
                s = _sum_simple(lambda n: n * CHI_M3(n) * mp.log1p(q ** (4 * n)), q ** 4, ctx)
                return -s2 * pi ** 2 / 81 * (4 * mp.log(q) + 9 * s)
            s = _sum_simple(lambda n: n * CHI_M3(n) * mp.log((1 + q ** n) / (1 - q ** n)), q, ctx)
            return 121 * pi ** 2 / (288 * s2) * s
        if which in ("F1288", "F1148"):
            q = mp.exp(-pi / (2 * mp.sqrt(3)))
            w = mp.expjpi(mp.mpf(1) / 4)
            if which == "F1288":
                return _char_log_sum(CHI_M3, q, w, ctx) * 19 ** 2 * pi ** 2 / (24 ** 2 * s2)
            return _char_log_sum(CHI_M3, q, w, ctx, step=2) * 49 * pi ** 2 / (72 * s2)
        raise ValueError(f"unknown sum {which!r}")


def _sum_simple(term, r, ctx):
    tol = ctx.tol / 100
    r = abs(r)
    total = mp.mpf(0)
    n = 0
    while True:
        n += 1
        total += term(n)
        if n * r ** n * 4 / (1 - r) < tol and n * (1 - r) > 1:
            return total


# --------------------------------------------------------- theta integrals


def F_qintegral(family: TwoDFamily, ctx: PrecisionContext | None = None):
    """The family value as an integral of a theta product from 0 to (a rotation of) q."""
    ctx = ctx or PrecisionContext()
    tag = family.tag
    with mp.workdps(ctx.dps):
        x = to_mp(family.x)
        pi = mp.pi
        if tag == "F111":
            X = mp.sqrt(x)
            q = mp.exp(-pi * X / mp.sqrt(12))
            f = lambda u: f_minus(u ** 3, ctx, False) ** 9 / f_minus(u, ctx, False) ** 3
            val = integrate_path(f, [0, ray_point(Fraction(1, 2), q, ctx)], ctx)
            return pi ** 2 / (24 * mp.sqrt(3) * X) * mp.im(val)
        if tag == "F12":
            # phi^2(-u) phi^4(u) - 1 = 4 sum k^2 chi_{-4}(k) u^k / (1 + u^k)
            return pi ** 3 / 32 - pi ** 2 / (32 * x) * F12_theta_integral(x, ctx)
        if tag == "F14":
            q = mp.exp(-pi * x / 3)
            f = lambda u: phi(u, ctx, False) ** 2 * psi(u * u, ctx, False) ** 4
            val = integrate_path(f, [0, ray_point(Fraction(2, 3), q, ctx)], ctx)
            return 25 * pi ** 2 / (36 * x) * mp.im(val)
        q = mp.exp(-pi * x / mp.sqrt(8))

        def f(u):
            u2 = u * u
            return (phi(-u2, ctx, False) * phi(u2 * u2, ctx, False)
                    * (3 * psi(-u2, ctx, False) ** 4 - psi(u2, ctx, False) ** 4))

        return 9 * pi ** 2 / (32 * mp.sqrt(2) * x) * integrate_path(f, [0, q], ctx)


def F12_theta_integral(x, ctx: PrecisionContext | None = None):
    """int_0^q (phi^2(-u) phi^4(u) - 1) du / u with q = e^(-pi x)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        q = mp.exp(-mp.pi * to_mp(x))

        def f(u):
            if u == 0:
                return mp.mpf(4)
            return (phi(-u, ctx, False) ** 2 * phi(u, ctx, False) ** 4 - 1) / u

        return integrate_path(f, [0, q], ctx)


# ------------------------------------------------------ piecewise formulas


def _regime(family, x, ctx):
    lo, hi = (to_mp(b) for b in (mp.mpf(1) / mp.sqrt(5), mp.sqrt(5))) if family == "F111_sq" else \
        (mp.mpf(1) / mp.sqrt(2), mp.sqrt(2))
    eps = mp.mpf(10) ** (-ctx.dps + 5)
    if abs(x - lo) < eps or abs(x - hi) < eps:
        raise DomainError(f"x = {mp.nstr(x, 10)} is a regime breakpoint of {family}")
    return 0 if x < lo else (1 if x < hi else 2)


def F_piecewise(family: str, x, ctx: PrecisionContext | None = None):
    """Hypergeometric forms of the 2D families.

    F111_sq(x) = F(1,1,1,x^2)/(3+x^2)^2 via n-tilde and n2 at a(iq), b(iq);
    F14(x) via m and m2 at phi(w q), phi(-w q), w = e^(2 pi i/3);
    F22(x) as a real integral of 2F1(1/2,1/2;1;1-u^2);
    F12(x) as pi^2/(16x) m(i f^4(-q) / (sqrt(q) f^4(-q^4))).
    """
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        x = to_mp(x)
        if x <= 0:
            raise DomainError("x must be positive")
        pi = mp.pi
        if family == "F111_sq":
            reg = _regime(family, x, ctx)
            q = mp.exp(-pi * x / mp.sqrt(12))
            iq = ray_point(Fraction(1, 2), q, ctx)
            a, b = sig3("a", iq, ctx), sig3("b", iq, ctx)
            n2 = aux_m2_n2_ntilde("n2", b ** 3 / a ** 3, ctx)
            if reg == 2:
                v = n2 / mp.sqrt(3)
            else:
                nt = aux_m2_n2_ntilde("ntilde", 3 * a / b, ctx)
                v = 3 * nt + (4 if reg == 0 else 1) * n2 / mp.sqrt(3)
            return v * pi ** 2 / (648 * x)
        if family == "F14":
            reg = _regime(family, x, ctx)
            q = mp.exp(-pi * x / 3)
            P = phi(ray_point(Fraction(2, 3), q, ctx), ctx)
            Pm = phi(ray_point(Fraction(-1, 3), q, ctx), ctx)
            m2 = aux_m2_n2_ntilde("m2", Pm ** 4 / P ** 4, ctx)
            if reg == 2:
                v = m2 / 4
            else:
                mk = family_closed("m", 4 * P ** 2 / Pm ** 2, ctx)
                v = mk + (-3 * m2 / 4 if reg == 0 else m2 / 4)
            return v * 25 * pi ** 2 / (144 * x)
        if family == "F22":
            q = mp.exp(-pi * x / mp.sqrt(8))
            u0 = phi(-q * q, ctx) ** 2 / phi(q * q, ctx) ** 2
            # u = 1 - s^2 removes the endpoint singularity at u = 1
            h = mp.mpf(1) / 2

            def f(s):
                u = 1 - s * s
                return 2 * (3 * u - 1) / mp.sqrt(u) * mp.hyp2f1(h, h, 1, 1 - u * u)

            val = integrate_path(f, [0, mp.sqrt(1 - u0)], ctx)
            return 9 * pi ** 2 / (256 * x) * val
        if family == "F12":
            q = mp.exp(-pi * x)
            k = mp.mpc(0, 1) * f_minus(q, ctx) ** 4 / (mp.sqrt(q) * f_minus(q ** 4, ctx) ** 4)
            return pi ** 2 / (16 * x) * family_closed("m", k, ctx)
        raise ValueError(f"unknown family {family!r}")


# --------------------------------------------------------- L-values of E_N

L_TABLE = {11: (1, 11), 14: (2, 7), 15: (3, 5), 20: (1, 5), 24: (2, 3), 27: (1, 3), 32: (1, 2), 36: (1, 1)}


def _pair(N_or_pair):
    if isinstance(N_or_pair, tuple):
        if N_or_pair not in L_TABLE.values():
            raise DomainError(f"(b,c) = {N_or_pair} is not in the conductor table")
        return next(N for N, bc in L_TABLE.items() if bc == N_or_pair), N_or_pair
    if N_or_pair not in L_TABLE:
        raise DomainError(f"conductor {N_or_pair} is not in the table")
    return N_or_pair, L_TABLE[N_or_pair]


def _levels(bc):
    b, c = bc
    A = 24 // ((1 + b) * (1 + c))
    return Counter([A, A * b, A * c, A * b * c])


def L_value(N_or_pair, s: int = 2, ctx: PrecisionContext | None = None):
    """L(E_N, s) for the eta-product cusp forms; at s = 2 this is F(b,c)."""
    ctx = ctx or PrecisionContext()
    N, bc = _pair(N_or_pair)
    if s == 2:
        b, c = bc
        return F_eta_integral(1, b, c, b * c, ctx)
    return L_eta(dict(_levels(bc)), s, ctx)


def cusp_form_coefficients(N_or_pair, nmax: int):
    """a_1..a_nmax of q prod (1-q^(An))(1-q^(Abn))(1-q^(Acn))(1-q^(Abcn)); a[0] = 0."""
    _, bc = _pair(N_or_pair)
    return eta_product_coefficients(dict(_levels(bc)), nmax)


def cusp_form_partial_sum(N_or_pair, nmax: int, s: int = 2) -> float:
    a = cusp_form_coefficients(N_or_pair, nmax).astype(float)
    n = np.arange(1, nmax + 1, dtype=float)
    return float(np.sum(a[1:] / n ** s))


# ---------------------------------------------------------------- misc


def certified_root(poly: Callable, seed, ctx: PrecisionContext | None = None, residual_tol=None):
    """Newton root of ``poly`` near ``seed``; raises unless |poly(root)| < 10^-target."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        z = mp.findroot(poly, to_mp(seed))
        tol = residual_tol or mp.mpf(10) ** (-ctx.target_digits)
        if abs(poly(z)) > tol:
            raise PrecisionError("root residual above tolerance")
        return z


def F13_eisenstein(ctx: PrecisionContext | None = None):
    """Re(1/2 sum' chi_{-3}(n) / ((3 rho m + n)^2 (3 rho' m + n))), rho = (1+i sqrt3)/2.

    Each row m != 0 is summed over n in closed form by partial fractions and
    cot/csc^2; rows decay geometrically in |m|.  Row m = 0 is 2 L(chi_{-3}, 3).
    """
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        rho = (1 + mp.sqrt(3) * mp.j) / 2
        pi = mp.pi
        # L(chi_{-3}, 3) = (zeta(3,1/3) - zeta(3,2/3)) / 27
        total = (mp.zeta(3, mp.mpf(1) / 3) - mp.zeta(3, mp.mpf(2) / 3)) / 27 * 2

        def row(m):
            al, be = 3 * rho * m, 3 * mp.conj(rho) * m
            d = be - al
            A1, A2 = -1 / d ** 2, 1 / d
            v = mp.mpf(0)
            for r, ch in ((1, 1), (2, -1)):
                ca = mp.cot(pi * (r + al) / 3)
                cb = mp.cot(pi * (r + be) / 3)
                v += ch * (A1 * (pi / 3) * (ca - cb) + A2 * (pi / 3) ** 2 / mp.sin(pi * (r + al) / 3) ** 2)
            return v

        total += _sum_rows(lambda m: row(m) if m else mp.mpf(0), 1, ctx, True)
        return mp.re(total / 2)


def F111_bloch_wigner(x, ctx: PrecisionContext | None = None):
    """(pi/(36 sqrt x)) sum chi_12(n) D(i e^(-pi n / sqrt(12 x))) = F(1,1,1,x)/(3+x)^2."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        x = to_mp(x)
        r = mp.exp(-mp.pi / mp.sqrt(12 * x))

        def term(n):
            c = CHI_12(n)
            return c * bloch_wigner_D(mp.mpc(0, r ** n), ctx) if c else mp.mpf(0)

        return mp.pi / (36 * mp.sqrt(x)) * _sum_simple(term, r, ctx)


def Lf4_polylog(ctx: PrecisionContext | None = None):
    """-(128 pi/15^3) sum chi_{-4}(n) (9 R(i q^n) + R(i q^(3n))), q = e^(-pi sqrt15/6)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        q = mp.exp(-mp.pi * mp.sqrt(15) / 6)

        def term(n):
            c = CHI_M4(n)
            if not c:
                return mp.mpf(0)
            return c * (9 * R_fn(mp.mpc(0, q ** n), ctx) + R_fn(mp.mpc(0, q ** (3 * n)), ctx))

        return -128 * mp.pi / 15 ** 3 * _sum_simple(term, q, ctx)


@dataclass(frozen=True)
class LatticeSumSpec:
    a: object
    b: object
    c: object
    d: object
    strategy: str = "eta_integral"  # or "direct:<v>"

    def __post_init__(self):
        _pos(self.a, self.b, self.c, self.d)

    def evaluate(self, ctx: PrecisionContext | None = None):
        if self.strategy.startswith("direct"):
            v = int(self.strategy.split(":", 1)[1]) if ":" in self.strategy else 200
            return F_direct(self.a, self.b, self.c, self.d, v).damped
        if self.strategy == "eta_integral":
            return F_eta_integral(self.a, self.b, self.c, self.d, ctx)
        raise ValueError(f"unknown strategy {self.strategy!r}")
