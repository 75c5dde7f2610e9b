"""Catalogue of identities with two evaluable sides, and their verification.

Each :class:`Identity` holds two closures.  Numeric closures take a
:class:`PrecisionContext` and return an mpmath number; they are always
called inside ``mp.workdps(ctx.dps)``.  Formal closures take an order and
return a :class:`QExpansion`.

Identities whose printed form fails numerically are registered literally
(``metadata['erratum']`` explains the defect) next to a ``-corrected``
variant.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Mapping

import mpmath as mp

from .context import DomainError, LatticeLabError, PrecisionContext
from .lattice import (
    F12_theta_integral,
    F13_eisenstein,
    F111_bloch_wigner,
    F_2d,
    F_2d_special,
    F_eta_integral,
    F_piecewise,
    F_qintegral,
    F_qseries,
    F_special_qseries,
    L_TABLE,
    L_eta,
    Lf4_polylog,
    TwoDFamily,
    _levels,
    certified_root,
)
from .mahler import aux_m2_n2_ntilde, family_closed, family_direct, n_rewrite_printed
from .qseries import (
    I,
    QExpansion,
    _theta_sum,
    check_series_identity,
    eta_quotient_series,
    g_product_parts,
    q_monomial,
    series_arith,
    theta_series,
    twist_by_i,
)
from .reports import VerificationReport
from .specfun import (
    catalan_oracle,
    const_A,
    const_B,
    hyp2f1_on_cut,
    hyp4f3_log_family,
    pfq,
    ramanujan_catalan_series,
    to_mp,
)
from .theta import class_invariants, f_minus, phi, psi, ray_point, sig3

__all__ = [
    "Identity",
    "GROUPS",
    "IdentityEvaluationError",
    "registry",
    "get",
    "registry_list",
    "verify",
    "run_suite",
]

GROUPS = (
    "intro",
    "mahler-list",
    "hypergeometric",
    "two-dim",
    "special-sums",
    "eisenstein",
    "class-invariants",
    "polylog",
)

GUARD = 5
MAHLER_DIGITS = 12
DEFAULT_DIGITS = 25
DEFAULT_ORDER = 200


class IdentityEvaluationError(LatticeLabError):
    def __init__(self, ident: str, side: str, exc: Exception):
        super().__init__(f"{ident}: {side} failed: {type(exc).__name__}: {exc}")
        self.ident = ident
        self.side = side
        self.cause = exc


@dataclass(frozen=True)
class Identity:
    id: str
    lhs: Callable
    rhs: Callable
    kind: str = "numeric"  # or formal_series
    status: str = "proven"  # or conjectural
    anchor: str = ""
    group: str = "intro"
    default_digits: int | None = DEFAULT_DIGITS
    default_order: int | None = None
    metadata: Mapping = field(default_factory=dict)

    @property
    def section(self) -> int:
        return GROUPS.index(self.group) + 1

    def summary(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "status": self.status,
            "group": self.group,
            "section": self.section,
            "anchor": self.anchor,
        }
        if self.kind == "numeric":
            out["default_digits"] = self.default_digits
        else:
            out["default_order"] = self.default_order
        if "erratum" in self.metadata:
            out["erratum"] = self.metadata["erratum"]
        return out


# ---------------------------------------------------------------- helpers

pi = lambda: mp.pi
h = lambda: mp.mpf(1) / 2
third = lambda: mp.mpf(1) / 3


@lru_cache(maxsize=None)
def _F_cached(quad: tuple, digits: int):
    return F_eta_integral(*quad, PrecisionContext(digits))


def F(ctx, a, b, c, d):
    return _F_cached((a, b, c, d), ctx.target_digits)


def Fbc(ctx, b, c):
    return F(ctx, 1, b, c, b * c)


def h43(which: str, w, ctx):
    """4F3(3/2,3/2,1,1;2,2,2;w) ('half') or 4F3(4/3,5/3,1,1;2,2,2;w) ('third')."""
    w = to_mp(w)
    if abs(w) < 1:
        up = [mp.mpf(3) / 2] * 2 if which == "half" else [mp.mpf(4) / 3, mp.mpf(5) / 3]
        return pfq(up + [1, 1], [2, 2, 2], w, ctx)
    return hyp4f3_log_family(which, w, ctx)


def f32_half(w, ctx):
    return pfq([h(), h(), h()], [1, mp.mpf(3) / 2], to_mp(w), ctx)


def f32_a(w, ctx):
    t = third()
    return pfq([t, t, t], [2 * t, 4 * t], to_mp(w), ctx)


def f32_b(w, ctx):
    t = third()
    return pfq([2 * t] * 3, [4 * t, 5 * t], to_mp(w), ctx)


def _mahler(tag: str, k, ctx):
    """Closed form where it is valid, direct quadrature otherwise."""
    if tag != "r":
        try:
            return family_closed(tag, k, ctx)
        except DomainError:
            pass
    return family_direct(tag, k, ctx)


def _needs_direct(tag: str, k) -> bool:
    k = complex(k)
    if tag == "r":
        return True
    if tag == "g":
        return k.imag == 0 and -4 <= k.real <= 2
    if tag == "n":
        return k.imag == 0 and 0 < k.real < 3
    return False


@lru_cache(maxsize=None)
def _theta_const(dps: int):
    """theta = (4 - 2t - 2t^2 + t^3)/(4 sqrt 2), t = -i 12^(1/4)."""
    with mp.workdps(dps):
        t = -mp.mpc(0, 1) * mp.root(12, 4)
        return (4 - 2 * t - 2 * t ** 2 + t ** 3) / (4 * mp.sqrt(2))


@lru_cache(maxsize=None)
def _z_root(digits: int):
    ctx = PrecisionContext(digits)
    return certified_root(lambda z: (z ** 2 + 3 * z + 1) ** 3 - 2 * (z ** 6 + 1), mp.mpc(-0.58, 0.56), ctx)


def _golden():
    return (1 + mp.sqrt(5)) / 2


def _F111(ctx, x):
    """F(1,1,1,x) from the two-dimensional sum."""
    x = to_mp(x)
    return (3 + x) ** 2 * F_2d(TwoDFamily("F111", x), ctx)


def _g_u(u, ctx):
    """prod_{n>=0} (1 - sqrt2 u^(2n+1) + u^(2(2n+1)))."""
    s2 = mp.sqrt(2)
    p = mp.mpf(1)
    un = u
    u2 = u * u
    while abs(un) > ctx.tol / 100:
        p *= 1 - s2 * un + un * un
        un *= u2
    return p


# ------------------------------------------------------------ formal pieces


def _eq(factors, order):
    return eta_quotient_series(factors, order)


def _sub(s: QExpansion, m: int) -> QExpansion:
    return series_arith("substitute_q_power", s, m)


def _brute_product(order) -> QExpansion:
    """prod_{n>=1} (1 - q^n) by repeated binomial multiplication."""
    n = math.ceil(Fraction(order))
    a = [0] * n
    a[0] = 1
    for m in range(1, n):
        for i in range(n - 1, m - 1, -1):
            a[i] -= a[i - m]
    return QExpansion(1, n, {i: c for i, c in enumerate(a) if c}).truncate(order)


def _f13_essential(order):
    # 1/4 sum_{j=1,2} chi_{-3}(j) sum_{m,n} ((6m+j) + 3(6n+j)) q^(((6m+j)^2 + 3(6n+j)^2)/4)
    o = Fraction(order)
    lim = 4 * o
    M = math.isqrt(int(lim)) // 6 + 2

    def gen():
        for j, ch in ((1, 1), (2, -1)):
            for m in range(-M, M + 1):
                a = 6 * m + j
                if a * a >= lim:
                    continue
                for n in range(-M, M + 1):
                    b = 6 * n + j
                    e = a * a + 3 * b * b
                    if e < lim:
                        yield Fraction(e, 4), Fraction(ch * (a + 3 * b), 4)

    return _theta_sum(gen(), o)


def _sig3_c_sum(order):
    # S = sum q^(m^2+mn+n^2+m+n), so c(q) = q^(1/3) S
    o = Fraction(order)
    M = math.isqrt(int(2 * o)) + 3

    def gen():
        for m in range(-M, M + 1):
            for n in range(-M, M + 1):
                e = m * m + m * n + n * n + m + n
                if e < o:
                    yield Fraction(e), 1

    return _theta_sum(gen(), o)


def _lambert_chi(order):
    # sum_k k^2 u^k / (1 + u^(2k)) = sum_k k^2 sum_m (-1)^m u^(k(2m+1))
    n = math.ceil(Fraction(order))

    def gen():
        for k in range(1, n):
            m = 0
            while k * (2 * m + 1) < n:
                yield Fraction(k * (2 * m + 1)), (-1) ** m * k * k
                m += 1

    return _theta_sum(gen(), order)


def _e1sq_e2_e4(order):
    o = Fraction(order)
    M = math.isqrt(int(3 * o)) + 2

    def gen():
        for n in range(-M, M + 1):
            a = (3 * n + 1) ** 2
            for k in range(-M, M + 1):
                e = Fraction(a + 6 * k * k, 3)
                if e < o:
                    yield e, (-1) ** (k % 2) * (3 * n + 1)

    return _theta_sum(gen(), o)


def _e1_e2_e4sq(order):
    o = Fraction(order)
    M = math.isqrt(int(24 * o)) + 2

    def gen():
        for n in range(-M, M + 1):
            a = 8 * (3 * n + 1) ** 2
            for k in range(0, M):
                e = Fraction(a + 3 * (2 * k + 1) ** 2, 24)
                if e < o:
                    yield e, 3 * n + 1

    return _theta_sum(gen(), o)


def _g_q_product(order):
    # q phi(i q^2) f^3(-q^8) = phi(i q^2) e_8^3
    ph = twist_by_i(theta_series("phi", Fraction(order) / 2))
    return _sub(ph, 2) * eta_quotient_series({8: 3}, order)


# ------------------------------------------------------------ the catalogue


def _mahler_side(tag, kfun):
    return lambda ctx: _mahler(tag, kfun(), ctx)


def _build() -> dict:
    reg: dict[str, Identity] = {}

    def add(id_, lhs, rhs, **kw):
        if id_ in reg:
            raise ValueError(f"duplicate identity id {id_!r}")
        reg[id_] = Identity(id_, lhs, rhs, **kw)

    def formal(id_, lhs, rhs, anchor, group, status="proven", **meta):
        add(id_, lhs, rhs, kind="formal_series", status=status, anchor=anchor, group=group,
            default_digits=None, default_order=DEFAULT_ORDER, metadata=meta)

    s2 = lambda: mp.sqrt(2)

    # ---- intro
    add("deninger",
        lambda c: family_direct("m", 1, c),
        lambda c: 15 / (4 * pi() ** 2) * L_eta({1: 1, 3: 1, 5: 1, 15: 1}, 2, c),
        status="conjectural", group="intro", default_digits=MAHLER_DIGITS,
        anchor="intro: m(1+y+1/y+z+1/z) vs 15/(4 pi^2) L(E_15, 2)")

    def _cos_double_integral(c):
        # inner integral over s by Jensen: log max(1, |root|) of z^2 + cz + 1
        f = lambda t: mp.acosh((1 + 2 * mp.cospi(2 * t)) / 2)
        return 2 * mp.quad(f, [0, mp.mpf(1) / 12, mp.mpf(1) / 6])

    add("deninger-boyd",
        _cos_double_integral,
        lambda c: 15 / (4 * pi() ** 2) * L_eta({1: 1, 3: 1, 5: 1, 15: 1}, 2, c),
        status="conjectural", group="intro",
        anchor="intro: double integral of log|1+2cos 2pi t+2cos 2pi s| vs (15/4pi^2) sum a_n/n^2")

    def _deninger_series(c):
        s = mp.mpf(0)
        t = mp.mpf(1) / 16  # C(2n,n)^2 (1/16)^(2n+1)
        n = 0
        while True:
            term = t / (2 * n + 1)
            s += term
            if term < c.tol / 100:
                return s
            t *= ((2 * n + 1) * (2 * n + 2) / mp.mpf((n + 1) ** 2)) ** 2 / 256
            n += 1

    add("deninger-3F2",
        _deninger_series,
        lambda c: 540 / pi() ** 2 * F(c, 1, 3, 5, 15) / 576,
        status="conjectural", group="intro",
        anchor="intro: sum C(2n,n)^2 (1/16)^(2n+1)/(2n+1) vs (540/pi^2) lattice sum (1,3,5,15)")
    add("F15-intro",
        lambda c: 25 / (6 * pi() ** 2) * Fbc(c, 1, 5),
        lambda c: mp.cbrt(2) * const_A(c) * f32_a(mp.mpf(2) / 27, c)
        + mp.cbrt(4) * const_B(c) * f32_b(mp.mpf(2) / 27, c),
        status="conjectural", group="intro",
        anchor="intro: (25/6pi^2) F(1,5) vs 2^(1/3) A 3F2(;2/27) + 4^(1/3) B 3F2(;2/27)")
    add("intro-lattice",
        lambda c: 225 / (32 * mp.sqrt(5) * pi() ** 2) * F(c, 1, 5, 5, 5),
        lambda c: const_A(c) / mp.cbrt(_golden()) * f32_a(1 / _golden(), c)
        + 3 * const_B(c) / mp.cbrt(_golden() ** 2) * f32_b(1 / _golden(), c),
        group="intro",
        anchor="intro: (225/(32 sqrt5 pi^2)) F(1,5,5,5) vs golden-ratio 3F2 pair")
    add("F1555-2d",
        lambda c: F(c, 1, 5, 5, 5),
        lambda c: F_2d_special("F1555", c),
        group="intro", anchor="intro: F(1,5,5,5) = 16^2 sum (-1)^(n+k)(2k+1)/((6n+1)^2+15(2k+1)^2)^2")
    formal("weight32-cm",
           lambda o: _eq({3: 1, 15: 3}, o), lambda o: theta_series("weight32_cm", o),
           "intro: q^2 prod (1-q^3n)(1-q^15n)^3 as a lacunary double sum", "intro")

    # ---- L-values and the Mahler list
    for N, (b, c_) in L_TABLE.items():
        add(f"L-N{N}",
            lambda c, bc=(b, c_): L_eta(dict(_levels(bc)), 2, c),
            lambda c, bc=(b, c_): Fbc(c, *bc),
            group="mahler-list", anchor=f"conductor table: L(E_{N}, 2) = F({b},{c_})")

    mahler_list = [
        # id, tag, k (callable), pair, factor, status
        ("F11-n3cbrt2", "n", lambda: 3 * mp.cbrt(2), (1, 1), lambda: 27 / (2 * pi() ** 2), "proven"),
        ("F11-g2", "g", lambda: mp.mpf(2), (1, 1), lambda: 9 / (2 * pi() ** 2), "proven"),
        ("F11-g-4", "g", lambda: mp.mpf(-4), (1, 1), lambda: 18 / pi() ** 2, "proven"),
        ("F12-m4i", "m", lambda: mp.mpc(0, 4), (1, 2), lambda: 16 / pi() ** 2, "proven"),
        ("F12-m2sqrt2", "m", lambda: 2 * s2(), (1, 2), lambda: 8 / pi() ** 2, "proven"),
        ("F13-n-6", "n", lambda: mp.mpf(-6), (1, 3), lambda: 81 / (4 * pi() ** 2), "proven"),
        ("F15-ncbrt2", "n", lambda: mp.cbrt(2), (1, 5), lambda: 25 / (6 * pi() ** 2), "conjectural"),
        ("F15-ncbrt32", "n", lambda: mp.cbrt(32), (1, 5), lambda: 40 / (3 * pi() ** 2), "conjectural"),
        ("F15-g-2", "g", lambda: mp.mpf(-2), (1, 5), lambda: 15 / pi() ** 2, "conjectural"),
        ("F15-g4", "g", lambda: mp.mpf(4), (1, 5), lambda: 10 / pi() ** 2, "conjectural"),
        ("F111-r-1", "r", lambda: mp.mpf(-1), (1, 11), lambda: 77 / (4 * pi() ** 2), "proven"),
        ("F23-m2", "m", lambda: mp.mpf(2), (2, 3), lambda: 6 / pi() ** 2, "conjectural"),
        ("F23-m8", "m", lambda: mp.mpf(8), (2, 3), lambda: 24 / pi() ** 2, "conjectural"),
        ("F23-m3sqrt2", "m", lambda: 3 * s2(), (2, 3), lambda: 15 / pi() ** 2, "conjectural"),
        ("F23-misqrt2", "m", lambda: mp.mpc(0, 1) * s2(), (2, 3), lambda: 9 / pi() ** 2, "conjectural"),
        ("F27-n-1", "n", lambda: mp.mpf(-1), (2, 7), lambda: 7 / pi() ** 2, "conjectural"),
        ("F27-n5", "n", lambda: mp.mpf(5), (2, 7), lambda: 49 / (2 * pi() ** 2), "conjectural"),
        ("F27-g1", "g", lambda: mp.mpf(1), (2, 7), lambda: 7 / (2 * pi() ** 2), "conjectural"),
        ("F27-g7", "g", lambda: mp.mpf(7), (2, 7), lambda: 21 / pi() ** 2, "conjectural"),
        ("F27-g-8", "g", lambda: mp.mpf(-8), (2, 7), lambda: 35 / pi() ** 2, "conjectural"),
        ("F35-m1", "m", lambda: mp.mpf(1), (3, 5), lambda: 15 / (4 * pi() ** 2), "conjectural"),
        ("F35-m3i", "m", lambda: mp.mpc(0, 3), (3, 5), lambda: 75 / (4 * pi() ** 2), "conjectural"),
        ("F35-m5", "m", lambda: mp.mpf(5), (3, 5), lambda: 45 / (2 * pi() ** 2), "conjectural"),
        ("F35-m16", "m", lambda: mp.mpf(16), (3, 5), lambda: 165 / (4 * pi() ** 2), "conjectural"),
    ]
    for id_, tag, kf, (b, c_), fac, status in mahler_list:
        with mp.workdps(15):
            direct = _needs_direct(tag, kf())
        meta = {"mahler_route": "direct" if direct else "closed"}
        if id_ == "F15-ncbrt2":
            meta["erratum"] = ("the measure n(2^(1/3)) = 0.441222... differs from (25/6pi^2)F(1,5) = 0.332973...; "
                               "the right side equals ntilde(2^(1/3)), see F15-ntilde-cbrt2")
        if id_ == "F11-n3cbrt2":
            meta["equivalent"] = "g(2) = n(3*2^(1/3))/3"
        add(id_, _mahler_side(tag, kf), lambda c, bc=(b, c_), f=fac: f() * Fbc(c, *bc),
            status=status, group="mahler-list", default_digits=MAHLER_DIGITS if direct else DEFAULT_DIGITS,
            anchor=f"Mahler list: {tag}(k) vs F({b},{c_})", metadata=meta)
    add("F15-ntilde-cbrt2",
        lambda c: family_closed("ntilde", mp.cbrt(2), c),
        lambda c: 25 / (6 * pi() ** 2) * Fbc(c, 1, 5),
        status="conjectural", group="mahler-list",
        anchor="Mahler list (corrected): ntilde(2^(1/3)) vs (25/6pi^2) F(1,5)",
        metadata={"corrects": "F15-ncbrt2"})

    # ---- closed forms of the families
    add("thm-m-4F3",
        lambda c: family_direct("m", 3, c),
        lambda c: mp.re(mp.log(3) - 2 * h43("half", mp.mpf(16) / 9, c) / 9),
        group="hypergeometric", default_digits=MAHLER_DIGITS,
        anchor="family closed form: m(k) = Re(log k - (2/k^2) 4F3(;16/k^2)) at k = 3")
    add("thm-n-4F3",
        lambda c: family_direct("n", 4, c),
        lambda c: mp.re(mp.log(4) - 2 * h43("third", mp.mpf(27) / 64, c) / 64),
        group="hypergeometric", default_digits=MAHLER_DIGITS,
        anchor="family closed form: n(k) = Re(log k - (2/k^3) 4F3(;27/k^3)) at k = 4")
    add("thm-g-4F3",
        lambda c: family_direct("g", 5, c),
        lambda c: family_closed("g_printed", 5, c),
        group="hypergeometric", default_digits=MAHLER_DIGITS,
        anchor="family closed form: g(k) 4F3 expression at k = 5",
        metadata={"erratum": "the printed right side equals 3 g(k); see thm-g-4F3-corrected"})
    add("thm-g-4F3-corrected",
        lambda c: family_direct("g", 5, c),
        lambda c: family_closed("g_printed", 5, c) / 3,
        group="hypergeometric", default_digits=MAHLER_DIGITS,
        anchor="family closed form (corrected): g(k) = (1/3) x printed expression at k = 5",
        metadata={"corrects": "thm-g-4F3"})
    add("thm-m-rewrite",
        lambda c: mp.re(mp.log(2) - 2 * h43("half", 4, c) / 4),
        lambda c: f32_half(mp.mpf(4) / 16, c) * 2 / 4,
        group="hypergeometric",
        anchor="real-k rewrite: Re(log k - (2/k^2) 4F3(;16/k^2)) = (|k|/4) 3F2(;k^2/16) at k = 2")
    add("thm-n-rewrite-pos",
        lambda c: mp.re(mp.log(2) - 2 * h43("third", mp.mpf(27) / 8, c) / 8),
        lambda c: n_rewrite_printed(2, c),
        group="hypergeometric",
        anchor="real-k rewrite: n-type 4F3 expression = s(k)(A k 3F2 + B k^2 3F2) at k = 2")
    add("thm-n-rewrite-neg",
        lambda c: mp.re(mp.log(mp.mpc(-2)) - 2 * h43("third", mp.mpf(-27) / 8, c) / -8),
        lambda c: n_rewrite_printed(-2, c),
        group="hypergeometric",
        anchor="real-k rewrite: n-type 4F3 expression = s(k)(A k 3F2 + B k^2 3F2) at k = -2",
        metadata={"erratum": "for k < 0 the factor s(k) = -1/2 must divide, not multiply"})
    add("thm-n-rewrite-neg-corrected",
        lambda c: mp.re(mp.log(mp.mpc(-2)) - 2 * h43("third", mp.mpf(-27) / 8, c) / -8),
        lambda c: n_rewrite_printed(-2, c) * 4,
        group="hypergeometric",
        anchor="real-k rewrite (corrected): (A k 3F2 + B k^2 3F2)/s(k) at k = -2",
        metadata={"corrects": "thm-n-rewrite-neg"})
    add("catalan",
        lambda c: ramanujan_catalan_series(c),
        lambda c: catalan_oracle(c),
        group="hypergeometric", default_digits=30,
        anchor="Catalan: pi sum C(2n,n)^2 (1/4)^(2n+1)/(2n+1) = L(chi_-4, 2)")

    # ---- the hypergeometric list
    hyper = [
        ("H-F11", (1, 1), lambda: 9 / (2 * pi() ** 2),
         lambda c: mp.log(54) / 9 - h43("third", h(), c) / 81, "proven", {}),
        ("H-F12-4F3", (1, 2), lambda: 16 / pi() ** 2,
         lambda c: 2 * mp.log(2) + h43("half", mp.mpf(-1) / 4, c) / 8, "proven",
         {"erratum": "the 4F3 argument must be 16/k^2 = -1 for k = 4i, not -1/4; see H-F12-4F3-corrected"}),
        ("H-F12-4F3-corrected", (1, 2), lambda: 16 / pi() ** 2,
         lambda c: 2 * mp.log(2) + h43("half", -1, c) / 8, "proven", {"corrects": "H-F12-4F3"}),
        ("H-F12-3F2", (1, 2), lambda: 8 / pi() ** 2,
         lambda c: f32_half(h(), c) / s2(), "proven", {}),
        ("H-F13", (1, 3), lambda: 81 / (4 * pi() ** 2),
         lambda c: mp.log(6) + h43("third", mp.mpf(-1) / 8, c) / 108, "proven", {}),
        ("H-F15-3F2", (1, 5), lambda: 25 / (6 * pi() ** 2),
         lambda c: mp.cbrt(2) * const_A(c) * f32_a(mp.mpf(2) / 27, c)
         + mp.cbrt(4) * const_B(c) * f32_b(mp.mpf(2) / 27, c), "conjectural", {}),
        ("H-F15-4F3", (1, 5), lambda: 40 / (3 * pi() ** 2),
         lambda c: 5 * mp.log(2) / 3 - h43("third", mp.mpf(27) / 32, c) / 16, "conjectural", {}),
        ("H-F23-3F2", (2, 3), lambda: 6 / pi() ** 2,
         lambda c: f32_half(mp.mpf(1) / 4, c) / 2, "conjectural", {}),
        ("H-F23-4F3a", (2, 3), lambda: 24 / pi() ** 2,
         lambda c: 3 * mp.log(2) - h43("half", mp.mpf(1) / 4, c) / 32, "conjectural", {}),
        ("H-F23-4F3b", (2, 3), lambda: 15 / pi() ** 2,
         lambda c: mp.log(18) / 2 - h43("half", mp.mpf(8) / 9, c) / 9, "conjectural", {}),
        ("H-F23-4F3c", (2, 3), lambda: 9 / pi() ** 2,
         lambda c: mp.log(2) / 2 + h43("half", -8, c), "conjectural", {}),
        ("H-F27-3F2", (2, 7), lambda: 7 / pi() ** 2,
         lambda c: const_A(c) / 2 * f32_a(mp.mpf(-1) / 27, c) - const_B(c) / 2 * f32_b(mp.mpf(-1) / 27, c),
         "conjectural", {"erratum": "coefficients must be 2A and -2B (s(-1) = -1/2 divides); "
                                    "see H-F27-3F2-corrected"}),
        ("H-F27-3F2-corrected", (2, 7), lambda: 7 / pi() ** 2,
         lambda c: 2 * const_A(c) * f32_a(mp.mpf(-1) / 27, c) - 2 * const_B(c) * f32_b(mp.mpf(-1) / 27, c),
         "conjectural", {"corrects": "H-F27-3F2"}),
        ("H-F27-4F3", (2, 7), lambda: 49 / (2 * pi() ** 2),
         lambda c: mp.log(5) - 2 * h43("third", mp.mpf(27) / 125, c) / 125, "conjectural", {}),
        ("H-F27-g7", (2, 7), lambda: 21 / pi() ** 2,
         lambda c: family_closed("g", 7, c), "conjectural", {}),
        ("H-F35-3F2", (3, 5), lambda: 15 / (4 * pi() ** 2),
         lambda c: f32_half(mp.mpf(1) / 16, c) / 4, "conjectural", {}),
        ("H-F35-4F3a", (3, 5), lambda: 45 / (2 * pi() ** 2),
         lambda c: mp.log(5) - 2 * h43("half", mp.mpf(16) / 25, c) / 25, "conjectural", {}),
        ("H-F35-4F3b", (3, 5), lambda: 165 / (4 * pi() ** 2),
         lambda c: 4 * mp.log(2) - h43("half", mp.mpf(1) / 16, c) / 128, "conjectural", {}),
        ("H-F35-4F3c", (3, 5), lambda: 75 / (4 * pi() ** 2),
         lambda c: mp.log(3) + 2 * h43("half", mp.mpf(-16) / 9, c) / 9, "conjectural", {}),
    ]
    for id_, (b, c_), fac, rhs, status, meta in hyper:
        add(id_, lambda c, bc=(b, c_), f=fac: f() * Fbc(c, *bc), rhs, status=status, group="hypergeometric",
            anchor=f"hypergeometric list: F({b},{c_})", metadata=meta)
    add("H-F111-r-1",
        lambda c: 77 / (4 * pi() ** 2) * Fbc(c, 1, 11),
        lambda c: family_direct("r", -1, c),
        group="hypergeometric", default_digits=MAHLER_DIGITS,
        anchor="hypergeometric list: (77/4pi^2) F(1,11) = r(-1)")

    # ---- two-dimensional reductions, q-series, integrals, inversions
    for tag, quad in (("F12", (1, 1, 2, 2)), ("F14", (1, 1, 4, 4)), ("F22", (1, 2, 2, 4))):
        add(f"R-{tag}", lambda c, t=tag: F_2d(TwoDFamily(t, 1), c), lambda c, q=quad: F(c, *q),
            group="two-dim", anchor=f"2D reduction: {tag}(1) = F{quad}")
    add("R-F111",
        lambda c: F(c, 1, 1, 1, 2) / 25, lambda c: F_2d(TwoDFamily("F111", 2), c),
        group="two-dim", anchor="2D reduction: F(1,1,1,x)/(3+x)^2 at x = 2")
    for tag, x in (("F111", mp.mpf("1.69")), ("F12", mp.mpf("0.7")), ("F14", mp.mpf("0.7")),
                   ("F22", mp.mpf("0.7"))):
        add(f"Q-{tag}", lambda c, t=tag, x=x: F_qseries(TwoDFamily(t, x), c),
            lambda c, t=tag, x=x: F_2d(TwoDFamily(t, x), c),
            group="two-dim", anchor=f"q-series: {tag} character sum vs 2D sum at x = {x}")

    def _f12_mahler(c, x):
        x = to_mp(x)
        q = mp.exp(-pi() * x)
        k = mp.mpc(0, 1) * f_minus(q, c) ** 4 / (mp.sqrt(q) * f_minus(q ** 4, c) ** 4)
        return pi() ** 2 / (16 * x) * family_closed("m", k, c)

    add("M-F12x", lambda c: F_2d(TwoDFamily("F12", mp.mpf("0.8")), c), lambda c: _f12_mahler(c, mp.mpf("0.8")),
        group="two-dim", anchor="F12(x) = (pi^2/16x) m(i f^4(-q)/(sqrt q f^4(-q^4))) at x = 0.8")
    for tag, x in (("F111", 1), ("F14", 1), ("F22", 1)):
        add(f"I-{tag}", lambda c, t=tag, x=x: F_qintegral(TwoDFamily(t, x), c),
            lambda c, t=tag, x=x: F_qseries(TwoDFamily(t, x), c),
            group="two-dim", anchor=f"theta-product integral for {tag} at x = {x}")
    add("I-F12",
        lambda c: pi() ** 3 / 32 - pi() ** 2 / 16 * F12_theta_integral(1, c),
        lambda c: F_qseries(TwoDFamily("F12", 1), c),
        group="two-dim", anchor="theta-product integral for F12 at x = 1 (prefactor pi^2/(16x))",
        metadata={"erratum": "phi^2(-u)phi^4(u) - 1 = 4 sum k^2 chi_-4(k) u^k/(1+u^k), so the prefactor is "
                             "pi^2/(32x); see I-F12-corrected"})
    add("I-F12-corrected",
        lambda c: F_qintegral(TwoDFamily("F12", 1), c),
        lambda c: F_qseries(TwoDFamily("F12", 1), c),
        group="two-dim", anchor="theta-product integral for F12 at x = 1 (prefactor pi^2/(32x))",
        metadata={"corrects": "I-F12"})

    def _f22_intermediate(c):
        x = mp.mpf(1)
        q = mp.exp(-pi() * x / mp.sqrt(8))

        def f(u):
            if u == 0:
                return mp.mpf(0)
            gp, gm = _g_u(u, c), _g_u(-u, c)
            u2 = u * u
            pre = f_minus(u2, c, False) ** 6 * f_minus(u2 ** 4, c, False) / f_minus(u2 * u2, c, False)
            return pre * (gp ** 4 + gm ** 4) / (gp * gm) ** 4

        val = mp.quad(f, [0, ray_point(Fraction(1, 4), q, c)])
        return 9 * pi() ** 2 / (32 * x) * mp.re(val)

    add("I-F22-intermediate", _f22_intermediate, lambda c: F_qseries(TwoDFamily("F22", 1), c),
        group="two-dim", anchor="F22 integral over [0, e^(pi i/4) q] with g(u) = prod(1 - sqrt2 u^(2n+1) + u^(4n+2))")
    formal("g-prod-pair",
           lambda o: (lambda E, O: E * E - 2 * O * O)(*g_product_parts(o)),
           lambda o: _sub(theta_series("e1sq_over_e2", Fraction(o) / 8), 8) / _sub(theta_series("f_minus", Fraction(o) / 4), 4),
           "g(u)g(-u) = phi(-u^8)/f(-u^4)", "two-dim")
    formal("g-sum-pair",
           lambda o: 2 * g_product_parts(o)[0],
           lambda o: 2 * _sub(theta_series("e1sq_over_e2", Fraction(o) / 16), 16) / _sub(theta_series("f_minus", Fraction(o) / 2), 2),
           "g(u) + g(-u) = 2 phi(-u^16)/f(-u^2)", "two-dim")
    formal("lambert-F14",
           _lambert_chi,
           lambda o: q_monomial(1, 1, o) * theta_series("phi", o) ** 2 * _sub(theta_series("psi", Fraction(o) / 2), 2) ** 4,
           "sum k^2 u^k/(1+u^(2k)) = u phi^2(u) psi^4(u^2)", "two-dim")
    formal("phi-square",
           lambda o: _sub(theta_series("e1sq_over_e2", Fraction(o) / 16), 16) ** 2,
           lambda o: _sub(theta_series("e1sq_over_e2", Fraction(o) / 8), 8) * _sub(theta_series("phi", Fraction(o) / 8), 8),
           "phi^2(-q^16) = phi(-q^8) phi(q^8)", "two-dim")
    formal("sig3-eta",
           lambda o: _eq({2: 5, 3: 4, 6: 1, 1: -4}, o),
           lambda o: _eq({3: 9, 1: -3}, o) + _eq({6: 9, 2: -3}, o),
           "f^5(-u^2)f^4(-u^3)f(-u^6)/f^4(-u) = f^9(-u^3)/f^3(-u) + u f^9(-u^6)/f^3(-u^2)", "two-dim")
    formal("sig3-c-product",
           lambda o: q_monomial(1, 1, o) * _sig3_c_sum(o) ** 3,
           lambda o: 27 * _eq({3: 9, 1: -3}, o),
           "c^3(q)/(27q) = f^9(-q^3)/f^3(-q)", "two-dim")

    for tag, (x, regime) in {"lo": ("0.3", 0), "mid": ("1", 1), "hi": ("3", 2)}.items():
        add(f"P-F111-{tag}",
            lambda c, x=x: F_piecewise("F111_sq", mp.mpf(x), c),
            lambda c, x=x: F_qseries(TwoDFamily("F111", mp.mpf(x) ** 2), c),
            group="two-dim", anchor=f"piecewise F(1,1,1,x^2) via ntilde and n2, regime {regime} (x = {x})")
    for tag, x in {"lo": "0.5", "mid": "1", "hi": "2"}.items():
        add(f"P-F14-{tag}",
            lambda c, x=x: F_piecewise("F14", mp.mpf(x), c),
            lambda c, x=x: F_qseries(TwoDFamily("F14", mp.mpf(x)), c),
            group="two-dim", anchor=f"piecewise F14(x) via m and m2 (x = {x})")
    add("P-F22", lambda c: F_piecewise("F22", mp.mpf("0.8"), c),
        lambda c: F_qseries(TwoDFamily("F22", mp.mpf("0.8")), c),
        group="two-dim", anchor="F22(x) as an integral of 2F1(1/2,1/2;1;1-u^2) (x = 0.8)")
    add("P-F12", lambda c: F_piecewise("F12", mp.mpf("1.5"), c),
        lambda c: F_qseries(TwoDFamily("F12", mp.mpf("1.5")), c),
        group="two-dim", anchor="F12(x) via m(k) (x = 1.5)")

    def _theta_inv(c):
        q = mp.mpf("0.35")
        return mp.hyp2f1(h(), h(), 1, 1 - phi(-q, c) ** 4 / phi(q, c) ** 4)

    add("T-theta-inv", lambda c: phi(mp.mpf("0.35"), c) ** 2, _theta_inv,
        group="two-dim", anchor="phi^2(q) = 2F1(1/2,1/2;1;1-phi^4(-q)/phi^4(q)) at q = 0.35")

    def _z_ray(c, x, coeffs):
        u = ray_point(Fraction(2, 3), mp.exp(-pi() * mp.mpf(x) / 3), c)
        al = phi(-u, c) ** 4 / phi(u, c) ** 4
        a, b = coeffs
        return a * mp.hyp2f1(h(), h(), 1, 1 - al) + b * mp.hyp2f1(h(), h(), 1, al)

    for tag, x, co in (("lo", "0.5", (-3, 2j)), ("mid", "1", (1, 2j)), ("hi", "2", (1, 0))):
        add(f"T-z-ray-{tag}",
            lambda c, x=x: phi(ray_point(Fraction(2, 3), mp.exp(-pi() * mp.mpf(x) / 3), c), c) ** 2,
            lambda c, x=x, co=co: _z_ray(c, x, co),
            group="two-dim", anchor=f"phi^2 on the ray u = e^(2pi i/3) e^(-pi x/3), x = {x}")

    def _jump(c):
        al = 3 + 2 * mp.sqrt(2)
        return (hyp2f1_on_cut(h(), h(), 1, al, "above", c) - hyp2f1_on_cut(h(), h(), 1, al, "below", c))

    add("T-jump", _jump, lambda c: 2j * mp.hyp2f1(h(), h(), 1, 1 - (3 + 2 * mp.sqrt(2))),
        group="two-dim", anchor="2F1(1/2,1/2;1) jump across [1,oo) at alpha = 3+2sqrt2")
    add("sig3-cubic",
        lambda c: sig3("a", mp.mpc("0.1", "0.2"), c) ** 3,
        lambda c: sig3("b", mp.mpc("0.1", "0.2"), c) ** 3 + sig3("c", mp.mpc("0.1", "0.2"), c) ** 3,
        group="two-dim", anchor="a^3 = b^3 + c^3 at q = 0.1+0.2i")

    def _sig3_deriv(c):
        # central difference at doubled precision; theta_eval pins its own dps
        q = mp.mpf("0.2")
        c2 = c.with_digits(2 * c.dps)
        w = lambda u: sig3("c", u, c2, False) ** 3 / sig3("a", u, c2, False) ** 3
        with mp.workdps(c2.dps):
            step = mp.mpf(10) ** (-c.dps)
            d = (w(q + step) - w(q - step)) / (2 * step)
        return sig3("a", q, c) / (1 - w(q)) * d

    add("sig3-derivative", lambda c: sig3("c", mp.mpf("0.2"), c) ** 3 / mp.mpf("0.2"), _sig3_deriv,
        group="two-dim", anchor="c^3/q = a/(1 - c^3/a^3) d/dq (c^3/a^3) at q = 0.2")
    add("T-a-inv", lambda c: sig3("a", mp.mpf("0.05"), c),
        lambda c: mp.hyp2f1(third(), 2 * third(), 1, sig3("c", mp.mpf("0.05"), c) ** 3 / sig3("a", mp.mpf("0.05"), c) ** 3),
        group="two-dim", anchor="a(u) = 2F1(1/3,2/3;1;c^3/a^3) at u = 0.05")

    def _a_ray(c, x, co, second):
        u = ray_point(Fraction(1, 2), mp.exp(-pi() * mp.mpf(x) / mp.sqrt(12)), c)
        w = sig3("c", u, c) ** 3 / sig3("a", u, c) ** 3
        t = third()
        v = co * mp.hyp2f1(t, 2 * t, 1, w)
        if second == "half":
            v += mp.sqrt(3) * 1j * mp.hyp2f1(h(), h(), 1, 1 - w)
        elif second == "third":
            v += mp.sqrt(3) * 1j * mp.hyp2f1(t, 2 * t, 1, 1 - w)
        return v

    a_on_ray = lambda x: (lambda c: sig3("a", ray_point(Fraction(1, 2), mp.exp(-pi() * mp.mpf(x) / mp.sqrt(12)), c), c))
    err_a = "the second term needs 2F1(1/3,2/3;1;1-c^3/a^3) and the middle-regime coefficient is 1"
    for tag, x, co, sec, meta in (
            ("lo", "0.3", 4, "half", {"erratum": err_a}),
            ("mid", "1", 2, "half", {"erratum": err_a}),
            ("hi", "3", 1, None, {}),
            ("lo-corrected", "0.3", 4, "third", {"corrects": "T-a-ray-lo"}),
            ("mid-corrected", "1", 1, "third", {"corrects": "T-a-ray-mid"})):
        add(f"T-a-ray-{tag}", a_on_ray(x), lambda c, x=x, co=co, s=sec: _a_ray(c, x, co, s),
            group="two-dim", anchor=f"a(u) on the ray u = i e^(-pi x/sqrt12), x = {x}", metadata=meta)
    add("phi-twist",
        lambda c: phi(-1j * mp.mpf("0.6") ** 2, c),
        lambda c: phi(mp.mpf("0.6") ** 8, c) - 2j * mp.mpf("0.6") ** 2 * psi(mp.mpf("0.6") ** 16, c),
        group="two-dim", anchor="phi(-i u^2) = phi(u^8) - 2i u^2 psi(u^16) at u = 0.6")

    add("C-F11", lambda c: 27 / (2 * pi() ** 2) * Fbc(c, 1, 1), lambda c: family_closed("n", 3 * mp.cbrt(2), c),
        group="two-dim", anchor="x = 1 corollary: (27/2pi^2) F(1,1) = n(3*2^(1/3))")
    add("C-F12", lambda c: 16 / pi() ** 2 * Fbc(c, 1, 2), lambda c: family_closed("m", 4j, c),
        group="two-dim", anchor="x = 1 corollary: (16/pi^2) F(1,2) = m(4i)")

    def _c_f14(c):
        th = _theta_const(c.dps)
        return family_closed("m", 4 / th, c) + aux_m2_n2_ntilde("m2", th ** 2, c) / 4

    add("C-F14", lambda c: 144 / (25 * pi() ** 2) * Fbc(c, 1, 4), _c_f14,
        group="two-dim", anchor="x = 1 corollary: (144/25pi^2) F(1,4) = m(4/theta) + (1/4) m2(theta^2)")

    def _c_f22(c):
        # u = 1 - s^2 removes the endpoint singularity
        def f(s):
            u = 1 - s * s
            return 2 * (3 * u - 1) / mp.sqrt(u) * mp.hyp2f1(h(), h(), 1, 1 - u * u)
        return mp.quad(f, [0, mp.sqrt(2 - mp.sqrt(2))])

    add("C-F22", lambda c: 256 / (9 * pi() ** 2) * Fbc(c, 2, 2), _c_f22,
        group="two-dim", anchor="x = 1 corollary: (256/9pi^2) F(2,2) = int_(sqrt2-1)^1 (3u-1)/sqrt(u(1-u)) 2F1 du")

    # ---- special sums
    k3 = lambda v: 3 * mp.cbrt(4 / v)
    add("S-F1244",
        lambda c: 144 * mp.sqrt(2) / (121 * pi() ** 2) * F(c, 1, 2, 4, 4),
        lambda c: family_closed("n", k3(2 + 17 * mp.sqrt(2) - 9 * mp.sqrt(6)), c) / 3
        - family_closed("n", k3(2 + mp.sqrt(2)), c) / 6,
        group="special-sums", anchor="(144 sqrt2/121pi^2) F(1,2,4,4) as a difference of n values")
    add("S-F1124",
        lambda c: 27 / (mp.sqrt(2) * pi() ** 2) * F(c, 1, 1, 2, 4),
        lambda c: family_closed("n", k3(2 - 17 * mp.sqrt(2) + 9 * mp.sqrt(6)), c)
        - family_closed("n", k3(2 - mp.sqrt(2)), c),
        group="special-sums", anchor="(27/(sqrt2 pi^2)) F(1,1,2,4) as a difference of n values")
    for which, quad in (("F1124", (1, 1, 2, 4)), ("F1244", (1, 2, 4, 4))):
        add(f"S-{which}-q", lambda c, q=quad: F(c, *q), lambda c, w=which: F_special_qseries(w, c),
            group="special-sums", anchor=f"F{quad} as a chi_-3 log sum at q = e^(-pi/sqrt6)")
    formal("theta-e1sq-e2-e4", lambda o: _eq({1: 2, 2: 1, 4: 1}, o), _e1sq_e2_e4,
           "e_1^2 e_2 e_4 = sum (-1)^k (3n+1) q^(((3n+1)^2+6k^2)/3)", "special-sums")
    formal("theta-e1-e2-e4sq", lambda o: _eq({1: 1, 2: 1, 4: 2}, o), _e1_e2_e4sq,
           "e_1 e_2 e_4^2 = sum (3n+1) q^((8(3n+1)^2+3(2k+1)^2)/24)", "special-sums")
    add("G-F11", lambda c: Fbc(c, 1, 1), lambda c: 2 * pi() ** 2 / 27 * family_closed("n", 3 * mp.cbrt(2), c),
        group="special-sums", anchor="golden-ratio theorem: F(1,1) = (2pi^2/27) n(3*2^(1/3))")
    add("G-F1115inv", lambda c: _F111(c, Fraction(1, 5)),
        lambda c: 32 * pi() ** 2 / (135 * mp.sqrt(5)) * family_closed("ntilde", 3 / mp.cbrt(_golden()), c),
        group="special-sums", anchor="golden-ratio theorem: F(1,1,1,1/5) via ntilde(3/phi^(1/3))")
    add("G-F1115", lambda c: _F111(c, 5),
        lambda c: 4 * pi() ** 2 / (27 * mp.sqrt(5)) * family_closed("n", -3 * mp.cbrt(_golden()), c),
        status="conjectural", group="special-sums",
        anchor="golden-ratio theorem: F(1,1,1,5) vs n(-3 phi^(1/3))",
        metadata={"note": "one-sided: only the value at x = sqrt5 is checked"})

    def _f1119(c):
        y = mp.cbrt(2) * mp.expjpi(third())
        return 2 * pi() ** 2 / (27 * mp.sqrt(3)) * aux_m2_n2_ntilde("n2", 9 / (2 * (1 + y + 3 * y ** 2)), c)

    add("G-F1119", lambda c: _F111(c, 9), _f1119,
        group="special-sums", anchor="golden-ratio theorem: F(1,1,1,9) via n2")

    def _f11125(c):
        z = _z_root(c.target_digits)
        return 98 * pi() ** 2 / (405 * mp.sqrt(3)) * aux_m2_n2_ntilde("n2", 1 / (1 + z ** 6), c)

    add("G-F11125", lambda c: _F111(c, 25), _f11125,
        group="special-sums", anchor="golden-ratio theorem: F(1,1,1,25) via n2 at the root z near -0.58+0.56i")
    add("F1288", lambda c: F(c, 1, 2, 8, 8), lambda c: F_special_qseries("F1288", c),
        group="special-sums", anchor="(24^2 sqrt2/(19^2 pi^2)) F(1,2,8,8) as a chi_-3 log sum")
    add("F1148", lambda c: F(c, 1, 1, 4, 8), lambda c: F_special_qseries("F1148", c),
        group="special-sums", anchor="(72 sqrt2/(49 pi^2)) F(1,1,4,8) as a chi_-3 log sum")

    # ---- Eisenstein series and eta identities
    add("F13-eisenstein", lambda c: 4 * pi() ** 2 / 81 * family_closed("n", -6, c), lambda c: F13_eisenstein(c),
        group="eisenstein", anchor="(4pi^2/81) n(-6) as a chi_-3 Eisenstein series")
    formal("F13-essential", lambda o: _eq({3: 2, 9: 2}, o), _f13_essential,
           "q prod (1-q^3n)^2 (1-q^9n)^2 as a chi_-3 weighted double sum", "eisenstein")
    formal("eta-F13",
           lambda o: 4 * _eq({3: 2, 9: 2}, o),
           lambda o: (_eq({6: 5, 36: 1, 54: 2, 12: -2, 18: -1, 108: -1}, o)
                      + 3 * _eq({12: 1, 18: 7, 6: -1, 36: -3}, o)
                      - 2 * _eq({3: 2, 12: 2, 18: 2, 27: 1, 108: 1, 6: -1, 9: -1, 36: -1, 54: -1}, o)
                      - 6 * _eq({6: 2, 9: 3, 36: 3, 3: -1, 12: -1, 18: -2}, o)),
           "4 e_3^2 e_9^2 as four eta quotients of level 108", "eisenstein")

    # ---- class invariants
    table = {
        1: lambda: mp.mpf(4),
        2: lambda: 4 * mp.sqrt(2 + 2 * mp.sqrt(2)),
        3: lambda: 4 * (2 + mp.sqrt(3)),
        7: lambda: 4 * (8 + 3 * mp.sqrt(7)),
        9: lambda: 4 * (7 + 4 * mp.root(12, 4) + 2 * mp.root(144, 4) + mp.root(12 ** 3, 4)),
        15: lambda: 4 * (28 + 16 * mp.sqrt(3) + 12 * mp.sqrt(5) + 7 * mp.sqrt(15)),
    }
    add("CI-relation", lambda c: (lambda p: (p.g * p.G) ** 8 * (p.G ** 8 - p.g ** 8))(class_invariants(5, c)),
        lambda c: mp.mpf(1) / 4, group="class-invariants", anchor="(g_m G_m)^8 (G_m^8 - g_m^8) = 1/4 at m = 5")
    for m, val in table.items():
        add(f"CI-table-{m}", lambda c, m=m: class_invariants(m, c).table_value(), lambda c, v=val: v(),
            group="class-invariants", anchor=f"class-invariant table: 8 g_m^8 G_m^4 at m = {m}")
        add(f"CI-mahler-{m}",
            lambda c, v=val: family_closed("m", 1j * v(), c),
            lambda c, m=m: 16 * mp.sqrt(m) / pi() ** 2 * L_eta([(1, [(8, 3), (4 * m, 2), (8 * m, -1)])], 2, c),
            group="class-invariants", anchor=f"m(8i g_m^8 G_m^4) = (16 sqrt m/pi^2) L(e_8^3 e_4m^2/e_8m, 2) at m = {m}")
    add("CI-solved-G", lambda c: class_invariants(7, c).table_value(),
        lambda c: (lambda G: 4 * (G ** 12 + mp.sqrt(G ** 24 - 1)))(class_invariants(7, c).G),
        group="class-invariants", anchor="8 g^8 G^4 = 4(G^12 + sqrt(G^24 - 1)) at m = 7")
    add("CI-solved-g", lambda c: class_invariants(7, c).table_value(),
        lambda c: (lambda g: 4 * mp.sqrt(2) * g ** 6 * mp.sqrt(g ** 12 + mp.sqrt(g ** 24 + 1)))(class_invariants(7, c).g),
        group="class-invariants", anchor="8 g^8 G^4 = 4 sqrt2 g^6 sqrt(g^12 + sqrt(g^24 + 1)) at m = 7")
    add("L-g2",
        lambda c: 16 * mp.sqrt(2) / pi() ** 2 * (L_eta({8: 5, 16: -1}, 2, c) + 2j * L_eta({32: 2, 8: 3, 16: -1}, 2, c)),
        lambda c: family_closed("m", 4j * mp.sqrt(2 + 2 * mp.sqrt(2)), c)
        + 1j * family_closed("m", 4 * (mp.sqrt(2) - 1), c),
        group="class-invariants", anchor="(16 sqrt2/pi^2) L(g,2) = m(4i sqrt(2+2sqrt2)) + i m(4(sqrt2-1))")
    formal("g-product", _g_q_product,
           lambda o: _eq({8: 5, 16: -1}, o) + 2 * I * _eq({32: 2, 8: 3, 16: -1}, o),
           "q phi(iq^2) f^3(-q^8) = e_8^5/e_16 + 2i e_32^2 e_8^3/e_16", "class-invariants",
           erratum="the real part of the product is e_8 e_16^5/e_32^2, not e_8^5/e_16 (they differ at q^9); "
                   "see g-product-corrected")
    formal("g-product-corrected", _g_q_product,
           lambda o: _eq({8: 1, 16: 5, 32: -2}, o) + 2 * I * _eq({32: 2, 8: 3, 16: -1}, o),
           "q phi(iq^2) f^3(-q^8) = e_8 e_16^5/e_32^2 + 2i e_32^2 e_8^3/e_16", "class-invariants",
           corrects="g-product")

    # ---- polylogarithms
    add("BW-F111", lambda c: F_2d(TwoDFamily("F111", 1), c), lambda c: F111_bloch_wigner(1, c),
        group="polylog", anchor="F(1,1,1,x)/(3+x)^2 as a Bloch-Wigner sum at x = 1")
    add("Lf4", lambda c: L_eta([(1, {3: 3, 5: 3}), (1, {1: 3, 15: 3})], 4, c), lambda c: Lf4_polylog(c),
        group="polylog", anchor="L(f,4), f = e_3^3 e_5^3 + e_1^3 e_15^3, as a sum of R(i q^n)")

    # ---- formal expansions
    formal("pentagonal", _brute_product, lambda o: theta_series("f_minus", o),
           "prod (1-q^n) = sum (-1)^n q^(n(3n+1)/2)", "intro")
    formal("theta-phi", lambda o: theta_series("phi", o), lambda o: _eq({2: 5, 1: -2, 4: -2}, o),
           "phi(q) = e_2^5/(e_1^2 e_4^2)", "two-dim")
    formal("theta-psi", lambda o: q_monomial(Fraction(1, 8), 1, o) * theta_series("psi", o),
           lambda o: _eq({2: 2, 1: -1}, o), "q^(1/8) psi(q) = e_2^2/e_1", "two-dim")
    formal("theta-ej", lambda o: q_monomial(Fraction(5, 24), 1, o) * _sub(theta_series("f_minus", Fraction(o) / 5), 5),
           lambda o: _eq({5: 1}, o), "e_j = sum (-1)^n q^(j(6n+1)^2/24), j = 5", "two-dim")
    formal("theta-ecubed", lambda o: theta_series("e_cubed", o, j=3), lambda o: _eq({3: 3}, o),
           "e_j^3 = sum (-1)^n (2n+1) q^(j(2n+1)^2/8), j = 3", "two-dim")
    formal("theta-e1sq-e2", lambda o: theta_series("e1sq_over_e2", o), lambda o: _eq({1: 2, 2: -1}, o),
           "e_1^2/e_2 = sum (-1)^n q^(n^2)", "two-dim")
    formal("theta-e1e4-e2", lambda o: theta_series("e1e4_over_e2", o), lambda o: _eq({1: 1, 4: 1, 2: -1}, o),
           "e_1 e_4/e_2 = sum (-1)^(n(n+1)/2) q^((2n+1)^2/8)", "two-dim")
    formal("theta-e1sq-e4sq-e2", lambda o: theta_series("e1sq_e4sq_over_e2", o),
           lambda o: _eq({1: 2, 4: 2, 2: -1}, o), "e_1^2 e_4^2/e_2 = sum (3n+1) q^((3n+1)^2/3)", "two-dim")
    return reg


_REGISTRY: dict | None = None


def registry() -> dict:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _build()
    return _REGISTRY


def get(id_: str) -> Identity:
    try:
        return registry()[id_]
    except KeyError:
        raise KeyError(f"unknown identity {id_!r}") from None


def _group_of(section) -> str | None:
    if section is None:
        return None
    s = str(section)
    if s.isdigit():
        n = int(s)
        if not 1 <= n <= len(GROUPS):
            raise ValueError(f"section must be 1..{len(GROUPS)}")
        return GROUPS[n - 1]
    if s not in GROUPS:
        raise ValueError(f"unknown section {s!r}; expected one of {', '.join(GROUPS)}")
    return s


def registry_list(status: str | None = None, section=None, kind: str | None = None,
                  ids: Iterable[str] | None = None) -> list[Identity]:
    """Identities matching every given filter, in registration order."""
    group = _group_of(section)
    wanted = set(ids) if ids is not None else None
    out = []
    for ident in registry().values():
        if status and ident.status != status:
            continue
        if group and ident.group != group:
            continue
        if kind and ident.kind != kind:
            continue
        if wanted is not None and ident.id not in wanted:
            continue
        out.append(ident)
    return out


# ------------------------------------------------------------ verification


def _fmt(v, digits: int) -> str:
    if isinstance(v, mp.mpc) and mp.im(v) != 0:
        return f"{mp.nstr(mp.re(v), digits)}{'+' if mp.im(v) >= 0 else '-'}{mp.nstr(abs(mp.im(v)), digits)}j"
    return mp.nstr(mp.re(v) if isinstance(v, mp.mpc) else v, digits)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _verify_formal(ident: Identity, order: int) -> VerificationReport:
    t0 = time.perf_counter()
    try:
        lhs = ident.lhs(order)
    except (LatticeLabError, ValueError, ArithmeticError) as exc:
        raise IdentityEvaluationError(ident.id, "lhs", exc) from exc
    try:
        rhs = ident.rhs(order)
    except (LatticeLabError, ValueError, ArithmeticError) as exc:
        raise IdentityEvaluationError(ident.id, "rhs", exc) from exc
    res = check_series_identity(lhs, rhs, order)
    mis = res["first_mismatch"]
    return VerificationReport(
        id=ident.id,
        kind=ident.kind,
        lhs_value=repr(lhs.truncate(min(Fraction(order), lhs.precision, Fraction(4) + _lead(lhs)))),
        rhs_value=repr(rhs.truncate(min(Fraction(order), rhs.precision, Fraction(4) + _lead(rhs)))),
        abs_diff="0" if mis is None else "nonzero",
        digits_matched=int(order) if mis is None else int(math.floor(mis)),
        runtime_seconds=round(time.perf_counter() - t0, 3),
        precision_used=int(order),
        status_echo=ident.status,
        timestamp=_now(),
        passed=mis is None,
        target=int(order),
        first_mismatch=None if mis is None else str(mis),
        anchor=ident.anchor,
        erratum=ident.metadata.get("erratum"),
    )


def _lead(s: QExpansion) -> Fraction:
    v = s.valuation()
    return Fraction(v, s.denom) if v is not None else Fraction(0)


def verify(id_: str, digits: int | None = None, ctx: PrecisionContext | None = None,
           order: int | None = None, store: str | Path | None = None) -> VerificationReport:
    """Evaluate both sides of an identity and compare.

    Numeric identities are evaluated at ``digits + GUARD`` target digits
    (``ctx`` supplies the remaining policy); formal identities are compared
    coefficientwise below q^order.  Evaluation failures raise
    :class:`IdentityEvaluationError` naming the side.  With ``store`` the
    report is also written to ``store/<id>.json``.
    """
    ident = get(id_)
    if ident.kind == "formal_series":
        rep = _verify_formal(ident, int(order or ident.default_order or DEFAULT_ORDER))
    else:
        digits = int(digits or ident.default_digits or DEFAULT_DIGITS)
        if digits < 5:
            raise ValueError("digits must be >= 5")
        base = ctx or PrecisionContext()
        wctx = base.with_digits(digits + GUARD)
        t0 = time.perf_counter()
        with mp.workdps(wctx.dps):
            try:
                lhs = ident.lhs(wctx)
            except (LatticeLabError, ValueError, ArithmeticError, ZeroDivisionError) as exc:
                raise IdentityEvaluationError(ident.id, "lhs", exc) from exc
            try:
                rhs = ident.rhs(wctx)
            except (LatticeLabError, ValueError, ArithmeticError, ZeroDivisionError) as exc:
                raise IdentityEvaluationError(ident.id, "rhs", exc) from exc
            lhs, rhs = mp.mpmathify(lhs), mp.mpmathify(rhs)
            diff = abs(lhs - rhs)
            scale = max(mp.mpf(1), abs(lhs))
            matched = wctx.dps if diff == 0 else int(mp.floor(-mp.log10(diff / scale)))
            shown = digits + 3
            rep = VerificationReport(
                id=ident.id,
                kind=ident.kind,
                lhs_value=_fmt(lhs, shown),
                rhs_value=_fmt(rhs, shown),
                abs_diff=mp.nstr(diff, 3),
                digits_matched=matched,
                runtime_seconds=round(time.perf_counter() - t0, 3),
                precision_used=wctx.dps,
                status_echo=ident.status,
                timestamp=_now(),
                passed=matched >= digits,
                target=digits,
                first_mismatch=None,
                anchor=ident.anchor,
                erratum=ident.metadata.get("erratum"),
            )
    if store:
        from .reports import write_report_file

        write_report_file(rep, Path(store) / f"{ident.id}.json")
    return rep


def _failure_report(ident: Identity, exc: Exception, target) -> VerificationReport:
    return VerificationReport(
        id=ident.id, kind=ident.kind, lhs_value="", rhs_value="", abs_diff="nan", digits_matched=0,
        runtime_seconds=0.0, precision_used=0, status_echo=ident.status, timestamp=_now(), passed=False,
        target=target, first_mismatch=None, anchor=ident.anchor, erratum=ident.metadata.get("erratum"),
        error=str(exc),
    )


def _worker(args) -> VerificationReport:
    id_, digits, order = args
    ident = get(id_)
    try:
        return verify(id_, digits, order=order)
    except Exception as exc:  # recorded, never aborts the suite
        return _failure_report(ident, exc, order if ident.kind == "formal_series" else digits)


def run_suite(status: str | None = None, section=None, kind: str | None = None, ids: Iterable[str] | None = None,
              digits: int | None = None, order: int | None = None, jobs: int = 1) -> list[VerificationReport]:
    """Verify every matching identity; results come back in registry order.

    With ``jobs > 1`` identities are spread over worker processes.  A
    numeric identity passes when digits_matched >= digits (its default
    digits when ``digits`` is None); a formal one when all coefficients
    below the order agree.
    """
    todo = [(i.id, digits, order) for i in registry_list(status, section, kind, ids)]
    if not todo:
        return []
    if jobs <= 1 or len(todo) == 1:
        return [_worker(t) for t in todo]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_worker, todo))
