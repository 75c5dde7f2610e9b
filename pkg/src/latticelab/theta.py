"""Numeric theta functions, eta products and class invariants.

Notation (Ramanujan):

    phi(q) = sum_n q^(n^2),          psi(q) = sum_{n>=0} q^(n(n+1)/2),
    f(-q)  = (q; q)_oo,              e_j    = q^(j/24) (q^j; q^j)_oo,

and the cubic theta functions

    a(q) = sum q^(m^2+mn+n^2),   b(q) = sum w^(m-n) q^(m^2+mn+n^2),
    c(q) = sum q^((m+1/3)^2+(m+1/3)(n+1/3)+(n+1/3)^2),   w = e^(2 pi i/3).

Fractional powers of q (in e_j and c) use the principal branch of log q.
Points on rays should be built with :func:`ray_point` so the argument is an
exact rational multiple of pi.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .context import DomainError, PrecisionContext, PrecisionError
from .specfun import to_mp

__all__ = [
    "ThetaKind",
    "theta_eval",
    "phi",
    "psi",
    "f_minus",
    "eta_level",
    "sig3",
    "eta_inverted",
    "eta_product",
    "ClassInvariantPair",
    "class_invariants",
    "ray_point",
    "clear_cache",
]

_TAGS = ("phi", "psi", "f_minus", "q_pochhammer", "eta_level", "sig3_a", "sig3_b", "sig3_c")


@dataclass(frozen=True)
class ThetaKind:
    tag: str
    param: object = None  # x for q_pochhammer, j for eta_level

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown theta kind {self.tag!r}")
        if self.tag == "eta_level" and (not isinstance(self.param, int) or self.param < 1):
            raise ValueError("eta_level needs an integer level j >= 1")
        if self.tag == "q_pochhammer" and self.param is None:
            raise ValueError("q_pochhammer needs the parameter x")


_cache: dict = {}
_lock = threading.Lock()


def clear_cache():
    with _lock:
        _cache.clear()


def _key(kind, q, dps):
    return (kind, mp.nstr(mp.re(q), dps + 5), mp.nstr(mp.im(q), dps + 5), dps)


def ray_point(angle, modulus, ctx: PrecisionContext | None = None):
    """Return ``modulus * exp(pi*i*angle)`` with ``angle`` an exact rational."""
    ctx = ctx or PrecisionContext()
    angle = Fraction(angle)
    with mp.workdps(ctx.dps):
        r = to_mp(modulus)
        if angle.denominator == 1:
            return r if angle.numerator % 2 == 0 else -r
        if angle.denominator == 2:
            return mp.mpc(0, r if angle.numerator % 4 == 1 else -r)
        return r * mp.expjpi(mp.mpf(angle.numerator) / angle.denominator)


def _check_q(q):
    if abs(q) >= 1:
        raise DomainError(f"|q| = {mp.nstr(abs(q), 8)} >= 1")


def _cutoff(r, ctx: PrecisionContext, a, extra=0):
    """Smallest N with r^(a*N^2) below tol/10, i.e. a Gaussian tail bound."""
    if r == 0:
        return 1
    lt = -mp.log(ctx.tol / 10 / (1 + extra))
    n = int(mp.sqrt(lt / (a * -mp.log(r)))) + 2
    if n > ctx.max_terms:
        raise PrecisionError("theta sum needs more terms than the budget allows")
    return n


def _phi(q, ctx):
    r = abs(q)
    n_max = _cutoff(r, ctx, 1, 2 / (1 - r))
    s = mp.mpf(1)
    for n in range(1, n_max + 1):
        s += 2 * q ** (n * n)
    return s


def _psi(q, ctx):
    r = abs(q)
    n_max = _cutoff(r, ctx, mp.mpf(1) / 2, 1 / (1 - r))
    s = mp.mpf(0)
    for n in range(0, n_max + 1):
        s += q ** (n * (n + 1) // 2)
    return s


def _f_minus(q, ctx):
    # Euler's pentagonal number theorem
    r = abs(q)
    n_max = _cutoff(r, ctx, mp.mpf(3) / 2, 2 / (1 - r))
    s = mp.mpf(1)
    for n in range(1, n_max + 1):
        sg = -1 if n % 2 else 1
        s += sg * (q ** (n * (3 * n - 1) // 2) + q ** (n * (3 * n + 1) // 2))
    return s


def _pochhammer(x, q, ctx):
    r = abs(q)
    ax = abs(x)
    p = mp.mpf(1)
    qn = mp.mpf(1)
    n = 0
    while True:
        p *= 1 - x * qn
        qn *= q
        n += 1
        # |log prod_{k>=n}(1 - x q^k)| <= 2 |x| r^n / (1 - r) once that is < 1/2
        tail = 2 * ax * abs(qn) / (1 - r)
        if tail < mp.mpf(1) / 2 and tail < ctx.tol / 10:
            return p
        if n > ctx.max_terms:
            raise PrecisionError("q-Pochhammer product: term budget exhausted")


def _sig3(which, q, ctx):
    r = abs(q)
    # m^2+mn+n^2 >= (3/4) max(|m|,|n|)^2 and a shell of radius M has 8M points
    n_max = _cutoff(r, ctx, mp.mpf(3) / 4, 100)
    if which == "c":
        # c(q) = q^(1/3) sum q^(m^2+mn+n^2+m+n)
        qt = mp.exp(mp.log(q) / 3)
        s = mp.mpf(0)
        for m in range(-n_max, n_max + 1):
            for n in range(-n_max, n_max + 1):
                e = m * m + m * n + n * n + m + n
                s += q ** e
        return qt * s
    s = mp.mpf(0)
    w = mp.expjpi(mp.mpf(2) / 3) if which == "b" else None
    for m in range(-n_max, n_max + 1):
        for n in range(-n_max, n_max + 1):
            t = q ** (m * m + m * n + n * n)
            if w is not None:
                k = (m - n) % 3
                if k:
                    t *= w if k == 1 else mp.conj(w)
            s += t
    return s


def theta_eval(kind: ThetaKind, q, ctx: PrecisionContext | None = None, memo: bool = True):
    """Evaluate the theta function ``kind`` at complex ``q`` with ``|q| < 1``.

    Results are memoized on (kind, q, dps); the cache is shared by threads.
    Quadrature integrands pass ``memo=False``.
    """
    ctx = ctx or PrecisionContext()
    if isinstance(kind, str):
        kind = ThetaKind(kind)
    with mp.workdps(ctx.dps):
        q = to_mp(q)
        _check_q(q)
        key = _key(kind, q, ctx.dps) if memo else None
        hit = _cache.get(key) if memo else None
        if hit is not None:
            return hit
        tag = kind.tag
        if q == 0:
            val = mp.mpf(1) if tag in ("phi", "psi", "f_minus", "q_pochhammer", "sig3_a", "sig3_b") else mp.mpf(0)
            if tag == "q_pochhammer":
                val = 1 - to_mp(kind.param)
        elif tag == "phi":
            val = _phi(q, ctx)
        elif tag == "psi":
            val = _psi(q, ctx)
        elif tag == "f_minus":
            val = _f_minus(q, ctx)
        elif tag == "q_pochhammer":
            val = _pochhammer(to_mp(kind.param), q, ctx)
        elif tag == "eta_level":
            j = kind.param
            val = mp.exp(j * mp.log(q) / 24) * _f_minus(q ** j, ctx)
        else:
            val = _sig3(tag[-1], q, ctx)
        if memo:
            with _lock:
                _cache.setdefault(key, val)
        return val


def phi(q, ctx=None, memo=True):
    return theta_eval(ThetaKind("phi"), q, ctx, memo)


def psi(q, ctx=None, memo=True):
    return theta_eval(ThetaKind("psi"), q, ctx, memo)


def f_minus(q, ctx=None, memo=True):
    """f(-q) = (q; q)_oo.  Pass ``-u`` to get f(u)."""
    return theta_eval(ThetaKind("f_minus"), q, ctx, memo)


def eta_level(j: int, q, ctx=None, memo=True):
    return theta_eval(ThetaKind("eta_level", j), q, ctx, memo)


def sig3(which: str, q, ctx=None, memo=True):
    return theta_eval(ThetaKind("sig3_" + which), q, ctx, memo)


def _eta_imag(x, ctx):
    # eta(i x) = e^(-pi x/12) prod (1 - e^(-2 pi n x)), x >= 1 in practice
    q = mp.exp(-2 * mp.pi * x)
    return mp.exp(-mp.pi * x / 12) * _f_minus(q, ctx)


def eta_inverted(j, t, ctx: PrecisionContext | None = None):
    """e_j at q = e^(-2 pi t), i.e. eta(i j t), using eta(i/x) = sqrt(x) eta(i x).

    For ``j t < 1`` the value is ``(jt)^(-1/2) eta(i/(jt))``; otherwise the
    product is summed directly.  Both branches converge at least like
    e^(-2 pi) per term.
    """
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        x = to_mp(j) * to_mp(t)
        if x <= 0:
            raise DomainError("eta_inverted needs t > 0")
        if x < 1:
            return _eta_imag(1 / x, ctx) / mp.sqrt(x)
        return _eta_imag(x, ctx)


def eta_product(factors, t, ctx: PrecisionContext | None = None, branch: str = "auto"):
    """prod_j e_j(t)^r_j at q = e^(-2 pi t); ``factors`` maps j -> r_j.

    ``branch`` may be 'direct' or 'inverted' to force one evaluation route
    for every factor (used to cross-check the two).
    """
    ctx = ctx or PrecisionContext()
    items = factors.items() if hasattr(factors, "items") else factors
    with mp.workdps(ctx.dps):
        t = to_mp(t)
        p = mp.mpf(1)
        for j, r in items:
            x = to_mp(j) * t
            if branch == "direct":
                v = _eta_imag(x, ctx)
            elif branch == "inverted":
                v = _eta_imag(1 / x, ctx) / mp.sqrt(x)
            else:
                v = eta_inverted(j, t, ctx)
            p *= v ** r
        return p


@dataclass(frozen=True)
class ClassInvariantPair:
    m: Fraction
    g: object
    G: object

    def relation_residual(self):
        """(g G)^8 (G^8 - g^8) - 1/4."""
        return (self.g * self.G) ** 8 * (self.G ** 8 - self.g ** 8) - mp.mpf(1) / 4

    def table_value(self):
        """8 g^8 G^4."""
        return 8 * self.g ** 8 * self.G ** 4


def class_invariants(m, ctx: PrecisionContext | None = None) -> ClassInvariantPair:
    """g_m, G_m at q = e^(-pi sqrt m) from their product definitions."""
    ctx = ctx or PrecisionContext()
    m = Fraction(m)
    if m <= 0:
        raise DomainError("class invariants need m > 0")
    with mp.workdps(ctx.dps):
        q = mp.exp(-mp.pi * mp.sqrt(to_mp(m)))
        pre = mp.mpf(2) ** (-mp.mpf(1) / 4) * q ** (-mp.mpf(1) / 24)
        q2 = q * q
        # (±q; q^2)_oo = (x; q^2)_oo with x = ±q
        g = pre * _pochhammer(q, q2, ctx)
        G = pre * _pochhammer(-q, q2, ctx)
        return ClassInvariantPair(m, g, G)
