"""Special functions at arbitrary precision.

Generalized hypergeometric series with a geometric tail bound, Gauss 2F1 on
its branch cut, the Gamma constants A and B, polylogarithms, the
Bloch-Wigner dilogarithm, the R function built from Li_2..Li_4, adaptive
quadrature along polylines, and the "log series"

    L_a(w) = sum_{n>=1} (a)_n (1-a)_n / (n!^2 n) w^n,   a in {1/2, 1/3},

which is the part of the 4F3(3/2,3/2,1,1;2,2,2) and 4F3(4/3,5/3,1,1;2,2,2)
families that carries all of their analytic structure:

    4F3(3/2,3/2,1,1; 2,2,2; w) = 4 L_{1/2}(w) / w
    4F3(4/3,5/3,1,1; 2,2,2; w) = 9 L_{1/3}(w) / (2 w)

Since w L_a'(w) = 2F1(a,1-a;1;w) - 1, the principal branch of L_a off the
unit disk is an integral of 2F1 along the segment [0, w].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import mpmath as mp

from .context import DomainError, PrecisionContext, PrecisionError

__all__ = [
    "to_mp",
    "pfq",
    "hyp2f1_on_cut",
    "log_hyp",
    "hyp4f3_log_family",
    "gamma_fn",
    "const_A",
    "const_A_reflected",
    "const_B",
    "s_factor",
    "polylog",
    "bloch_wigner_D",
    "R_fn",
    "integrate_path",
    "catalan_oracle",
    "ramanujan_catalan_series",
]


def to_mp(x):
    """Convert ints, Fractions, floats, strings and mp numbers to mpf/mpc."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    if isinstance(x, complex):
        return mp.mpc(x)
    if isinstance(x, (mp.mpf, mp.mpc)):
        return x
    return mp.mpmathify(x)


def _nonpos_int(a) -> int | None:
    """Return -n if ``a`` is the nonpositive integer -n, else None."""
    if isinstance(a, Fraction):
        if a.denominator == 1 and a <= 0:
            return int(a)
        return None
    if isinstance(a, int):
        return a if a <= 0 else None
    v = to_mp(a)
    if mp.im(v) == 0 and mp.re(v) <= 0 and mp.isint(mp.re(v)):
        return int(mp.re(v))
    return None


def pfq(upper: Sequence, lower: Sequence, z, ctx: PrecisionContext):
    """Sum pFq(upper; lower; z) directly.

    The series is stopped once ``|t_{n+1}| / (1 - rho) < tol * max(1, |S|)``
    where ``rho`` bounds all later term ratios: beyond ``n0 = max|param| + 2``
    the ratio sequence is monotone and tends to ``|z|`` (p = q + 1) or to 0
    (p <= q), so ``rho = max(current ratio, limit)`` is a valid geometric bound.
    """
    p, q = len(upper), len(lower)
    for b in lower:
        if _nonpos_int(b) is not None:
            raise DomainError(f"lower parameter {b} is a nonpositive integer")
    term_len = None
    for a in upper:
        k = _nonpos_int(a)
        if k is not None:
            term_len = -k if term_len is None else min(term_len, -k)
    with mp.workdps(ctx.dps):
        zz = to_mp(z)
        A = [to_mp(a) for a in upper]
        B = [to_mp(b) for b in lower]
        if term_len is None:
            if p > q + 1 and zz != 0:
                raise DomainError("p > q+1: series diverges")
            if p == q + 1 and abs(zz) >= 1:
                raise DomainError(f"|z| = {mp.nstr(abs(zz), 8)} >= 1 for nonterminating {p}F{q}")
        limit = abs(zz) if p == q + 1 else mp.mpf(0)
        n0 = int(max([abs(x) for x in A + B] + [0])) + 2
        tol = ctx.tol
        s = mp.mpf(1)
        t = mp.mpf(1)
        n = 0
        while True:
            if term_len is not None and n >= term_len:
                return s
            num = mp.mpf(1)
            for a in A:
                num *= a + n
            den = mp.mpf(1)
            for b in B:
                den *= b + n
            t = t * num / den * zz / (n + 1)
            n += 1
            s += t
            if t == 0:
                if term_len is not None:
                    return s
                if n > n0:
                    return s
                continue
            if n > n0 and term_len is None:
                # ratio of the next term to this one
                num = mp.mpf(1)
                for a in A:
                    num *= a + n
                den = mp.mpf(1)
                for b in B:
                    den *= b + n
                r = abs(num / den * zz / (n + 1))
                rho = max(r, limit)
                if rho < 1 and abs(t) * r / (1 - rho) < tol * max(1, abs(s)):
                    return s
            if n > ctx.max_terms:
                raise PrecisionError(f"pfq: term budget {ctx.max_terms} exhausted at z={zz}")


def hyp2f1_on_cut(a, b, c, x, side: str = "principal", ctx: PrecisionContext | None = None):
    """Gauss 2F1 on the real axis, including the limits x +/- i0 on [1, oo).

    mpmath applies the z -> 1-z and z -> 1/z connection formulas internally;
    for real parameters the two boundary values are complex conjugates, so
    the requested side is fixed by comparing with a point just off the cut.
    """
    ctx = ctx or PrecisionContext()
    if side not in ("principal", "above", "below"):
        raise ValueError(f"unknown side {side!r}")
    with mp.workdps(ctx.dps):
        a, b, c, x = (to_mp(v) for v in (a, b, c, x))
        if mp.im(x) != 0:
            raise DomainError("hyp2f1_on_cut expects real x")
        x = mp.re(x)
        if x < 1:
            return mp.hyp2f1(a, b, c, x)
        if x == 1:
            if mp.re(c - a - b) > 0:
                return mp.hyp2f1(a, b, c, x)
            raise DomainError("2F1 diverges at x = 1 for these parameters")
        if side == "principal":
            raise DomainError("x >= 1 lies on the branch cut: choose side='above' or 'below'")
        sgn = 1 if side == "above" else -1
        real_params = all(mp.im(v) == 0 for v in (a, b, c))
        eps = mp.mpf(10) ** (-2 * ctx.dps)
        probe = mp.hyp2f1(a, b, c, mp.mpc(x, sgn * eps))
        if not real_params:
            return probe
        v = mp.mpc(mp.hyp2f1(a, b, c, x))
        return v if abs(v - probe) <= abs(mp.conj(v) - probe) else mp.conj(v)


def _log_hyp_series(a, w, ctx):
    # direct summation of sum_{n>=1} (a)_n (1-a)_n w^n / (n!^2 n)
    tol = ctx.tol
    t = mp.mpf(1)
    s = mp.mpf(0)
    n = 0
    aw = abs(w)
    while True:
        t = t * (a + n) * (1 - a + n) / (n + 1) ** 2 * w
        n += 1
        term = t / n
        s += term
        # later ratios are below |w|, so the tail is bounded geometrically
        if abs(term) * aw / (1 - aw) < tol * max(1, abs(s)):
            return s
        if n > ctx.max_terms:
            raise PrecisionError("log_hyp: term budget exhausted")


def log_hyp(a, w, ctx: PrecisionContext):
    """Principal branch of L_a(w) = sum_{n>=1} (a)_n (1-a)_n w^n / (n!^2 n).

    For |w| <= 3/4 the series is summed; otherwise
    L_a(w) = int_0^w (2F1(a,1-a;1;s) - 1) ds / s along the straight segment.
    For real w > 1 the segment runs along the cut and the value from above
    is returned (the real part is the same from either side).
    """
    with mp.workdps(ctx.dps):
        a = to_mp(a)
        w = to_mp(w)
        if w == 0:
            return mp.mpf(0)
        if abs(w) <= mp.mpf(3) / 4:
            return _log_hyp_series(a, w, ctx)
        on_cut = mp.im(w) == 0 and mp.re(w) > 1
        if on_cut:
            wr = mp.re(w)

            def f(s):
                return (mp.hyp2f1(a, 1 - a, 1, mp.mpc(s, mp.mpf(10) ** (-2 * ctx.dps))) - 1) / s

            head = mp.quad(lambda s: (mp.hyp2f1(a, 1 - a, 1, s) - 1) / s, [0, mp.mpf(1) / 2, 1])
            tail = mp.quad(f, [1, (1 + wr) / 2, wr])
            return head + tail
        nodes = [mp.mpf(0)]
        # put a breakpoint at the point of the segment nearest to s = 1
        t1 = mp.re(mp.conj(w) * 1) / abs(w) ** 2
        if 0 < t1 < 1:
            nodes.append(t1)
        nodes.append(mp.mpf(1))

        def g(t):
            s = w * t
            return (mp.hyp2f1(a, 1 - a, 1, s) - 1) / t

        return mp.quad(g, nodes)


def hyp4f3_log_family(which: str, w, ctx: PrecisionContext):
    """4F3(3/2,3/2,1,1;2,2,2;w) ('half') or 4F3(4/3,5/3,1,1;2,2,2;w) ('third').

    Inside the unit disk this equals the defining series; outside it is the
    principal-branch continuation obtained from :func:`log_hyp`.
    """
    with mp.workdps(ctx.dps):
        w = to_mp(w)
        if w == 0:
            return mp.mpf(1)
        if which == "half":
            return 4 * log_hyp(mp.mpf(1) / 2, w, ctx) / w
        if which == "third":
            return 9 * log_hyp(mp.mpf(1) / 3, w, ctx) / (2 * w)
        raise ValueError(f"unknown family {which!r}")


def gamma_fn(z, ctx: PrecisionContext | None = None):
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        z = to_mp(z)
        if mp.im(z) == 0 and mp.re(z) <= 0 and mp.isint(mp.re(z)):
            raise DomainError(f"Gamma has a pole at {z}")
        return mp.gamma(z)


def const_A(ctx: PrecisionContext | None = None):
    """A = 2^(1/3) Gamma(1/6) Gamma(1/3) Gamma(1/2) / (8 sqrt(3) pi^2)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        g = lambda p, q: gamma_fn(mp.mpf(p) / q, ctx)
        return mp.cbrt(2) * g(1, 6) * g(1, 3) * g(1, 2) / (8 * mp.sqrt(3) * mp.pi ** 2)


def const_A_reflected(ctx: PrecisionContext | None = None):
    """A rewritten with Gamma(1/6) = 2^(-1/3) sqrt(3/pi) Gamma(1/3)^2: Gamma(1/3)^3/(8 pi^2)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        return gamma_fn(mp.mpf(1) / 3, ctx) ** 3 / (8 * mp.pi ** 2)


def const_B(ctx: PrecisionContext | None = None):
    """B = Gamma(2/3)^3 / (16 pi^2)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        return gamma_fn(mp.mpf(2) / 3, ctx) ** 3 / (16 * mp.pi ** 2)


def s_factor(k) -> Fraction:
    """s(k) = (1 + 3 sgn k) / 4 for real nonzero k."""
    k = to_mp(k)
    if mp.im(k) != 0 or k == 0:
        raise DomainError("s(k) needs real nonzero k")
    return Fraction(1 + 3 * (1 if k > 0 else -1), 4)


def polylog(s: int, z, ctx: PrecisionContext | None = None, side: str | None = None):
    """Principal-branch Li_s(z) for s in {2, 3, 4}.

    mpmath sums the series for small |z| and uses inversion and
    Bernoulli-type expansions elsewhere.  Real z > 1 needs ``side``.
    """
    ctx = ctx or PrecisionContext()
    if s not in (2, 3, 4):
        raise DomainError("polylog order must be 2, 3 or 4")
    with mp.workdps(ctx.dps):
        z = to_mp(z)
        if mp.im(z) == 0 and mp.re(z) > 1:
            if side not in ("above", "below"):
                raise DomainError("z on the cut (1, oo) requires side='above' or 'below'")
            v = mp.mpc(mp.polylog(s, mp.re(z)))
            # the jump across the cut is 2 pi i log^{s-1} z / (s-1)!, Im > 0 above
            im = mp.pi * mp.log(mp.re(z)) ** (s - 1) / mp.factorial(s - 1)
            return mp.mpc(mp.re(v), im if side == "above" else -im)
        return mp.polylog(s, z)


def bloch_wigner_D(z, ctx: PrecisionContext | None = None):
    """D(z) = Im(Li_2(z)) + arg(1 - z) log|z|."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        z = mp.mpc(to_mp(z))
        if z == 0 or z == 1:
            raise DomainError("D(z) is singular at 0 and 1")
        if mp.im(z) == 0:
            return mp.mpf(0)
        return mp.im(mp.polylog(2, z)) + mp.arg(1 - z) * mp.log(abs(z))


def R_fn(z, ctx: PrecisionContext | None = None):
    """R(z) = Im(L Li_4(z) - L^2 Li_3(z) + L^3 Li_2(z) / 3) with L = log|z|."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        z = mp.mpc(to_mp(z))
        if z == 0 or z == 1:
            raise DomainError("R(z) is singular at 0 and 1")
        L = mp.log(abs(z))
        return mp.im(L * mp.polylog(4, z) - L ** 2 * mp.polylog(3, z) + L ** 3 * mp.polylog(2, z) / 3)


def _quad_segment(f, a, b, ctx, depth):
    d = b - a
    val, err = mp.quad(lambda s: f(a + d * s) * d, [0, 1], error=True)
    if err <= ctx.tol * max(1, abs(val)) or depth >= ctx.quadrature.max_subdivisions:
        return val, err
    m = (a + b) / 2
    v1, e1 = _quad_segment(f, a, m, ctx, depth * 2)
    v2, e2 = _quad_segment(f, m, b, ctx, depth * 2)
    return v1 + v2, e1 + e2


def integrate_path(f: Callable, path: Sequence, ctx: PrecisionContext, error: bool = False):
    """Integrate ``f`` along the polyline through ``path``.

    Each segment uses tanh-sinh quadrature; a segment whose error estimate
    misses the tolerance is bisected until ``max_subdivisions`` pieces.
    """
    if len(path) < 2:
        raise ValueError("path needs at least two nodes")
    with mp.workdps(ctx.dps):
        nodes = [to_mp(p) for p in path]
        total = mp.mpf(0)
        err = mp.mpf(0)
        for a, b in zip(nodes[:-1], nodes[1:]):
            if a == b:
                continue
            v, e = _quad_segment(f, a, b, ctx, 1)
            total += v
            err += e
        if err > ctx.tol * 10 ** (ctx.guard_digits // 2) * max(1, abs(total)):
            raise PrecisionError(f"integrate_path: error estimate {mp.nstr(err, 3)} above tolerance")
        return (total, err) if error else total


def catalan_oracle(ctx: PrecisionContext | None = None):
    """Catalan's constant from G = (pi/8) log(2+sqrt 3) + (3/8) sum 1/((2n+1)^2 C(2n,n))."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps + 5):
        s = mp.mpf(0)
        c = mp.mpf(1)  # C(2n, n)
        n = 0
        eps = mp.mpf(10) ** (-ctx.dps - 3)
        while True:
            term = 1 / ((2 * n + 1) ** 2 * c)
            s += term
            if term < eps:
                break
            c = c * 2 * (2 * n + 1) / (n + 1)
            n += 1
        return +(mp.pi / 8 * mp.log(2 + mp.sqrt(3)) + 3 * s / 8)


def ramanujan_catalan_series(ctx: PrecisionContext | None = None):
    """pi * sum C(2n,n)^2 (1/4)^(2n+1) / (2n+1), summed with Richardson extrapolation.

    The terms decay like n^-2, so the raw series is useless at high
    precision; the terms are hypergeometric in n, which suits Richardson.
    """
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps + 10):
        # (1/4)^(2n+1) C(2n,n)^2 = (1/4) ((1/2)_n / n!)^2
        term = lambda n: mp.rf(0.5, n) ** 2 / mp.factorial(n) ** 2 / (4 * (2 * n + 1))
        return +(mp.pi * mp.nsum(term, [0, mp.inf], method="richardson"))
