"""Mahler measures of two-variable Laurent polynomials.

m(P) = int_0^1 int_0^1 log|P(e^(2 pi i s), e^(2 pi i t))| ds dt.  The inner
integral over z is done exactly with Jensen's formula,

    int_0^1 log|sum_b c_b z^b| dt = log|c_top| + sum_roots log max(1, |z_i|),

so only a one-dimensional quadrature in y = e^(2 pi i s) remains.  The
integrand is smooth except where a root crosses the unit circle; those
points are located first and used as breakpoints.

The families used throughout:

    m(k) = m(k + y + 1/y + z + 1/z)
    n(k) = m(y^3 + z^3 + 1 - k y z)
    g(k) = m((1+y)(1+z)(y+z) - k y z)
    r(k) = m((1+y)(1+z)(1+y+z) - k y z)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np

from .context import DomainError, PrecisionContext, PrecisionError
from .specfun import const_A, const_B, integrate_path, log_hyp, pfq, s_factor, to_mp

__all__ = [
    "LaurentPoly2",
    "MahlerFamily",
    "mahler_2var",
    "family_poly",
    "family_direct",
    "family_closed",
    "aux_m2_n2_ntilde",
    "m_rewrite",
    "n_rewrite",
    "n_rewrite_printed",
]


class LaurentPoly2:
    """Finite sum of terms c * y^a * z^b with complex coefficients."""

    def __init__(self, terms):
        acc: dict[tuple[int, int], object] = {}
        for a, b, c in terms:
            key = (int(a), int(b))
            acc[key] = acc.get(key, 0) + c
        self.terms = {k: v for k, v in acc.items() if v != 0}
        if not self.terms:
            raise DomainError("the zero polynomial has no Mahler measure")

    def __repr__(self):
        return f"LaurentPoly2({self.to_text()!r})"

    def __mul__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        out = []
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                out.append((a1 + a2, b1 + b2, c1 * c2))
        return LaurentPoly2(out)

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return LaurentPoly2([(a, b, c) for (a, b), c in self.terms.items()]
                            + [(a, b, c) for (a, b), c in other.terms.items()])

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + other.scale(-1)

    def scale(self, c) -> "LaurentPoly2":
        return LaurentPoly2([(a, b, v * c) for (a, b), v in self.terms.items()])

    @classmethod
    def monomial(cls, a=0, b=0, c=1):
        return cls([(a, b, c)])

    def to_text(self) -> str:
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            s = f"({c})"
            if a:
                s += f"*y^{a}"
            if b:
                s += f"*z^{b}"
            parts.append(s)
        return " + ".join(parts)

    _TERM = re.compile(r"^(?:(?P<c>[^*yz]+)\*?)?(?P<rest>(?:[yz](?:\^\(?-?\d+\)?)?\*?)*)$")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly2":
        """Parse e.g. ``"k + y + y^-1 + z + z^-1"`` with numeric k.

        Terms are ``c*y^a*z^b`` joined by + or -; c may be an integer,
        fraction, decimal or Gaussian rational such as ``(1+2i)`` or ``3/2i``.
        """
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial")
        # split at top-level + and - (not inside parentheses or after ^)
        pieces, depth, cur = [], 0, ""
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch in "+-" and depth == 0 and cur and not cur.endswith("^"):
                pieces.append(cur)
                cur = ch
            else:
                cur += ch
        pieces.append(cur)
        terms = []
        for p in pieces:
            sign = 1
            while p and p[0] in "+-":
                if p[0] == "-":
                    sign = -sign
                p = p[1:]
            m = cls._TERM.match(p)
            if not m or not p:
                raise ValueError(f"cannot parse term {p!r}")
            c = _parse_coeff(m.group("c")) if m.group("c") else 1
            a = b = 0
            for var, e in re.findall(r"([yz])(?:\^\(?(-?\d+)\)?)?", m.group("rest")):
                e = int(e) if e else 1
                if var == "y":
                    a += e
                else:
                    b += e
            terms.append((a, b, sign * c))
        return cls(terms)

    def z_coefficients(self, y):
        """Coefficients (highest z-power first) of z^(-bmin) P(y, z)."""
        bmin = min(b for _, b in self.terms)
        bmax = max(b for _, b in self.terms)
        co = [0] * (bmax - bmin + 1)
        for (a, b), c in self.terms.items():
            co[bmax - b] = co[bmax - b] + c * y ** a
        return co

    def __call__(self, y, z):
        return sum(c * y ** a * z ** b for (a, b), c in self.terms.items())


def _parse_coeff(t: str):
    t = t.strip("()")
    if "i" in t or "j" in t:
        t = t.replace("j", "i")
        m = re.fullmatch(r"([+-]?[\d./]+)?([+-][\d./]*)?i", t)
        if m and m.group(2) is not None:
            re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
            im_s = m.group(2)
            im_part = Fraction(im_s + "1") if im_s in "+-" else Fraction(im_s)
        elif m:
            im_s = m.group(1) or "1"
            re_part, im_part = Fraction(0), Fraction(im_s + "1" if im_s in "+-" else im_s)
        else:
            raise ValueError(f"bad coefficient {t!r}")
        return mp.mpc(to_mp(re_part), to_mp(im_part))
    try:
        return Fraction(t)
    except ValueError:
        pass
    try:
        return to_mp(t)
    except (TypeError, ValueError):
        raise ValueError(f"bad coefficient {t!r}") from None


def _np_coeffs(P: LaurentPoly2, y: complex):
    return np.array([complex(c) for c in P.z_coefficients(y)], dtype=complex)


def _jensen(P: LaurentPoly2, t, ctx) -> object:
    y = mp.expjpi(2 * t)
    co = [to_mp(c) for c in P.z_coefficients(y)]
    while co and abs(co[0]) == 0:
        co = co[1:]
    if not co:
        raise DomainError(f"P vanishes identically in z at t = {t}")
    while len(co) > 1 and abs(co[-1]) == 0:
        co = co[:-1]
    lead = co[0]
    v = mp.log(abs(lead))
    deg = len(co) - 1
    if deg == 0:
        return v
    if deg == 1:
        return v + max(mp.mpf(0), mp.log(abs(co[1] / lead)))
    for r in _roots(co, ctx):
        a = abs(r)
        if a > 1:
            v += mp.log(a)
    return v


def _newton(co, r, ctx):
    for _ in range(60):
        p = mp.polyval(co, r, derivative=True)
        if p[1] == 0:
            break
        step = p[0] / p[1]
        r -= step
        if abs(step) < mp.mpf(10) ** (-ctx.dps):
            break
    return r


def _roots(co, ctx):
    try:
        return mp.polyroots(co, maxsteps=80, extraprec=2 * ctx.dps)
    except mp.libmp.NoConvergence:
        return [_newton(co, mp.mpc(r), ctx) for r in np.roots([complex(c) for c in co])]


def _outside_count(P: LaurentPoly2, t, ctx) -> int:
    co = [to_mp(c) for c in P.z_coefficients(mp.expjpi(2 * t))]
    while co and abs(co[0]) == 0:
        co = co[1:]
    if len(co) <= 1:
        return 0
    tol = mp.mpf(10) ** (-ctx.dps // 2)
    return sum(1 for r in _roots(co, ctx) if abs(r) > 1 + tol)


def _np_outside_count(P: LaurentPoly2, t) -> int:
    co = np.trim_zeros(_np_coeffs(P, np.exp(2j * np.pi * t)), "f")
    if len(co) <= 1:
        return 0
    return int(np.sum(np.abs(np.roots(co)) > 1 + 1e-7))


def _breakpoints(P: LaurentPoly2, ctx, grid: int = 2000) -> list:
    """t in (0,1) where a z-root crosses the unit circle or the degree drops.

    Crossings are bracketed on a double-precision grid by a change in the
    number of roots outside the circle, then bisected at working precision.
    """
    ts = np.linspace(0, 1, grid + 1)
    counts = [_np_outside_count(P, t) for t in ts]
    out = []
    for i in range(grid):
        if counts[i] == counts[i + 1]:
            continue
        with mp.workdps(ctx.dps):
            lo, hi = mp.mpf(ts[i]), mp.mpf(ts[i + 1])
            c_lo = _outside_count(P, lo, ctx)
            for _ in range(4 * ctx.dps):
                mid = (lo + hi) / 2
                if _outside_count(P, mid, ctx) == c_lo:
                    lo = mid
                else:
                    hi = mid
                if hi - lo < mp.mpf(10) ** (-ctx.dps + 2):
                    break
            out.append((lo + hi) / 2)
    # zeros of the leading z-coefficient on |y| = 1
    bmax = max(b for _, b in P.terms)
    lead = {a: c for (a, b), c in P.terms.items() if b == bmax}
    amin, amax = min(lead), max(lead)
    if amax > amin:
        with mp.workdps(ctx.dps):
            poly = [0] * (amax - amin + 1)
            for a, c in lead.items():
                poly[amax - a] = to_mp(c)
            for r in _roots(poly, ctx):
                if abs(abs(r) - 1) < mp.mpf(10) ** (-ctx.dps // 2):
                    out.append(mp.arg(r) / (2 * mp.pi) % 1)
    out = sorted(out)
    merged = []
    for b in out:
        if 0 < b < 1 and (not merged or b - merged[-1] > mp.mpf(10) ** (-ctx.dps // 2)):
            merged.append(b)
    return merged


def mahler_2var(P: LaurentPoly2, ctx: PrecisionContext | None = None):
    """Mahler measure of ``P`` via Jensen's formula in z and quadrature in y."""
    ctx = ctx or PrecisionContext(15)
    if len({b for _, b in P.terms}) == 1 and len({a for a, _ in P.terms}) == 1:
        with mp.workdps(ctx.dps):
            return mp.log(abs(to_mp(next(iter(P.terms.values())))))
    if len({b for _, b in P.terms}) == 1:
        # no z-dependence: swap the roles of y and z
        P = LaurentPoly2([(b, a, c) for (a, b), c in P.terms.items()])
    bps = _breakpoints(P, ctx)
    with mp.workdps(ctx.dps):
        nodes = [mp.mpf(0)] + bps + [mp.mpf(1)]
        total = mp.mpf(0)
        err = mp.mpf(0)
        for a, b in zip(nodes[:-1], nodes[1:]):
            v, e = mp.quad(lambda t: _jensen(P, t, ctx), [a, b], error=True)
            total += v
            err += e
        if err > mp.mpf(10) ** (-ctx.target_digits + 2):
            raise PrecisionError(f"Mahler quadrature error {mp.nstr(err, 3)}")
        return total


@dataclass(frozen=True)
class MahlerFamily:
    tag: str
    k: object

    def __post_init__(self):
        if self.tag not in ("m", "n", "g", "r"):
            raise ValueError(f"unknown family {self.tag!r}")


def family_poly(tag: str, k) -> LaurentPoly2:
    y, z, one = (LaurentPoly2.monomial(1, 0), LaurentPoly2.monomial(0, 1), LaurentPoly2.monomial())
    if tag == "m":
        return LaurentPoly2([(0, 0, k), (1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)])
    if tag == "n":
        return LaurentPoly2([(3, 0, 1), (0, 3, 1), (0, 0, 1), (1, 1, -k)])
    if tag == "g":
        base = (one + y) * (one + z) * (y + z)
    elif tag == "r":
        base = (one + y) * (one + z) * (one + y + z)
    else:
        raise ValueError(f"unknown family {tag!r}")
    return LaurentPoly2([(a, b, c) for (a, b), c in base.terms.items()] + [(1, 1, -k)])


def family_direct(fam: MahlerFamily | str, k=None, ctx: PrecisionContext | None = None):
    """Mahler measure of the family polynomial by direct quadrature."""
    if isinstance(fam, str):
        fam = MahlerFamily(fam, k)
    return mahler_2var(family_poly(fam.tag, fam.k), ctx)


def m_rewrite(k, ctx: PrecisionContext):
    """|k|/4 3F2(1/2,1/2,1/2; 1,3/2; k^2/16) for real 0 < |k| <= 4."""
    with mp.workdps(ctx.dps):
        k = to_mp(k)
        h = mp.mpf(1) / 2
        return abs(k) / 4 * pfq([h, h, h], [1, 3 * h], k * k / 16, ctx)


def _n_3f2_pair(k, ctx):
    t1, t2 = mp.mpf(1) / 3, mp.mpf(2) / 3
    w = k ** 3 / 27
    a = const_A(ctx) * k * pfq([t1, t1, t1], [t2, 4 * t1], w, ctx)
    b = const_B(ctx) * k ** 2 * pfq([t2, t2, t2], [4 * t1, 5 * t1], w, ctx)
    return a, b


def n_rewrite(k, ctx: PrecisionContext):
    """(A k 3F2(1/3,1/3,1/3;2/3,4/3;k^3/27) + B k^2 3F2(2/3,2/3,2/3;4/3,5/3;k^3/27)) / s(k).

    Real k with 0 < |k| <= 3.  For k > 0, s(k) = 1; for k < 0 the factor
    s(k) = -1/2 divides the right side (printed as a multiplier).
    """
    with mp.workdps(ctx.dps):
        k = to_mp(k)
        s = s_factor(k)
        a, b = _n_3f2_pair(k, ctx)
        return (a + b) * s.denominator / s.numerator


def n_rewrite_printed(k, ctx: PrecisionContext):
    """Right side as printed, s(k) multiplying the 3F2 combination."""
    with mp.workdps(ctx.dps):
        k = to_mp(k)
        s = s_factor(k)
        a, b = _n_3f2_pair(k, ctx)
        return (a + b) * s.numerator / s.denominator


def _ntilde(k, ctx):
    return mp.re(mp.log(k) - log_hyp(mp.mpf(1) / 3, 27 / k ** 3, ctx) / 3)


def family_closed(tag: str, k, ctx: PrecisionContext | None = None):
    """Hypergeometric closed forms of m, n, g and of the auxiliary n-tilde."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        k = to_mp(k)
        if k == 0:
            raise DomainError("k = 0 is excluded")
        real = mp.im(k) == 0
        if tag == "m":
            if real and abs(k) <= 4:
                return m_rewrite(k, ctx)
            return mp.re(mp.log(k) - log_hyp(mp.mpf(1) / 2, 16 / k ** 2, ctx) / 2)
        if tag == "n":
            if abs(27 / k ** 3) < 1:
                return _ntilde(k, ctx)
            if not real:
                raise DomainError("n(k) closed form needs |27/k^3| < 1 for non-real k")
            if k > 0:
                # the measure and the formula part ways for 0 < k < 3
                raise DomainError("n(k) closed form is not valid for real 0 < k < 3; use 'ntilde'")
            return n_rewrite(k, ctx)
        if tag == "ntilde":
            return _ntilde(k, ctx)
        if tag in ("g", "g_printed"):
            if real and -4 <= k <= 2:
                raise DomainError("g(k) closed form excludes k in [-4, 2]; use family_direct")
            t = mp.mpf(1) / 3
            w1, w2 = 27 * k ** 2 / (4 + k) ** 3, 27 * k / (k - 2) ** 3
            if not real and max(abs(w1), abs(w2)) >= 1:
                # e.g. k = 3i: the principal branch is off by 0.2
                raise DomainError("g(k) closed form for non-real k needs both 4F3 arguments in the unit disk")
            v = mp.re(mp.log((4 + k) * (k - 2) ** 4 / k ** 2)
                      - log_hyp(t, w1, ctx) / 3
                      - 4 * log_hyp(t, w2, ctx) / 3)
            # the bracket is 3 g(k): it is n(k1) + 4 n(k2) with k1^3 = (4+k)^3/k^2, k2^3 = (k-2)^3/k
            return v if tag == "g_printed" else v / 3
        raise ValueError(f"no closed form for family {tag!r}")


def _im_integral_to_one(a, b, k, ctx):
    # Im int_k^1 2F1(a,b;1;1-u)/u du along the segment [k, 1]
    k = to_mp(k)
    if mp.im(k) == 0:
        if k <= 0:
            raise DomainError("segment [k,1] meets the cut u <= 0 of 2F1(1-u)")
        return mp.mpf(0)
    path = [k, 1]
    if mp.re(k) < 0:
        # keep clear of u = 0 when k sits just off the cut; same side, same branch
        path = [k, mp.mpc(0, mp.sign(mp.im(k))), 1]
    return mp.im(integrate_path(lambda u: mp.hyp2f1(a, b, 1, 1 - u) / u, path, ctx))


def aux_m2_n2_ntilde(which: str, k, ctx: PrecisionContext | None = None):
    """m2(k), n2(k) = Im int_k^1 2F1(.,.;1;1-u)/u du, or ntilde(k)."""
    ctx = ctx or PrecisionContext()
    with mp.workdps(ctx.dps):
        if which == "m2":
            h = mp.mpf(1) / 2
            return _im_integral_to_one(h, h, k, ctx)
        if which == "n2":
            return _im_integral_to_one(mp.mpf(1) / 3, mp.mpf(2) / 3, k, ctx)
        if which == "ntilde":
            return _ntilde(to_mp(k), ctx)
        raise ValueError(f"unknown auxiliary {which!r}")
