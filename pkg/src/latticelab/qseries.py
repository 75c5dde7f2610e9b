"""Exact truncated q-series (Puiseux series in q with a common denominator).

A :class:`QExpansion` stores ``{k: c_k}`` meaning ``sum c_k q^(k/denom)``
known modulo ``O(q^(order/denom))``.  Coefficients are ints, Fractions or
:class:`GaussQ` (Gaussian rationals); nothing here touches floating point.

Public functions that take an ``order`` argument interpret it as a bound on
the q-exponent (``eta_series(1, 200)`` is e_1 up to ``O(q^200)``); the stored
``QExpansion.order`` is that bound times ``denom``.

Eta quotients are expanded through their unit parts
``prod_j (q^j; q^j)_oo^{r_j}``, an integer power series in q: positive powers
are multiplications by the sparse pentagonal series, negative powers are
divisions by it, so no dense-by-dense products are needed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

from .context import SeriesError

MAX_DENOM = 10_000

__all__ = [
    "GaussQ",
    "QExpansion",
    "EtaQuotient",
    "eta_series",
    "eta_quotient_series",
    "theta_series",
    "series_arith",
    "check_series_identity",
    "coefficients",
    "g_product_parts",
    "eta_product_coefficients",
    "q_monomial",
    "twist_by_i",
]


class GaussQ:
    """Exact Gaussian rational re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussQ(x, 0)
        if isinstance(x, complex) and x.real == int(x.real) and x.imag == int(x.imag):
            return GaussQ(int(x.real), int(x.imag))
        return NotImplemented

    def simplify(self):
        """Drop to an int or Fraction when the imaginary part vanishes."""
        if self.im == 0:
            r = self.re
            return r.numerator if r.denominator == 1 else r
        return self

    def __add__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im).simplify()

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im).simplify()

    def __rsub__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re).simplify()

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        return GaussQ((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n).simplify()

    def __rtruediv__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        out = GaussQ(1)
        base = self if n >= 0 else GaussQ(1) / self
        for _ in range(abs(int(n))):
            out = GaussQ._lift(out * base)
        return out.simplify()

    def __eq__(self, o):
        o = self._lift(o)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


I = GaussQ(0, 1)


def _parts(c) -> tuple[Fraction, Fraction]:
    if isinstance(c, GaussQ):
        return c.re, c.im
    return Fraction(c), Fraction(0)


def _inv(c):
    if isinstance(c, GaussQ):
        return GaussQ(1) / c
    return Fraction(1) / c if not (isinstance(c, int) and c in (1, -1)) else c


class QExpansion:
    """sum_k coeffs[k] q^(k/denom) + O(q^(order/denom)); immutable."""

    __slots__ = ("denom", "order", "coeffs")

    def __init__(self, denom: int, order: int, coeffs: Mapping[int, object] | None = None):
        if denom <= 0:
            raise SeriesError("denom must be positive")
        if denom > MAX_DENOM:
            raise SeriesError(f"exponent denominator {denom} exceeds bound {MAX_DENOM}")
        clean = {}
        for k, c in (coeffs or {}).items():
            if k >= order:
                continue
            if isinstance(c, GaussQ):
                c = c.simplify()
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            if c:
                clean[int(k)] = c
        object.__setattr__(self, "denom", int(denom))
        object.__setattr__(self, "order", int(order))
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("QExpansion is immutable")

    # -- basic views -------------------------------------------------------
    @property
    def precision(self) -> Fraction:
        """Truncation point as a q-exponent."""
        return Fraction(self.order, self.denom)

    def valuation(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def coeff(self, exponent) -> object:
        e = Fraction(exponent) * self.denom
        if e.denominator != 1:
            return 0
        if e >= self.order:
            raise SeriesError(f"exponent {exponent} is beyond the truncation {self.precision}")
        return self.coeffs.get(int(e), 0)

    def items(self):
        """(exponent as Fraction, coefficient) pairs in increasing order."""
        for k in sorted(self.coeffs):
            yield Fraction(k, self.denom), self.coeffs[k]

    def rescale(self, denom: int) -> "QExpansion":
        if denom % self.denom:
            raise SeriesError("can only rescale to a multiple of the denominator")
        m = denom // self.denom
        return QExpansion(denom, self.order * m, {k * m: c for k, c in self.coeffs.items()})

    def reduced(self) -> "QExpansion":
        g = reduce(math.gcd, self.coeffs.keys(), math.gcd(self.denom, self.order))
        if g <= 1:
            return self
        return QExpansion(self.denom // g, self.order // g, {k // g: c for k, c in self.coeffs.items()})

    def truncate(self, order) -> "QExpansion":
        """Truncate at q-exponent ``order`` (must not exceed the current precision)."""
        o = Fraction(order)
        L = _lcm(self.denom, o.denominator)
        s = self.rescale(L)
        new = int(o * L)
        if new > s.order:
            raise SeriesError(f"cannot extend truncation from {self.precision} to {o}")
        return QExpansion(L, new, s.coeffs).reduced()

    # -- operators ---------------------------------------------------------
    def __add__(self, o):
        return series_arith("add", self, o)

    def __radd__(self, o):
        return series_arith("add", self, o)

    def __sub__(self, o):
        return series_arith("sub", self, o)

    def __rsub__(self, o):
        return series_arith("scalar_mul", self, -1) + o

    def __neg__(self):
        return series_arith("scalar_mul", self, -1)

    def __mul__(self, o):
        if isinstance(o, QExpansion):
            return series_arith("mul", self, o)
        return series_arith("scalar_mul", self, o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, QExpansion):
            return series_arith("div", self, o)
        return series_arith("scalar_mul", self, _inv(o))

    def __pow__(self, n: int):
        return series_arith("pow", self, n)

    def __eq__(self, o):
        if not isinstance(o, QExpansion):
            return NotImplemented
        a, b = self.reduced(), o.reduced()
        return a.denom == b.denom and a.order == b.order and a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.denom, self.order, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def __repr__(self):
        terms = []
        for e, c in list(self.items())[:6]:
            terms.append(f"({c})*q^{e}")
        more = " + ..." if len(self.coeffs) > 6 else ""
        return f"QExpansion({' + '.join(terms) or '0'}{more} + O(q^{self.precision}))"

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        rows = []
        for k in sorted(self.coeffs):
            re, im = _parts(self.coeffs[k])
            rows.append([k, re.numerator, re.denominator, im.numerator, im.denominator])
        return {"denom": self.denom, "order": self.order, "coeffs": rows}

    @classmethod
    def from_json(cls, obj) -> "QExpansion":
        if isinstance(obj, str):
            obj = json.loads(obj)
        coeffs = {}
        for k, num, den, inum, iden in obj["coeffs"]:
            coeffs[k] = GaussQ(Fraction(num, den), Fraction(inum, iden)).simplify()
        return cls(obj["denom"], obj["order"], coeffs)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _common(a: QExpansion, b: QExpansion):
    L = _lcm(a.denom, b.denom)
    return a.rescale(L), b.rescale(L), L


def q_monomial(exponent, coeff=1, order=None) -> QExpansion:
    """coeff * q^exponent, exact to q-exponent ``order`` (default: exact to exponent + 10**6)."""
    e = Fraction(exponent)
    o = Fraction(order) if order is not None else e + 10 ** 6
    L = _lcm(e.denominator, o.denominator)
    return QExpansion(L, int(o * L), {int(e * L): coeff})


def _mul(a: QExpansion, b: QExpansion) -> QExpansion:
    a, b, L = _common(a, b)
    if not a.coeffs or not b.coeffs:
        va = a.valuation() if a.coeffs else a.order
        vb = b.valuation() if b.coeffs else b.order
        return QExpansion(L, min(a.order + vb, b.order + va), {})
    va, vb = a.valuation(), b.valuation()
    order = min(a.order + vb, b.order + va)
    if len(a.coeffs) > len(b.coeffs):
        a, b = b, a
    bk = sorted(b.coeffs.items())
    out: dict[int, object] = {}
    for ka, ca in a.coeffs.items():
        lim = order - ka
        for kb, cb in bk:
            if kb >= lim:
                break
            k = ka + kb
            out[k] = out.get(k, 0) + ca * cb
    return QExpansion(L, order, out).reduced()


def _inverse(s: QExpansion) -> QExpansion:
    if not s.coeffs:
        raise SeriesError("division by a series with zero leading coefficient")
    v = s.valuation()
    c0 = s.coeffs[v]
    c0inv = _inv(c0)
    rel = s.order - v  # unit part known to this many steps
    h = sorted((k - v, c * c0inv) for k, c in s.coeffs.items() if k != v)
    g = [0] * rel
    g[0] = 1
    for n in range(1, rel):
        acc = 0
        for j, hj in h:
            if j > n:
                break
            gj = g[n - j]
            if gj:
                acc += hj * gj
        g[n] = -acc
    # 1/s = c0^-1 q^{-v} * g, exact up to relative order rel
    return QExpansion(s.denom, rel - v, {n - v: c * c0inv for n, c in enumerate(g) if c}).reduced()


def series_arith(op: str, lhs: QExpansion, rhs=None) -> QExpansion:
    """Exact arithmetic on truncated series.

    ``op`` is one of add, sub, mul, div, pow, substitute_q_power, scalar_mul.
    For add/sub a scalar rhs is treated as an exact constant.
    """
    if op in ("add", "sub"):
        if not isinstance(rhs, QExpansion):
            rhs = QExpansion(1, lhs.order * 0 + 10 ** 9, {0: rhs})
        a, b, L = _common(lhs, rhs)
        out = dict(a.coeffs)
        sign = 1 if op == "add" else -1
        for k, c in b.coeffs.items():
            out[k] = out.get(k, 0) + sign * c
        return QExpansion(L, min(a.order, b.order), out).reduced()
    if op == "mul":
        return _mul(lhs, rhs)
    if op == "div":
        return _mul(lhs, _inverse(rhs))
    if op == "scalar_mul":
        return QExpansion(lhs.denom, lhs.order, {k: c * rhs for k, c in lhs.coeffs.items()})
    if op == "pow":
        n = int(rhs)
        base = lhs if n >= 0 else _inverse(lhs)
        n = abs(n)
        result = None
        while n:
            if n & 1:
                result = base if result is None else _mul(result, base)
            n >>= 1
            if n:
                base = _mul(base, base)
        if result is None:
            return QExpansion(1, 10 ** 9, {0: 1})
        return result
    if op == "substitute_q_power":
        m = int(rhs)
        if m <= 0:
            raise SeriesError("substitute_q_power needs a positive integer power")
        return QExpansion(lhs.denom, lhs.order * m, {k * m: c for k, c in lhs.coeffs.items()}).reduced()
    raise SeriesError(f"unknown series op {op!r}")


# -- integer power series helpers (unit parts of eta quotients) ------------

def _pentagonal(step: int, n: int) -> list[tuple[int, int]]:
    """Sparse (q^step; q^step)_oo = sum (-1)^k q^(step k(3k-1)/2), exponents < n."""
    out = [(0, 1)]
    k = 1
    while True:
        e1 = step * k * (3 * k - 1) // 2
        if e1 >= n:
            break
        s = -1 if k % 2 else 1
        out.append((e1, s))
        e2 = step * k * (3 * k + 1) // 2
        if e2 < n:
            out.append((e2, s))
        k += 1
    out.sort()
    return out


def _dense_mul_sparse(a: list, sp: list[tuple[int, int]], n: int) -> list:
    out = [0] * n
    for e, c in sp:
        if e >= n:
            break
        for i in range(n - e):
            ai = a[i]
            if ai:
                out[i + e] += c * ai
    return out


def _dense_div_sparse(a: list, sp: list[tuple[int, int]], n: int) -> list:
    # solve g * h = a with h = sp, h_0 = 1
    g = list(a[:n]) + [0] * max(0, n - len(a))
    tail = [(e, c) for e, c in sp if e > 0]
    for i in range(n):
        acc = g[i]
        for e, c in tail:
            if e > i:
                break
            gi = g[i - e]
            if gi:
                acc -= c * gi
        g[i] = acc
    return g


@dataclass(frozen=True)
class EtaQuotient:
    """prod e_j^{r_j}; construct with :meth:`of` to get the canonical form."""

    factors: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, factors: Iterable[tuple[int, int]] | Mapping[int, int]) -> "EtaQuotient":
        items = factors.items() if isinstance(factors, Mapping) else factors
        acc: dict[int, int] = {}
        for j, r in items:
            j, r = int(j), int(r)
            if j < 1:
                raise SeriesError(f"eta level must be positive, got {j}")
            acc[j] = acc.get(j, 0) + r
        return cls(tuple(sorted((j, r) for j, r in acc.items() if r)))

    @property
    def leading_exponent(self) -> Fraction:
        return sum((Fraction(j * r, 24) for j, r in self.factors), Fraction(0))

    def series(self, order) -> QExpansion:
        return eta_quotient_series(self, order)


def _unit_part(factors, n: int) -> list:
    acc = [1] + [0] * (n - 1)
    for j, r in factors:
        sp = _pentagonal(j, n)
        for _ in range(abs(r)):
            acc = _dense_mul_sparse(acc, sp, n) if r > 0 else _dense_div_sparse(acc, sp, n)
    return acc


def eta_quotient_series(eq: EtaQuotient | Iterable, order) -> QExpansion:
    """Expand prod e_j^{r_j} up to O(q^order)."""
    if not isinstance(eq, EtaQuotient):
        eq = EtaQuotient.of(eq)
    v = eq.leading_exponent
    o = Fraction(order)
    rel = o - v
    if rel <= 0:
        raise SeriesError(f"order {o} does not exceed the leading exponent {v}")
    n = math.ceil(rel)
    unit = _unit_part(eq.factors, n)
    L = _lcm(24, o.denominator)
    vk = int(v * L)
    coeffs = {vk + i * L: c for i, c in enumerate(unit) if c}
    return QExpansion(L, int(o * L), coeffs).reduced()


def eta_series(j: int, order) -> QExpansion:
    """e_j = q^(j/24) prod (1 - q^(jn)) = sum (-1)^n q^(j (6n+1)^2 / 24), to O(q^order)."""
    if j < 1:
        raise SeriesError("eta level must be positive")
    o = Fraction(order)
    if o <= Fraction(j, 24):
        raise SeriesError(f"order {o} too small to hold any term of e_{j}")
    L = _lcm(24, o.denominator)
    lim = o * 24 / j  # need (6n+1)^2 < lim
    coeffs = {}
    n = 0
    while True:
        done = True
        for m in ((n,) if n == 0 else (n, -n)):
            sq = (6 * m + 1) ** 2
            if sq < lim:
                coeffs[j * sq * L // 24] = -1 if m % 2 else 1
                done = False
        if done and n > 0:
            break
        n += 1
    return QExpansion(L, int(o * L), coeffs).reduced()


def _theta_sum(terms: Iterable[tuple[Fraction, object]], order) -> QExpansion:
    o = Fraction(order)
    L = o.denominator
    acc: dict[Fraction, object] = {}
    for e, c in terms:
        if e < o:
            acc[e] = acc.get(e, 0) + c
    for e in acc:
        L = _lcm(L, e.denominator)
    return QExpansion(L, int(o * L), {int(e * L): c for e, c in acc.items()}).reduced()


def _range_sym(order, f):
    # integers n with f(n) < order, scanning outward (f grows like n^2)
    n = 0
    out = []
    while True:
        hit = False
        for m in ((0,) if n == 0 else (n, -n)):
            if f(m) < order:
                out.append(m)
                hit = True
        if not hit and n > 2:
            break
        n += 1
    return out


THETA_KINDS = (
    "phi",
    "psi",
    "f_minus",
    "e_cubed",
    "e1sq_over_e2",
    "e1e4_over_e2",
    "e1sq_e4sq_over_e2",
    "weight32_cm",
)


def theta_series(kind: str, order, j: int = 1) -> QExpansion:
    """Explicit theta-type expansions.

    phi = sum q^(n^2); psi = sum_{n>=0} q^(n(n+1)/2); f_minus = prod(1-q^n);
    e_cubed = e_j^3 = sum_{n>=0} (-1)^n (2n+1) q^(j(2n+1)^2/8);
    e1sq_over_e2 = sum (-1)^n q^(n^2);
    e1e4_over_e2 = sum_{n>=0} (-1)^(n(n+1)/2) q^((2n+1)^2/8);
    e1sq_e4sq_over_e2 = sum (3n+1) q^((3n+1)^2/3);
    weight32_cm = sum_{n in Z, k>=0} (-1)^(n+k) (2k+1) q^((15(2k+1)^2 + (6n+1)^2)/8).
    """
    o = Fraction(order)
    if o <= 0:
        raise SeriesError("order must be positive")
    F = Fraction
    if kind == "phi":
        return _theta_sum(((F(n * n), 1) for n in _range_sym(o, lambda n: n * n)), o)
    if kind == "e1sq_over_e2":
        return _theta_sum(((F(n * n), -1 if n % 2 else 1) for n in _range_sym(o, lambda n: n * n)), o)
    if kind == "psi":
        return _theta_sum(((F(n * (n + 1), 2), 1) for n in range(0, int(math.isqrt(int(2 * o) + 1)) + 2)), o)
    if kind == "f_minus":
        def gen():
            for k in _range_sym(o, lambda k: F(k * (3 * k - 1), 2)):
                yield F(k * (3 * k - 1), 2), -1 if k % 2 else 1
        return _theta_sum(gen(), o)
    if kind == "e_cubed":
        def gen():
            n = 0
            while F(j * (2 * n + 1) ** 2, 8) < o:
                yield F(j * (2 * n + 1) ** 2, 8), (-1) ** n * (2 * n + 1)
                n += 1
        return _theta_sum(gen(), o)
    if kind == "e1e4_over_e2":
        def gen():
            n = 0
            while F((2 * n + 1) ** 2, 8) < o:
                yield F((2 * n + 1) ** 2, 8), -1 if (n * (n + 1) // 2) % 2 else 1
                n += 1
        return _theta_sum(gen(), o)
    if kind == "e1sq_e4sq_over_e2":
        return _theta_sum(
            ((F((3 * n + 1) ** 2, 3), 3 * n + 1) for n in _range_sym(o, lambda n: F((3 * n + 1) ** 2, 3))), o
        )
    if kind == "weight32_cm":
        def gen():
            k = 0
            while F(15 * (2 * k + 1) ** 2 + 1, 8) < o:
                base = 15 * (2 * k + 1) ** 2
                for n in _range_sym(o, lambda n: F(base + (6 * n + 1) ** 2, 8)):
                    yield F(base + (6 * n + 1) ** 2, 8), (-1) ** ((n + k) % 2) * (2 * k + 1)
                k += 1
        return _theta_sum(gen(), o)
    raise SeriesError(f"unknown theta kind {kind!r}")


def twist_by_i(series: QExpansion) -> QExpansion:
    """Substitute q -> i q (integer exponents only)."""
    if series.coeffs and series.denom != 1:
        series = series.reduced()
        if series.denom != 1:
            raise SeriesError("q -> iq needs integer exponents")
    unit = [1, I, -1, -I]
    return QExpansion(1, series.order, {k: c * unit[k % 4] for k, c in series.coeffs.items()})


def check_series_identity(lhs: QExpansion, rhs: QExpansion, order) -> dict:
    """Compare coefficients below q^order; report the first differing exponent."""
    o = Fraction(order)
    if o > lhs.precision or o > rhs.precision:
        raise SeriesError(f"order {o} exceeds operand truncation ({lhs.precision}, {rhs.precision})")
    a, b, L = _common(lhs, rhs)
    lim = o * L
    diff = sorted(k for k in set(a.coeffs) | set(b.coeffs) if k < lim and a.coeffs.get(k, 0) != b.coeffs.get(k, 0))
    if diff:
        return {"equal": False, "first_mismatch": Fraction(diff[0], L)}
    return {"equal": True, "first_mismatch": None}


def coefficients(series: QExpansion, normalize_leading: bool = True) -> list:
    """Coefficient list ``a`` with ``a[n]`` the coefficient of q^n.

    With ``normalize_leading`` the series is first shifted so that its
    leading term sits at q^1 (Dirichlet-series convention, a[0] = 0).
    The list stops just below the truncation point.
    """
    shift = Fraction(0)
    if normalize_leading and series.coeffs:
        shift = 1 - Fraction(series.valuation(), series.denom)
    out_len = series.precision + shift
    n = math.ceil(out_len)
    a = [0] * max(n, 1)
    for e, c in series.items():
        e2 = e + shift
        if e2.denominator != 1:
            raise SeriesError(f"non-integer exponent {e2} after normalization")
        a[int(e2)] = c
    return a


def g_product_parts(order) -> tuple[QExpansion, QExpansion]:
    """Split g(u) = prod_{n>=0} (1 - sqrt2 u^(2n+1) + u^(2(2n+1))) as E + sqrt2 * O.

    E and O have rational coefficients; E collects the even powers of u and
    O the odd ones, because every factor of -sqrt2 comes with an odd power.
    Then g(u)g(-u) = E^2 - 2 O^2 and g(u) + g(-u) = 2E.
    """
    o = Fraction(order)
    n = math.ceil(o)
    E = [1] + [0] * (n - 1)
    O = [0] * n
    m = 1
    while m < n:
        # multiply (E + r O) by ((1 + u^2m) - r u^m), r = sqrt2
        nE = [0] * n
        nO = [0] * n
        for i in range(n):
            e, od = E[i], O[i]
            if e == 0 and od == 0:
                continue
            nE[i] += e
            nO[i] += od
            if i + 2 * m < n:
                nE[i + 2 * m] += e
                nO[i + 2 * m] += od
            if i + m < n:
                # -r u^m * (e + r od) = -2 od u^m - r e u^m
                nE[i + m] -= 2 * od
                nO[i + m] -= e
        E, O = nE, nO
        m += 2
    mk = lambda arr: QExpansion(1, n, {i: c for i, c in enumerate(arr) if c}).truncate(o)
    return mk(E), mk(O)


def eta_product_coefficients(factors, nmax: int):
    """Fast numpy int64 coefficients of a holomorphic eta product (positive exponents).

    Returns ``a`` with ``a[n]`` the coefficient of q^n after normalizing the
    leading exponent to 1; suitable for partial sums of Dirichlet series
    with millions of terms.
    """
    import numpy as np

    eq = EtaQuotient.of(factors)
    if any(r < 0 for _, r in eq.factors):
        raise SeriesError("fast path only supports products with positive exponents")
    if eq.leading_exponent.denominator != 1:
        raise SeriesError("leading exponent must be an integer")
    n = nmax  # unit part to q^(nmax-1) gives a[1..nmax]
    acc = np.zeros(n, dtype=np.int64)
    acc[0] = 1
    for j, r in eq.factors:
        sp = _pentagonal(j, n)
        for _ in range(r):
            new = np.zeros_like(acc)
            for e, c in sp:
                new[e:] += c * acc[: n - e]
            acc = new
    out = np.zeros(nmax + 1, dtype=np.int64)
    out[1:] = acc
    return out
