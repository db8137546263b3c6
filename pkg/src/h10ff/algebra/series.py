"""Truncated Laurent series ``sum c_k u^k + O(u^N)`` over an exact field.

Coefficients may be any exact field elements (``Fraction``, ``RatFunc``,
``QuadExt`` ...).  ``precision`` is absolute: every coefficient with
exponent below it is known.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping

from ..errors import NotASquareConstantTerm, PrecisionExhausted, ZeroElement
from .multipoly import MultiPoly
from .multiratfunc import MultiRatFunc
from .poly import UniPoly, poly_sqrt, rational_sqrt
from .quadext import QuadExt
from .ratfunc import RatFunc

START_PRECISION = 8
MAX_PRECISION = 512


def _nz(c):
    return not (c == 0)


class LaurentSeries:
    __slots__ = ("uniformizer", "lead_exponent", "coeffs", "precision")

    def __init__(self, coeffs, lead_exponent=0, precision=None, uniformizer="u"):
        coeffs = list(coeffs)
        if precision is None:
            precision = lead_exponent + len(coeffs)
        coeffs = coeffs[:max(0, precision - lead_exponent)]
        k = 0
        while k < len(coeffs) and not _nz(coeffs[k]):
            k += 1
        if k == len(coeffs):
            coeffs, lead_exponent = [], precision
        else:
            coeffs, lead_exponent = coeffs[k:], lead_exponent + k
        self.coeffs = coeffs
        self.lead_exponent = lead_exponent
        self.precision = precision
        self.uniformizer = uniformizer

    @classmethod
    def constant(cls, c, precision, uniformizer="u"):
        return cls([c], 0, precision, uniformizer)

    @classmethod
    def gen(cls, precision, uniformizer="u", one=Fraction(1)):
        return cls([one], 1, precision, uniformizer)

    def is_zero(self):
        """True when no nonzero coefficient is known (zero to the working precision)."""
        return not self.coeffs

    def valuation(self):
        if self.is_zero():
            raise ZeroElement("series vanishes to the working precision")
        return self.lead_exponent

    def __getitem__(self, k):
        if k >= self.precision:
            raise IndexError(f"coefficient of u^{k} is beyond the precision {self.precision}")
        i = k - self.lead_exponent
        if i < 0 or i >= len(self.coeffs):
            return _zero_like(self.coeffs)
        return self.coeffs[i]

    def dense(self, start, stop):
        return [self[k] for k in range(start, stop)]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries([other], 0, self.precision, self.uniformizer)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        lo = min(self.lead_exponent, o.lead_exponent)
        return LaurentSeries([self[k] + o[k] for k in range(lo, n)], lo, n, self.uniformizer)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries([-c for c in self.coeffs], self.lead_exponent, self.precision,
                             self.uniformizer)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _relprec(self):
        return self.precision - self.lead_exponent

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries([c * other for c in self.coeffs], self.lead_exponent,
                                 self.precision, self.uniformizer)
        v = self.lead_exponent + other.lead_exponent
        if self.is_zero() or other.is_zero():
            # zero to known precision; keep the weaker bound
            n = min(self.precision + other.lead_exponent, other.precision + self.lead_exponent)
            return LaurentSeries([], n, n, self.uniformizer)
        rel = min(self._relprec(), other._relprec())
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(rel):
            acc = None
            for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                term = a[i] * b[k - i]
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else _zero_like(a))
        return LaurentSeries(out, v, v + rel, self.uniformizer)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("inverse of a series that vanishes to the working precision")
        a = self.coeffs
        rel = self._relprec()
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, rel):
            acc = None
            for i in range(1, min(k, len(a) - 1) + 1):
                term = a[i] * out[k - i]
                acc = term if acc is None else acc + term
            out.append(-(acc * inv0) if acc is not None else _zero_like(a))
        return LaurentSeries(out, -self.lead_exponent, -self.lead_exponent + rel, self.uniformizer)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            return self * (1 / other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.constant(_one_like(self.coeffs), self.precision, self.uniformizer)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, n):
        n = min(n, self.precision)
        return LaurentSeries(self.coeffs, self.lead_exponent, n, self.uniformizer)

    def __eq__(self, other):
        """Agreement up to the smaller of the two precisions."""
        o = self._coerce(other)
        n = min(self.precision, o.precision)
        lo = min(self.lead_exponent, o.lead_exponent, n)
        return all(self[k] == o[k] for k in range(lo, n))

    __hash__ = None

    def __repr__(self):
        return f"LaurentSeries({self})"

    def __str__(self):
        u = self.uniformizer
        parts = []
        for i, c in enumerate(self.coeffs):
            if not _nz(c):
                continue
            k = self.lead_exponent + i
            cs = str(c)
            if k == 0:
                parts.append(cs)
                continue
            mono = u if k == 1 else f"{u}^{k}"
            sign = ""
            if cs.startswith("-") and not any(ch in cs[1:] for ch in " +-"):
                sign, cs = "-", cs[1:]
            if cs == "1":
                parts.append(sign + mono)
            else:
                if any(ch in cs for ch in " +-/"):
                    cs = f"({cs})"
                parts.append(f"{sign}{cs}*{mono}")
        parts.append(f"O({u}^{self.precision})")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _zero_like(coeffs):
    return coeffs[0] * 0 if coeffs else Fraction(0)


def _one_like(coeffs):
    return coeffs[0] * 0 + 1 if coeffs else Fraction(1)


def field_sqrt(c):
    """Canonical square root of a field element, or None when none is found.

    Rationals take the positive root, Q(t) elements take roots with positive
    leading coefficients, and extension elements lying in the base recurse.
    """
    if isinstance(c, (int, Fraction)):
        return rational_sqrt(c)
    if isinstance(c, UniPoly):
        return poly_sqrt(c)
    if isinstance(c, RatFunc):
        n, d = poly_sqrt(c.num), poly_sqrt(c.den)
        if n is None or d is None:
            return None
        return RatFunc(n, d)
    if isinstance(c, QuadExt) and c.b == 0:
        r = field_sqrt(c.a)
        return None if r is None else c.lift(r)
    return None


def series_sqrt(s):
    """Square root with the canonical constant-term root; needs order 0 and a square unit."""
    if s.is_zero() or s.lead_exponent != 0:
        raise NotASquareConstantTerm("series must have a nonzero constant term")
    r0 = field_sqrt(s.coeffs[0])
    if r0 is None:
        raise NotASquareConstantTerm(f"constant term {s.coeffs[0]} is not a square")
    rel = s.precision
    inv2r0 = 1 / (2 * r0)
    r = [r0]
    for k in range(1, rel):
        acc = s[k]
        for i in range(1, k):
            acc = acc - r[i] * r[k - i]
        r.append(acc * inv2r0)
    return LaurentSeries(r, 0, rel, s.uniformizer)


# -- expansion of field elements ----------------------------------------------


@dataclass(frozen=True)
class Substitution:
    """How generators of a field element turn into series.

    ``series`` sends generator names to Laurent series.  ``constants`` sends
    the remaining quadratic generators to coefficient-field elements, and
    ``lift`` embeds a ``RatFunc`` in a leftover variable into the
    coefficient field.
    """

    series: Mapping[str, Callable[[int], LaurentSeries]]
    constants: Mapping[str, Any] = field(default_factory=dict)
    lift: Callable[[RatFunc], Any] = lambda r: r
    uniformizer: str = "u"


def _eval_poly(p, sub, n):
    if p.is_zero():
        return LaurentSeries([], n, n, sub.uniformizer)
    gens = [g for g in p.used_gens() if g in sub.series]
    if not gens:
        rest = p.used_gens()
        if not rest:
            c = p.constant_value()
            return LaurentSeries.constant(sub.lift(RatFunc.constant(c)), n, sub.uniformizer)
        if len(rest) > 1:
            raise ValueError(f"no substitution for generators {rest}")
        r = RatFunc(p.to_unipoly(rest[0]))
        return LaurentSeries.constant(sub.lift(r), n, sub.uniformizer)
    g = gens[0]
    s = sub.series[g](n)
    parts = p.coefficients_in(g)
    top = max(parts)
    acc = None
    for k in range(top, -1, -1):
        c = parts.get(k)
        if acc is not None:
            acc = acc * s
        if c is not None and not c.is_zero():
            cs = _eval_poly(c, sub, n)
            acc = cs if acc is None else acc + cs
    return acc


def _expand(e, sub, n):
    if isinstance(e, QuadExt):
        a = _expand(e.a, sub, n)
        if e.b == 0:
            return a
        b = _expand(e.b, sub, n)
        if e.gen in sub.series:
            return a + b * sub.series[e.gen](n)
        return a + b * sub.constants[e.gen]
    if isinstance(e, MultiRatFunc):
        num = _eval_poly(e.num, sub, n)
        den = _eval_poly(e.den, sub, n)
        return num / den
    if isinstance(e, MultiPoly):
        return _eval_poly(e, sub, n)
    if isinstance(e, RatFunc):
        return _expand(MultiRatFunc.from_ratfunc(e, (e.var,)), sub, n)
    return LaurentSeries.constant(sub.lift(RatFunc.constant(e)), n, sub.uniformizer)


def series_expand(e, sub, precision=START_PRECISION):
    """Expand ``e`` to the given absolute precision (may come back lower after division)."""
    return _expand(e, sub, precision)


def expand_adaptive(e, sub, need_terms=1, start=START_PRECISION, cap=MAX_PRECISION):
    """Expand with doubling precision until ``need_terms`` coefficients past the
    leading one are known.  ``e`` must be nonzero."""
    n = start
    while True:
        s = _expand(e, sub, n)
        if not s.is_zero() and s.precision - s.lead_exponent >= need_terms:
            return s
        if n >= cap:
            raise PrecisionExhausted(f"no nonzero coefficient found below u^{s.precision}")
        n = min(2 * n, cap)
