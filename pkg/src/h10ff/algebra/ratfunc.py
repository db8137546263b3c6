"""The rational function field Q(t) in canonical form.

A :class:`RatFunc` is ``num / den`` with ``gcd(num, den) = 1`` and ``den``
monic, so value equality is representational equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from ..errors import ZeroDenominator
from .poly import UniPoly, gcd_cofactors, _to_fraction


class _Infinity:
    """The value ``∞`` of a rational function with a pole."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = lambda self: "∞"  # noqa: E731


INFINITY = _Infinity()


def _as_poly(x, var):
    if isinstance(x, UniPoly):
        return x
    return UniPoly.constant(x, var)


def ratfunc_normalize(num, den):
    """Canonical reduced form of ``num / den``."""
    if not isinstance(num, UniPoly) and not isinstance(den, UniPoly):
        var = "t"
    else:
        var = num.var if isinstance(num, UniPoly) and not num.is_constant() else \
            den.var if isinstance(den, UniPoly) else num.var
    num, den = _as_poly(num, var), _as_poly(den, var)
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return RatFunc._raw(UniPoly._make([], 1, var), UniPoly._make([1], 1, var))
    if not den.is_constant():
        _, num, den = gcd_cofactors(num, den)
    return RatFunc._from_coprime(num, den)


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        r = ratfunc_normalize(num, den)
        self.num = r.num
        self.den = r.den

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def _from_coprime(cls, num, den):
        """Trusts ``gcd(num, den) = 1``; only makes ``den`` monic."""
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        if den.is_constant() and den.var != num.var:
            den = UniPoly._make([1], 1, num.var)
        return cls._raw(num, den)

    @classmethod
    def gen(cls, var="t"):
        return cls._raw(UniPoly.gen(var), UniPoly.constant(1, var))

    @classmethod
    def constant(cls, c, var="t"):
        return cls._raw(UniPoly.constant(c, var), UniPoly.constant(1, var))

    @property
    def var(self):
        return self.num.var

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.coeff(0)

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly):
            return RatFunc._raw(other, UniPoly.constant(1, other.var))
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return RatFunc.constant(_to_fraction(other), self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return ratfunc_normalize(a + c, b)
        if b.is_constant():
            return RatFunc._from_coprime(a * d + c, d)
        if d.is_constant():
            return RatFunc._from_coprime(a + c * b, b)
        g, b1, d1 = gcd_cofactors(b, d)
        num = a * d1 + c * b1
        if g.is_constant():
            return RatFunc._from_coprime(num, b1 * d1)
        g2, num, gq = gcd_cofactors(num, g)
        return RatFunc._from_coprime(num, b1 * d1 * gq)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.constant(0, self.var if not self.num.is_constant() else other.var)
        a, b, c, d = self.num, self.den, other.num, other.den
        if not d.is_constant() and not a.is_constant():
            _, a, d = gcd_cofactors(a, d)
        if not b.is_constant() and not c.is_constant():
            _, c, b = gcd_cofactors(c, b)
        return RatFunc._from_coprime(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._from_coprime(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def derivative(self):
        return RatFunc(self.num.derivative() * self.den - self.num * self.den.derivative(),
                       self.den * self.den)

    # -- valuation at infinity ----------------------------------------------

    @property
    def degree(self):
        """deg num - deg den (``-inf`` for zero)."""
        if self.is_zero():
            return -math.inf
        return self.num.degree - self.den.degree

    def ord_inf(self):
        return ord_t_inverse(self)

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)


def _nterms(p):
    return sum(1 for c in p.coeffs if c)


def format_ratfunc(u):
    num = str(u.num)
    if u.den == 1:
        return num
    den = str(u.den)
    if _nterms(u.num) > 1:
        num = f"({num})"
    if _nterms(u.den) > 1:
        den = f"({den})"
    return f"{num} / {den}"


def ord_t_inverse(u):
    """Order of vanishing at t = ∞: ``-deg num + deg den``; ``+inf`` for zero."""
    if u.is_zero():
        return math.inf
    return u.den.degree - u.num.degree


def value_at_infinity(u):
    o = ord_t_inverse(u)
    if o > 0:
        return Fraction(0)
    if o < 0:
        return INFINITY
    return u.num.lc / u.den.lc
