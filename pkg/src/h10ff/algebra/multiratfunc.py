"""Rational functions in several variables over Q (used for Q(t1, t2))."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import ZeroDenominator
from .multipoly import MultiPoly, _merge_gens, multi_gcd_cofactors
from .poly import UniPoly
from .ratfunc import RatFunc


def _as_multi(x, gens):
    if isinstance(x, MultiPoly):
        return x.with_gens(_merge_gens(gens, x.gens))
    if isinstance(x, UniPoly):
        return MultiPoly.from_unipoly(x, _merge_gens(gens, (x.var,)))
    return MultiPoly.const(x, gens)


def _gcd(a, b):
    if a.is_constant() or b.is_constant():
        one = MultiPoly.const(1, a.gens)
        return one, a, b
    return multi_gcd_cofactors(a, b)


class MultiRatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num, den=1, gens=("t1", "t2")):
        gens = tuple(gens)
        if isinstance(num, MultiPoly):
            gens = _merge_gens(gens, num.gens)
        if isinstance(den, MultiPoly):
            gens = _merge_gens(gens, den.gens)
        num, den = _as_multi(num, gens), _as_multi(den, gens)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        _, num, den = _gcd(num, den)
        r = MultiRatFunc._from_coprime(num, den)
        self.num, self.den = r.num, r.den

    @classmethod
    def _raw(cls, num, den):
        r = cls.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def _from_coprime(cls, num, den):
        if num.is_zero():
            return cls._raw(num, MultiPoly.const(1, num.gens))
        _, lc = den.leading_term()
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        return cls._raw(num, den)

    @classmethod
    def var(cls, name, gens=("t1", "t2")):
        return cls._raw(MultiPoly.var(name, gens), MultiPoly.const(1, gens))

    @classmethod
    def constant(cls, c, gens=("t1", "t2")):
        return cls._raw(MultiPoly.const(c, gens), MultiPoly.const(1, gens))

    @classmethod
    def from_ratfunc(cls, u, gens=("t1", "t2")):
        return cls._raw(MultiPoly.from_unipoly(u.num, gens), MultiPoly.from_unipoly(u.den, gens))

    @property
    def gens(self):
        return self.num.gens

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() / self.den.constant_value()

    def to_ratfunc(self, var):
        """View an element that only involves ``var`` as a :class:`RatFunc`."""
        return RatFunc._from_coprime(self.num.to_unipoly(var), self.den.to_unipoly(var))

    def _coerce(self, other):
        if isinstance(other, MultiRatFunc):
            if other.gens != self.gens:
                gens = _merge_gens(self.gens, other.gens)
                return MultiRatFunc._raw(other.num.with_gens(gens), other.den.with_gens(gens))
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return MultiRatFunc.constant(other, self.gens)
        if isinstance(other, (MultiPoly, UniPoly)):
            p = _as_multi(other, self.gens)
            return MultiRatFunc._raw(p, MultiPoly.const(1, p.gens))
        if isinstance(other, RatFunc):
            gens = _merge_gens(self.gens, (other.var,))
            return MultiRatFunc.from_ratfunc(other, gens)
        return NotImplemented

    def _lift(self, gens):
        if gens == self.gens:
            return self
        return MultiRatFunc._raw(self.num.with_gens(gens), self.den.with_gens(gens))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        me = self._lift(other.gens)
        if other.is_zero():
            return me
        if me.is_zero():
            return other
        a, b, c, d = me.num, me.den, other.num, other.den
        if b == d:
            if b.is_constant():
                return MultiRatFunc._raw(a + c, b)
            _, num, den = _gcd(a + c, b)
            return MultiRatFunc._from_coprime(num, den)
        if b.is_constant():
            return MultiRatFunc._from_coprime(a * d + c * b, b * d)
        if d.is_constant():
            return MultiRatFunc._from_coprime(a * d + c * b, b * d)
        g, b1, d1 = _gcd(b, d)
        num = a * d1 + c * b1
        if g.is_constant():
            return MultiRatFunc._from_coprime(num, b1 * d1)
        _, num, gq = _gcd(num, g)
        return MultiRatFunc._from_coprime(num, b1 * d1 * gq)

    __radd__ = __add__

    def __neg__(self):
        return MultiRatFunc._raw(-self.num, self.den)

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
        me = self._lift(other.gens)
        if me.is_zero() or other.is_zero():
            return MultiRatFunc.constant(0, other.gens)
        a, b, c, d = me.num, me.den, other.num, other.den
        _, a, d = _gcd(a, d)
        _, c, b = _gcd(c, b)
        return MultiRatFunc._from_coprime(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return MultiRatFunc._from_coprime(self.den, self.num)

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
        return MultiRatFunc._raw(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        me = self._lift(other.gens)
        return me.num == other.num and me.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def subs(self, values):
        return self.num.subs(values) / self.den.subs(values)

    def __repr__(self):
        return f"MultiRatFunc({format_multiratfunc(self)!r})"

    def __str__(self):
        return format_multiratfunc(self)


def format_multiratfunc(u):
    num = str(u.num)
    if u.den == 1:
        return num
    den = str(u.den)
    if len(u.num.terms) > 1:
        num = f"({num})"
    if len(u.den.terms) > 1:
        den = f"({den})"
    return f"{num} / {den}"
