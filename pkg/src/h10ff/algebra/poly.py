"""Univariate polynomials over Q.

Coefficients are held as an integer vector over one positive common
denominator, which keeps products and gcds in exact integer arithmetic;
``coeffs`` exposes them as ``Fraction`` values, lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from math import isqrt
from numbers import Rational

from . import _dense as D

NEG_INF = float("-inf")

_COPRIME_PRIME = (1 << 61) - 1
_COPRIME_CHECK_DEGREE = 24


def _lcm(a, b):
    return a // igcd(a, b) * b


def _to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"not a rational coefficient: {c!r}")


class UniPoly:
    """Polynomial in one named variable with rational coefficients."""

    __slots__ = ("var", "_num", "_den")

    def __init__(self, coeffs=(), var="t"):
        fr = [_to_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fr]
        self._set(num, den, var)

    def _set(self, num, den, var):
        D.strip(num)
        if not num:
            den = 1
        else:
            g = igcd(D.content(num), den)
            if g > 1:
                num = [a // g for a in num]
                den //= g
        self._num = num
        self._den = den
        self.var = var

    @classmethod
    def _make(cls, num, den, var):
        p = cls.__new__(cls)
        if den < 0:
            num, den = [-a for a in num], -den
        p._set(num, den, var)
        return p

    @classmethod
    def constant(cls, c, var="t"):
        c = _to_fraction(c)
        return cls._make([c.numerator], c.denominator, var)

    @classmethod
    def gen(cls, var="t"):
        return cls._make([0, 1], 1, var)

    @classmethod
    def monomial(cls, c, k, var="t"):
        c = _to_fraction(c)
        return cls._make([0] * k + [c.numerator], c.denominator, var)

    # -- inspection ---------------------------------------------------------

    @property
    def coeffs(self):
        return tuple(Fraction(a, self._den) for a in self._num)

    @property
    def degree(self):
        return len(self._num) - 1 if self._num else NEG_INF

    def is_zero(self):
        return not self._num

    def is_constant(self):
        return len(self._num) <= 1

    @property
    def lc(self):
        return Fraction(self._num[-1], self._den) if self._num else Fraction(0)

    def coeff(self, k):
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def constant_value(self):
        if len(self._num) > 1:
            raise ValueError("polynomial is not constant")
        return self.coeff(0)

    def int_parts(self):
        """``(num, den)``: integer coefficient list and positive denominator."""
        return list(self._num), self._den

    def primitive(self):
        """``(c, p)``: rational ``c`` and primitive integer polynomial ``p`` (positive lc)."""
        c, p = D.primitive(self._num)
        return Fraction(c, self._den), UniPoly._make(p, 1, self.var)

    def __bool__(self):
        return bool(self._num)

    def __len__(self):
        return len(self._num)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.var != self.var:
                if other.is_constant():
                    return UniPoly._make(list(other._num), other._den, self.var)
                if self.is_constant():
                    return other
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return UniPoly.constant(other, self.var)
        return NotImplemented

    def _var_with(self, other):
        return other.var if self.is_constant() and not other.is_constant() else self.var

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self._den, other._den
        if d1 == d2:
            return UniPoly._make(D.add(self._num, other._num), d1, self._var_with(other))
        den = _lcm(d1, d2)
        return UniPoly._make(D.add(D.scale(self._num, den // d1), D.scale(other._num, den // d2)),
                             den, self._var_with(other))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._make(D.neg(self._num), self._den, self.var)

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
        return UniPoly._make(D.mul(self._num, other._num), self._den * other._den,
                             self._var_with(other))

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        return UniPoly._make(D.power(self._num, n), self._den ** n, self.var)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r, d = D.divmod_rational(self._num, other._num)
        # d * self_num = q * other_num + r  =>  self = (q * oden / (d * sden)) * other + r / (d * sden)
        qp = UniPoly._make(D.scale(q, other._den), d * self._den, self.var)
        rp = UniPoly._make(r, d * self._den, self.var)
        return qp, rp

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_quo(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        cg, pg = D.primitive(other._num)
        # Gauss: a primitive divisor over Q divides over Z
        q = D.exact_div(self._num, pg)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return UniPoly._make(D.scale(q, other._den), self._den * cg, self._var_with(other))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            if self._num != other._num or self._den != other._den:
                return False
            return self.var == other.var or self.is_constant()
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.coeff(0) == other
        return NotImplemented

    def __hash__(self):
        if self.is_constant():
            return hash(self.coeff(0))
        return hash((self.var, tuple(self._num), self._den))

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return Fraction(0) if acc is None else acc

    def derivative(self):
        return UniPoly._make(D.deriv(self._num), self._den, self.var)

    def monic(self):
        if not self._num:
            return self
        lc = self._num[-1]
        return UniPoly._make(list(self._num), lc, self.var) if lc > 0 else \
            UniPoly._make(D.neg(self._num), -lc, self.var)

    def scale_var(self, c):
        """p(c * t)."""
        c = _to_fraction(c)
        out = []
        pw = Fraction(1)
        for a in self.coeffs:
            out.append(a * pw)
            pw *= c
        return UniPoly(out, self.var)

    def reverse(self, n=None):
        """t^n p(1/t) with n defaulting to the degree."""
        if n is None:
            n = len(self._num) - 1
        num = list(self._num) + [0] * (n + 1 - len(self._num))
        return UniPoly._make(num[::-1], self._den, self.var)

    def __repr__(self):
        return f"UniPoly({format_unipoly(self)!r})"

    def __str__(self):
        return format_unipoly(self)


def format_unipoly(p):
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = p.var if k == 1 else f"{p.var}^{k}"
            if a == 1:
                body = mono
            elif a.denominator == 1:
                body = f"{a}*{mono}"
            else:
                body = f"({a})*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# -- gcd and friends --------------------------------------------------------


def gcd_cofactors(f, g):
    """Monic gcd ``h`` of ``f`` and ``g`` with cofactors: ``f = h*cf``, ``g = h*cg``."""
    var = f.var if not f.is_constant() else g.var
    fn, fd = f._num, f._den
    gn, gd = g._num, g._den
    if (len(fn) > _COPRIME_CHECK_DEGREE and len(gn) > _COPRIME_CHECK_DEGREE
            and D.is_coprime_mod(fn, gn, _COPRIME_PRIME)):
        one = UniPoly._make([1], 1, var)
        return one, f, g
    h, cf, cg = D.gcd(fn, gn)
    if not h:
        zero = UniPoly._make([], 1, var)
        return zero, zero, zero
    lc = h[-1]
    # f = (h/lc) * (cf*lc/fd)
    return (UniPoly._make(h, lc, var),
            UniPoly._make(D.scale(cf, lc), fd, var),
            UniPoly._make(D.scale(cg, lc), gd, var))


def poly_gcd(f, g):
    return gcd_cofactors(f, g)[0]


def resultant(f, g):
    """Res(f, g) over Q by the Euclidean recurrence."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    res = Fraction(1)
    a, b = f, g
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.lc ** da
        r = a % b
        if r.is_zero():
            return Fraction(0)
        dr = r.degree
        if (da * db) % 2:
            res = -res
        res *= b.lc ** (da - dr)
        a, b = b, r


def discriminant(f):
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def squarefree_decomposition(f):
    """Yun: list of ``(g_i, i)`` with ``f = lc * prod g_i^i`` and each ``g_i`` monic squarefree."""
    if f.is_constant():
        return []
    f = f.monic()
    fp = f.derivative()
    a = poly_gcd(f, fp)
    b = f.exact_quo(a)
    c = fp.exact_quo(a)
    d = c - b.derivative()
    out = []
    i = 1
    while not b.is_constant():
        a = poly_gcd(b, d)
        if not a.is_constant():
            out.append((a, i))
        b = b.exact_quo(a)
        c = d.exact_quo(a)
        d = c - b.derivative()
        i += 1
    return out


def is_squarefree(f):
    return f.is_constant() or poly_gcd(f, f.derivative()).is_constant()


def rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    q = _to_fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def poly_sqrt(f):
    """Exact square root in Q[t] with positive leading coefficient, or None."""
    if f.is_zero():
        return f
    n = f.degree
    if n % 2:
        return None
    r = rational_sqrt(f.lc)
    if r is None:
        return None
    m = n // 2
    c = f.coeffs
    root = [Fraction(0)] * (m + 1)
    root[m] = r
    two_r = 2 * r
    # match coefficients from the top down
    for k in range(m - 1, -1, -1):
        s = c[m + k]
        for i in range(k + 1, m):
            j = m + k - i
            if k < j <= m:
                s -= root[i] * root[j]
        root[k] = s / two_r
    g = UniPoly(root, f.var)
    return g if g * g == f else None
