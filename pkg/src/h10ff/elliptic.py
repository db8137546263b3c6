"""Short Weierstrass curves ``y^2 = x^3 + a x + b`` over exact fields.

The chord-tangent law is written once against the field operators, so the
same code adds points over Q, Q(t)(h) or the two-variable tower.  Twisted
models ``D Y^2 = X^3 + a X + b`` are handled by moving to ``E`` over the
quadratic extension ``h^2 = D`` and back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Any

from .algebra.poly import UniPoly
from .algebra.quadext import QuadExt
from .algebra.syntax import parse_ratfunc
from .errors import NotInImage, PointNotOnCurve, PolySyntaxError


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "O"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


O = _Infinity()


@dataclass(frozen=True)
class CurvePoint:
    x: Any
    y: Any

    def __str__(self):
        return f"({self.x} ; {self.y})"


@dataclass(frozen=True)
class TwistedPoint:
    """Point of ``D Y^2 = X^3 + a X + b``; the identity is :data:`O`."""

    X: Any
    Y: Any

    def __str__(self):
        return f"({self.X} ; {self.Y})"


@dataclass(frozen=True)
class Curve:
    a: Any = Fraction(1)
    b: Any = Fraction(1)

    def __post_init__(self):
        if 4 * self.a ** 3 + 27 * self.b ** 2 == 0:
            raise ValueError(f"singular curve: 4a^3 + 27b^2 = 0 for a={self.a}, b={self.b}")

    @property
    def discriminant(self):
        return -16 * (4 * self.a ** 3 + 27 * self.b ** 2)

    def rhs(self, x):
        return x * x * x + self.a * x + self.b

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})*x + ({self.b})"


def on_curve(c, p):
    if p is O:
        return True
    return p.y * p.y == c.rhs(p.x)


def _require(c, p):
    if not on_curve(c, p):
        raise PointNotOnCurve(f"{p} is not on {c}")


def neg(p):
    if p is O:
        return O
    return CurvePoint(p.x, -p.y)


def add(c, p, q, check=True):
    """Group sum by the chord-tangent rule."""
    if check:
        _require(c, p)
        _require(c, q)
    if p is O:
        return q
    if q is O:
        return p
    if p.x == q.x:
        if p.y + q.y == 0:
            return O
        lam = (3 * p.x * p.x + c.a) / (2 * p.y)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - p.x - q.x
    y3 = lam * (p.x - x3) - p.y
    return CurvePoint(x3, y3)


def sub(c, p, q, check=True):
    return add(c, p, neg(q), check)


def scalar_mul(c, n, p, check=True):
    """``n * p`` by double-and-add."""
    if check:
        _require(c, p)
    if n < 0:
        return neg(scalar_mul(c, -n, p, check=False))
    result = O
    addend = p
    while n:
        if n & 1:
            result = add(c, result, addend, check=False)
        n >>= 1
        if n:
            addend = add(c, addend, addend, check=False)
    return result


# -- division polynomials ------------------------------------------------------
#
# With psi_n the usual division polynomials, write psi_n = f_n for odd n and
# psi_n = 2y f_n for even n, so every f_n lies in Q[x].  Then, using y^2 = F(x),
#   x(nP) = x - psi_{n-1} psi_{n+1} / psi_n^2,   y(nP) = psi_{2n} / (2 psi_n^4).


def _as_q(v):
    return Fraction(v) if isinstance(v, int) else v


@lru_cache(maxsize=None)
def _f(a, b, n):
    x = UniPoly.gen("x")
    F = x ** 3 + a * x + b
    if n == 0:
        return UniPoly((), "x")
    if n in (1, 2):
        return UniPoly.constant(1, "x")
    if n == 3:
        return 3 * x ** 4 + 6 * a * x ** 2 + 12 * b * x - a * a
    if n == 4:
        return 2 * (x ** 6 + 5 * a * x ** 4 + 20 * b * x ** 3 - 5 * a * a * x ** 2
                    - 4 * a * b * x - 8 * b * b - a ** 3)
    m = n // 2
    if n % 2:
        if m % 2 == 0:
            return 16 * F * F * _f(a, b, m + 2) * _f(a, b, m) ** 3 \
                - _f(a, b, m - 1) * _f(a, b, m + 1) ** 3
        return _f(a, b, m + 2) * _f(a, b, m) ** 3 \
            - 16 * F * F * _f(a, b, m - 1) * _f(a, b, m + 1) ** 3
    return _f(a, b, m) * (_f(a, b, m + 2) * _f(a, b, m - 1) ** 2
                          - _f(a, b, m - 2) * _f(a, b, m + 1) ** 2)


def division_polynomial_reduced(a, b, n):
    """``f_n`` in Q[x]: ``psi_n`` for odd ``n``, ``psi_n / (2y)`` for even ``n`` (n >= 0)."""
    return _f(_as_q(a), _as_q(b), n)


def _half_quotient(a, b, n):
    """``f_{2n} / f_n``."""
    if n <= 2:
        return _f(a, b, 2 * n).exact_quo(_f(a, b, n))
    return _f(a, b, n + 2) * _f(a, b, n - 1) ** 2 - _f(a, b, n - 2) * _f(a, b, n + 1) ** 2


@lru_cache(maxsize=None)
def multiplication_map(a, b, n):
    """``(xnum, xden, ynum, yden)`` in Q[x] with ``x(nP) = xnum/xden`` and
    ``y(nP) = y * ynum/yden`` for ``n >= 1``.

    The common factor ``f_n`` of ``f_{2n}`` and ``f_n^4`` is divided out, so
    both pairs are coprime for a nonsingular curve.
    """
    a, b = _as_q(a), _as_q(b)
    x = UniPoly.gen("x")
    F = x ** 3 + a * x + b
    fm, f0, fp = _f(a, b, n - 1), _f(a, b, n), _f(a, b, n + 1)
    g = _half_quotient(a, b, n)
    if n % 2:
        xnum, xden = x * f0 * f0 - 4 * F * fm * fp, f0 * f0
        ynum, yden = g, f0 ** 3
    else:
        xnum, xden = 4 * F * x * f0 * f0 - fm * fp, 4 * F * f0 * f0
        ynum, yden = g, 16 * F * F * f0 ** 3
    return xnum, xden, ynum, yden


def twist_transport(p, h, direction="to_curve"):
    """Move between ``D Y^2 = X^3+aX+b`` and ``E`` over ``base(h)``, ``h^2 = D``.

    ``to_curve`` sends ``(X, Y)`` to ``(X, h Y)``; ``to_twist`` inverts it and
    raises :class:`NotInImage` unless ``x`` is in the base and ``y`` is a base
    multiple of ``h``.
    """
    if p is O:
        return O
    if direction == "to_curve":
        return CurvePoint(h.lift(p.X), h * p.Y)
    if direction != "to_twist":
        raise ValueError(f"unknown direction {direction!r}")
    x, y = p.x, p.y
    if isinstance(x, QuadExt) and x._same_ext(h):
        if x.b != 0:
            raise NotInImage(f"x-coordinate {x} is not in the base field")
        x = x.a
    if not (isinstance(y, QuadExt) and y._same_ext(h)) or y.a != 0:
        raise NotInImage(f"y-coordinate {y} is not a base multiple of {h.gen}")
    return TwistedPoint(x, y.b)


def twisted_on_curve(c, D, p):
    if p is O:
        return True
    return D * p.Y * p.Y == c.rhs(p.X)


def twisted_add(c, h, p, q):
    """Sum on the twisted model via the curve over the extension."""
    s = add(c, twist_transport(p, h), twist_transport(q, h))
    return twist_transport(s, h, "to_twist")


def twisted_scalar_mul(c, h, n, p):
    return twist_transport(scalar_mul(c, n, twist_transport(p, h)), h, "to_twist")


# -- rational roots and point literals ----------------------------------------


def _divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend({d, n // d})
        d += 1
    return out


def rational_roots_cubic(a, b):
    """Rational roots of ``x^3 + a x + b`` by the rational-root test."""
    a, b = Fraction(a), Fraction(b)
    den = a.denominator * b.denominator
    c1, c0 = int(a * den * den), int(b * den ** 3)
    # x = u/den with u a root of u^3 + c1 u + c0
    if c0 == 0:
        roots = {Fraction(0)}
        if c1 <= 0:
            r = isqrt(-c1)
            if r * r == -c1:
                roots |= {Fraction(r, den), Fraction(-r, den)}
        return sorted(roots)
    out = set()
    for d in _divisors(c0):
        for u in (d, -d):
            if u ** 3 + c1 * u + c0 == 0:
                out.add(Fraction(u, den))
    return sorted(out)


def has_trivial_rational_two_torsion(a, b):
    return not rational_roots_cubic(a, b)


# x^3 + x + 1 has no rational root, so E(Q(t)) for a = b = 1 has no 2-torsion
assert has_trivial_rational_two_torsion(1, 1), "x^3 + x + 1 must be irreducible over Q"


def parse_point(text, parse=parse_ratfunc):
    """Parse ``"(x ; y)"`` or ``"O"``; coordinates go through ``parse``."""
    s = text.strip()
    if s == "O":
        return O
    if not (s.startswith("(") and s.endswith(")")) or s.count(";") != 1:
        raise PolySyntaxError("point literal must look like '(x ; y)' or 'O'", 0)
    xs, ys = s[1:-1].split(";")
    return CurvePoint(parse(xs), parse(ys))


def format_point(p):
    return "O" if p is O else f"({p.x} ; {p.y})"
