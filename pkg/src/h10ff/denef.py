"""The rank-one twist over Q(t) and the integers it encodes.

``P_n = n*(t, 1)`` on ``D Y^2 = X^3 + aX + b`` with ``D = t^3 + at + b``, and
``Z_n = X_n / (t Y_n)`` (``Z_0 = 0``).  Addition of integers is the group
law; multiplication is read off at ``t = oo``, where ``Z_n`` takes the value
``n``.  Positivity of ``ord_{1/t}`` is witnessed by a rational point on
``y^2 = x^3 - 4`` and a sum of five squares.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import elliptic as ec
from .algebra.poly import UniPoly
from .algebra.quadext import QuadExt
from .algebra.ratfunc import RatFunc, ord_t_inverse, value_at_infinity
from .errors import TorsionDegenerate

log = logging.getLogger(__name__)


class SoundnessViolation(UserWarning):
    """A checked witness contradicted a property the construction guarantees."""


@dataclass(frozen=True)
class DenefContext:
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    curve: ec.Curve = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.b == 0:
            raise ValueError("b must be nonzero")
        object.__setattr__(self, "curve", ec.Curve(self.a, self.b))
        if not ec.has_trivial_rational_two_torsion(self.a, self.b):
            raise ValueError(f"x^3 + ({self.a})x + ({self.b}) has a rational root")

    @property
    def t(self):
        return RatFunc.gen("t")

    @property
    def D(self):
        t = UniPoly.gen("t")
        return t ** 3 + self.a * t + self.b

    @property
    def h(self):
        """Generator of Q(t)(h), h^2 = D."""
        return _h(self.a, self.b)

    @property
    def P1(self):
        return ec.TwistedPoint(self.t, RatFunc.constant(1, "t"))


@lru_cache(maxsize=None)
def _h(a, b):
    t = RatFunc.gen("t")
    zero = RatFunc.constant(0, "t")
    return QuadExt(zero, RatFunc.constant(1, "t"), t ** 3 + a * t + b, "h")


@dataclass(frozen=True)
class ZElement:
    n: int
    value: RatFunc

    def __str__(self):
        return f"Z[{self.n}] = {self.value}"


def _at_t(p):
    return UniPoly(p.coeffs, "t")


@lru_cache(maxsize=None)
def _pn_positive(a, b, n):
    xn, xd, yn, yd = ec.multiplication_map(a, b, n)
    return ec.TwistedPoint(RatFunc(_at_t(xn), _at_t(xd)), RatFunc(_at_t(yn), _at_t(yd)))


def compute_Pn(ctx, n):
    """``n * (t, 1)`` on the twist, via division polynomials."""
    if n == 0:
        return ec.O
    p = _pn_positive(ctx.a, ctx.b, abs(n))
    return p if n > 0 else ec.TwistedPoint(p.X, -p.Y)


def compute_Pn_group_law(ctx, n):
    """The same point by double-and-add on E over Q(t)(h); an independent route."""
    h = ctx.h
    return ec.twisted_scalar_mul(ctx.curve, h, n, ctx.P1)


def z_of_point(p):
    if p is ec.O:
        return RatFunc.constant(0, "t")
    if p.Y == 0:
        raise TorsionDegenerate(f"Y vanishes at {p}")
    return p.X / (RatFunc.gen("t") * p.Y)


@lru_cache(maxsize=None)
def _zn(a, b, n):
    if n == 0:
        return RatFunc.constant(0, "t")
    xn, xd, yn, yd = ec.multiplication_map(a, b, abs(n))
    if yn.is_zero():
        raise TorsionDegenerate(f"Y_{n} = 0")
    # X / (t Y) with X = xn/xd and Y = yn/yd; xd divides yd up to the factor f_n
    yq = yd.exact_quo(xd)
    z = RatFunc(_at_t(xn) * _at_t(yq), _at_t(yn) * UniPoly.gen("t"))
    return z if n > 0 else -z


def compute_Zn(ctx, n):
    return ZElement(n, _zn(ctx.a, ctx.b, n))


def check_infinity_value(ctx, n):
    """``Z_n`` has order 0 at infinity with value ``n`` there (``Z_0 = 0``)."""
    z = compute_Zn(ctx, n).value
    if n == 0:
        return z.is_zero()
    return (ord_t_inverse(z) == 0 and value_at_infinity(z) == n
            and ord_t_inverse(z - n) > 0)


@lru_cache(maxsize=None)
def _infinity_value(a, b, n):
    z = _zn(a, b, n)
    if ord_t_inverse(z) < 0:
        return None
    return value_at_infinity(z)


def mult_encoding_holds(ctx, n, m, l, method="exact"):
    """Whether ``ord_{1/t}(Z_n Z_m - Z_l) > 0``.

    ``exact`` forms the numerator and denominator of the difference and
    compares degrees.  ``infinity`` compares the values of ``Z_n Z_m`` and
    ``Z_l`` at ``t = oo``, which decides the same question whenever both
    have nonnegative order.
    """
    if method == "infinity":
        vn, vm, vl = (_infinity_value(ctx.a, ctx.b, k) for k in (n, m, l))
        if None not in (vn, vm, vl):
            return vn * vm == vl
        method = "exact"
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    zn, zm, zl = (_zn(ctx.a, ctx.b, k) for k in (n, m, l))
    an, ad = zn.num * zm.num, zn.den * zm.den
    num = an * zl.den - zl.num * ad
    if num.is_zero():
        return True
    # common factors cancel from both sides, so degrees of an unreduced pair suffice
    return (ad.degree + zl.den.degree) - num.degree > 0


@dataclass(frozen=True)
class AddWitness:
    points: tuple
    z: tuple

    def __str__(self):
        p, q, r = (ec.format_point(x) for x in self.points)
        return f"{p} + {q} = {r}"


def add_encoding_witness(ctx, n, m):
    """``(P_n, P_m, P_{n+m})`` with their Z-values; the sum is re-checked by the group law."""
    pts = (compute_Pn(ctx, n), compute_Pn(ctx, m), compute_Pn(ctx, n + m))
    s = ec.twisted_add(ctx.curve, ctx.h, pts[0], pts[1])
    if s != pts[2]:
        raise AssertionError(f"P_{n} + P_{m} != P_{n + m}")
    zs = tuple(compute_Zn(ctx, k) for k in (n, m, n + m))
    return AddWitness(pts, zs)


def com_check(x, y):
    """``y^2 = x^3 - 4``."""
    return y * y == x * x * x - 4


def verify_T_witness(ctx, Z, y, X, comX):
    """Check ``Com(y)`` and ``(y - t) Z^2 + 1 = X_1^2 + ... + X_5^2``.

    An accepted witness forces ``ord_{1/t}(Z) > 0``; if that ever fails a
    :class:`SoundnessViolation` warning is issued.
    """
    if len(X) != 5:
        raise ValueError("need exactly five squares")
    if not com_check(comX, y):
        return False
    t = RatFunc.gen("t")
    lhs = (y - t) * Z * Z + 1
    rhs = sum((x * x for x in X), RatFunc.constant(0, "t"))
    if lhs != rhs:
        return False
    if not ord_t_inverse(Z) > 0:
        msg = f"accepted witness but ord(Z) = {ord_t_inverse(Z)} for Z = {Z}"
        log.error(msg)
        warnings.warn(msg, SoundnessViolation, stacklevel=2)
    return True


def rf_degree(u):
    """deg num - deg den."""
    return u.num.degree - u.den.degree


def five_square_degree_check(X):
    """Degree of ``sum X_i^2``; the leading terms cannot cancel over Q."""
    if any(x == 0 for x in X):
        raise ValueError("all entries must be nonzero")
    s = sum((x * x for x in X), RatFunc.constant(0, "t"))
    d = rf_degree(s)
    expect = 2 * max(rf_degree(x) for x in X)
    if d != expect:
        raise AssertionError(f"degree {d} != 2 * max degree {expect}")
    return d


def even_odd_decomposition(ctx, n):
    """Check ``P_n = 2 P_k (+ P_1 if n is odd)`` with ``k = floor(n / 2)``; returns ``(k, n mod 2)``."""
    k, e = divmod(n, 2)
    c, h = ctx.curve, ctx.h
    q = ec.add(c, *(ec.twist_transport(compute_Pn(ctx, k), h),) * 2, check=False)
    if e:
        q = ec.add(c, q, ec.twist_transport(ctx.P1, h), check=False)
    if ec.twist_transport(q, h, "to_twist") != compute_Pn(ctx, n):
        raise AssertionError(f"P_{n} is not 2*P_{k} + {e}*P_1")
    return k, e
