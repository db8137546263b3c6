"""The curve y^2 = x^3 + x + 1 over F = Q(t1, t2)(h1, h2).

``P1 = (t1, h1)`` and ``P2 = (t2, h2)`` are independent points, and the pair
``(n, r)`` stands for ``n P1 + r P2``.  Divisibility ``(m, 1) | (n, r)`` is
tied to isotropy of ``x(nP1 + rP2) z^2 + x(mP1 + P2) w^2 = 1``; the
obstruction is a valuation ``w_m`` with uniformizer ``x(mP1 + P2)`` whose
residue field is Q(t1)(h1).  ``w_m`` is computed by Laurent expansion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import elliptic as ec
from .algebra.multiratfunc import MultiRatFunc
from .algebra.poly import UniPoly, gcd_cofactors, poly_gcd, squarefree_decomposition
from .algebra.quadext import QuadExt
from .algebra.ratfunc import RatFunc
from .algebra.series import (MAX_PRECISION, LaurentSeries, Substitution,
                             field_sqrt, series_sqrt)
from .errors import (DegenerateCombination, DegenerateForm, DegenerateShift, PrecisionExhausted,
                     ScaleExceeded, ZeroElement)

GENS = ("t1", "t2")
MAX_DIVISOR_SCALE = 3
MAX_RESIDUE_DEGREE = 2000


# -- the tower F and the residue field K ---------------------------------------


@dataclass(frozen=True, eq=False)
class KRContext:
    """Fixed data: a = b = 1, the tower, the residue field and the base points."""

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    curve: ec.Curve = field(init=False)
    h1: QuadExt = field(init=False)
    h2: QuadExt = field(init=False)
    K_h: QuadExt = field(init=False)

    def __post_init__(self):
        if (self.a, self.b) != (1, 1):
            raise ValueError("the two-variable model is fixed to a = b = 1")
        s = object.__setattr__
        s(self, "curve", ec.Curve(self.a, self.b))
        t1, t2 = MultiRatFunc.var("t1", GENS), MultiRatFunc.var("t2", GENS)
        zero, one = MultiRatFunc.constant(0, GENS), MultiRatFunc.constant(1, GENS)
        h1 = QuadExt(zero, one, t1 ** 3 + self.a * t1 + self.b, "h1")
        D2 = h1.lift(t2 ** 3 + self.a * t2 + self.b)
        s(self, "h1", QuadExt(h1.lift(0), h1.lift(1), D2, "h2").lift(h1))
        s(self, "h2", QuadExt(h1.lift(0), h1.lift(1), D2, "h2"))
        tk = RatFunc.gen("t1")
        s(self, "K_h", QuadExt(RatFunc.constant(0, "t1"), RatFunc.constant(1, "t1"),
                               tk ** 3 + self.a * tk + self.b, "h1"))
        for p in (self.P1, self.P2):
            assert ec.on_curve(self.curve, p)
        assert ec.on_curve(self.curve, self.T0)

    # tower helpers
    def F(self, c):
        """Embed an element of Q(t1, t2) (or Q) in F."""
        return self.h2.lift(self.h1.a.lift(c) if not isinstance(c, QuadExt) else c)

    def tower(self, c00=0, c10=0, c01=0, c11=0):
        """``c00 + c10 h1 + c01 h2 + c11 h1 h2``."""
        A = QuadExt(_mrf(c00), _mrf(c10), self.h1.a.D, "h1")
        B = QuadExt(_mrf(c01), _mrf(c11), self.h1.a.D, "h1")
        return QuadExt(A, B, self.h2.D, "h2")

    @property
    def t1(self):
        return self.F(MultiRatFunc.var("t1", GENS))

    @property
    def t2(self):
        return self.F(MultiRatFunc.var("t2", GENS))

    @property
    def P1(self):
        return ec.CurvePoint(self.t1, self.h1)

    @property
    def P2(self):
        return ec.CurvePoint(self.t2, self.h2)

    @property
    def T0(self):
        return ec.CurvePoint(Fraction(0), Fraction(1))

    # residue field helpers
    def K(self, r):
        """Embed an element of Q(t1) (or Q) in K = Q(t1)(h1)."""
        if isinstance(r, RatFunc):
            return self.K_h.lift(r)
        return self.K_h.lift(RatFunc.constant(r, "t1"))


def _mrf(c):
    if isinstance(c, MultiRatFunc):
        return c
    if isinstance(c, RatFunc):
        return MultiRatFunc.from_ratfunc(c, GENS)
    return MultiRatFunc.constant(c, GENS)


def tower_coords(e):
    """``(c00, c10, c01, c11)`` with ``e = c00 + c10 h1 + c01 h2 + c11 h1 h2``."""
    return (e.a.a, e.a.b, e.b.a, e.b.b)


def format_tower(e):
    names = ("", "h1", "h2", "h1*h2")
    parts = []
    for c, n in zip(tower_coords(e), names):
        if c == 0:
            continue
        cs = str(c)
        if not n:
            parts.append(cs)
        elif cs == "1":
            parts.append(n)
        else:
            parts.append(f"({cs})*{n}")
    return " + ".join(parts) if parts else "0"


# -- multiples of P1 and P2 -----------------------------------------------------


def _uni(p, var):
    return UniPoly(p.coeffs, var)


@lru_cache(maxsize=None)
def _multiple_coords(n, var):
    """``(x, ycoef)`` in Q(var) with ``n (var, h) = (x, h * ycoef)``, n != 0."""
    xn, xd, yn, yd = ec.multiplication_map(Fraction(1), Fraction(1), abs(n))
    x = RatFunc(_uni(xn, var), _uni(xd, var))
    y = RatFunc(_uni(yn, var), _uni(yd, var))
    return x, (y if n > 0 else -y)


def multiple_of_P1(ctx, n):
    if n == 0:
        return ec.O
    x, y = _multiple_coords(n, "t1")
    return ec.CurvePoint(ctx.F(_mrf(x)), ctx.h1 * _mrf(y))


def multiple_of_P2(ctx, r):
    if r == 0:
        return ec.O
    x, y = _multiple_coords(r, "t2")
    return ec.CurvePoint(ctx.F(_mrf(x)), ctx.h2 * _mrf(y))


_COMBO_CACHE = {}


def combo_point(ctx, n, r):
    """``n P1 + r P2`` in E(F)."""
    key = (id(ctx), n, r)
    if key not in _COMBO_CACHE:
        _COMBO_CACHE[key] = ec.add(ctx.curve, multiple_of_P1(ctx, n), multiple_of_P2(ctx, r),
                                   check=False)
    return _COMBO_CACHE[key]


def div_form(ctx, m, n, r):
    """Coefficients ``(A, B) = (x(nP1 + rP2), x(mP1 + P2))`` of the divisibility form."""
    if n == 0 or r == 0:
        raise ValueError("n and r must be nonzero")
    p, q = combo_point(ctx, n, r), combo_point(ctx, m, 1)
    if p is ec.O or q is ec.O:
        raise DegenerateForm(f"point at infinity among {n}P1+{r}P2, {m}P1+P2")
    return p.x, q.x


def verify_div_witness(ctx, m, n, r, z, w):
    """``A z^2 + B w^2 = 1`` for nonzero ``z, w`` in F."""
    if z == 0 or w == 0:
        raise ValueError("z and w must be nonzero")
    A, B = div_form(ctx, m, n, r)
    return A * z * z + B * w * w == 1


# -- change of generators and the valuation w_m --------------------------------


@dataclass(frozen=True)
class Rewrite:
    """``P2' = m P1 + P2 = (t2', h2')`` and the way back ``P2 = P2' - m P1``."""

    m: int
    t2p: QuadExt
    h2p: QuadExt
    back: Callable

    def inverse(self, x, y, check=False):
        return self.back(x, y, check)


def rewrite_basis(ctx, m):
    p = combo_point(ctx, m, 1)
    if p is ec.O:
        raise DegenerateShift(f"{m}P1 + P2 is the point at infinity")
    minus = ec.neg(multiple_of_P1(ctx, m))

    def back(x, y, check=False):
        q = ec.add(ctx.curve, ec.CurvePoint(x, y), minus, check=check)
        if q is ec.O:
            raise DegenerateShift("P2' - m P1 is the point at infinity")
        return q.x, q.y

    return Rewrite(m, p.x, p.y, back)


@lru_cache(maxsize=None)
def _h2p_series(n):
    """``sqrt(u^3 + u + 1)`` with constant term 1, over Q."""
    s = LaurentSeries([Fraction(1), Fraction(1), Fraction(0), Fraction(1)], 0, n)
    return series_sqrt(s)


class _SeriesSubstitution:
    """Per-precision expansions of t2, h2 after ``P2' = (u, sqrt(D(u)))``."""

    def __init__(self, ctx, m):
        self.ctx = ctx
        self.m = m
        self._cache = {}
        if m:
            x, y = _multiple_coords(m, "t1")
            # -m P1 with coordinates in K
            self.minus = ec.CurvePoint(ctx.K(x), -(ctx.K_h * y))
        else:
            self.minus = ec.O

    def point(self, n):
        if n not in self._cache:
            K = self.ctx.K
            u = LaurentSeries([K(1)], 1, n)
            hp = LaurentSeries([K(c) for c in _h2p_series(n).coeffs], 0, n)
            p = ec.CurvePoint(u, hp)
            if self.minus is not ec.O:
                mp = ec.CurvePoint(LaurentSeries.constant(self.minus.x, n),
                                   LaurentSeries.constant(self.minus.y, n))
                p = ec.add(self.ctx.curve, p, mp, check=False)
            self._cache[n] = p
        return self._cache[n]

    def substitution(self):
        ctx = self.ctx
        return Substitution(
            series={"t2": lambda n: self.point(n).x, "h2": lambda n: self.point(n).y},
            constants={"h1": ctx.K_h},
            lift=ctx.K,
        )


_SUBS = {}


def _series_sub(ctx, m):
    key = (id(ctx), m)
    if key not in _SUBS:
        _SUBS[key] = _SeriesSubstitution(ctx, m)
    return _SUBS[key]


def _substitution(ctx, m):
    """The generic (slow but simple) substitution, kept as a cross-check."""
    return _series_sub(ctx, m).substitution()


# Expanding coefficient by coefficient over K spends nearly all its time in
# gcds.  Instead the t2 and h2 series are written as (series over
# R = Q[t1][h1]) / (polynomial in t1), numerators and denominators of e are
# evaluated over R, and only the final quotient is formed in K.

_RD = UniPoly.gen("t1") ** 3 + UniPoly.gen("t1") + 1


def _r(a, b=None):
    zero = UniPoly.constant(0, "t1")
    return QuadExt(a, zero if b is None else b, _RD, "h1")


def _to_ring(s):
    """K-series -> (series over R, C in Q[t1]) with ``s = series / C``."""
    C = UniPoly.constant(1, "t1")
    for c in s.coeffs:
        C = _lcm_poly(_lcm_poly(C, _t1(c.a.den)), _t1(c.b.den))
    coeffs = [_r(_t1(c.a.num) * C.exact_quo(_t1(c.a.den)),
                 _t1(c.b.num) * C.exact_quo(_t1(c.b.den))) for c in s.coeffs]
    return LaurentSeries(coeffs, s.lead_exponent, s.precision), C


def _t1(p):
    return p if p.var == "t1" else UniPoly(p.coeffs, "t1")


_RING_CACHE = {}


def _ring_point(ctx, m, n):
    key = (id(ctx), m, n)
    if key not in _RING_CACHE:
        p = _series_sub(ctx, m).point(n)
        _RING_CACHE[key] = (_to_ring(p.x), _to_ring(p.y))
    return _RING_CACHE[key]


def _ff_poly(p, X, C, n):
    """``p(t1, X / C) = S / C^d``; returns ``(S, d)``."""
    parts = p.coefficients_in("t2")
    d = max(parts)
    acc = None
    for k in range(d, -1, -1):
        if acc is not None:
            acc = acc * X
        c = parts.get(k)
        if c is not None and not c.is_zero():
            cs = LaurentSeries.constant(_r(c.to_unipoly("t1") * C ** (d - k)), n)
            acc = cs if acc is None else acc + cs
    return acc, d


def _ff_expand(ctx, m, e, n):
    """``e`` as a pair (numerator, denominator) of series over R."""
    (X, Cx), (Y, Cy) = _ring_point(ctx, m, n)
    h1 = _r(UniPoly.constant(0, "t1"), UniPoly.constant(1, "t1"))

    def frac(q):
        N, dn = _ff_poly(q.num, X, Cx, n)
        D, dd = _ff_poly(q.den, X, Cx, n)
        if dd >= dn:
            return N * _r(Cx ** (dd - dn)), D
        return N, D * _r(Cx ** (dn - dd))

    def add(f, g):
        if f is None:
            return g
        return f[0] * g[1] + g[0] * f[1], f[1] * g[1]

    acc = None
    for part, y in ((e.a, False), (e.b, True)):
        for q, h in ((part.a, False), (part.b, True)):
            if q.is_zero():
                continue
            N, D = frac(q)
            if h:
                N = N * h1
            if y:
                N, D = N * Y, D * _r(Cy)
            acc = add(acc, (N, D))
    return acc


def _to_K(ctx, s):
    K = ctx.K_h
    return LaurentSeries([QuadExt(RatFunc(c.a), RatFunc(c.b), K.D, "h1") for c in s.coeffs],
                         s.lead_exponent, s.precision)


def wm_expansion(ctx, m, e, terms=1):
    """Laurent expansion of ``e`` in ``u = t2'`` after rewriting by ``m``.

    At least ``terms`` coefficients from the leading one on are returned.
    """
    if e == 0:
        raise ZeroElement("w_m of zero")
    if combo_point(ctx, m, 1) is ec.O:
        raise DegenerateShift(f"{m}P1 + P2 is the point at infinity")
    terms = max(terms, 1)
    if not isinstance(e, QuadExt) or e.gen != "h2":
        e = ctx.F(e) if not isinstance(e, QuadExt) else ctx.h2.lift(e)
    # low precision keeps the common denominators small; double on demand
    n = 1
    while True:
        N, D = _ff_expand(ctx, m, e, n)
        if not (N.is_zero() or D.is_zero()):
            keep = min(N._relprec(), D._relprec(), terms)
            if keep >= terms:
                N = N.truncate(N.lead_exponent + keep)
                D = D.truncate(D.lead_exponent + keep)
                return _to_K(ctx, N) / _to_K(ctx, D)
        if n >= MAX_PRECISION:
            raise PrecisionExhausted(f"no nonzero coefficient found below u^{n}")
        n = min(2 * n, MAX_PRECISION)


def wm_valuation(ctx, m, e):
    return wm_expansion(ctx, m, e).lead_exponent


# -- residues --------------------------------------------------------------------


def residue_xsr(ctx, s, r):
    """``x(s (t1, h1) + r (0, 1))`` in Q(t1)(h1)."""
    c = ctx.curve
    if s:
        x, y = _multiple_coords(s, "t1")
        sp = ec.CurvePoint(ctx.K(x), ctx.K_h * y)
    else:
        sp = ec.O
    rt = ec.scalar_mul(c, r, ctx.T0)
    if rt is not ec.O:
        rt = ec.CurvePoint(ctx.K(rt.x), ctx.K(rt.y))
    p = ec.add(c, sp, rt, check=False)
    if p is ec.O:
        raise DegenerateCombination(f"{s}(t1, h1) + {r}(0, 1) is the point at infinity")
    return p.x


def residue_consistency(ctx, m, n, r):
    """``w_m(x(nP1 + rP2)) = 0`` and its residue is ``x_{s,r}`` with ``s = n - m r``."""
    s = n - m * r
    if s == 0:
        raise ValueError("s = n - m r must be nonzero")
    p = combo_point(ctx, n, r)
    if p is ec.O:
        raise DegenerateCombination(f"{n}P1 + {r}P2 is the point at infinity")
    ser = wm_expansion(ctx, m, p.x)
    return ser.lead_exponent == 0 and ser[0] == residue_xsr(ctx, s, r)


# -- zeros of P -> x(sP + r T0) ------------------------------------------------


@dataclass(frozen=True)
class DivisorCount:
    zero_count: int
    all_simple: bool
    detail: tuple = ()


def shifted_x_divisor(s, r, a=1, b=1):
    """Zeros, with multiplicity, of ``P -> x(sP + r T0)`` on E over an algebraic closure.

    A zero is a point with ``sP`` in ``{(1 - r) T0, (-1 - r) T0}``.  For an
    affine target ``R`` the candidates are the roots of
    ``xnum - x_R xden`` (the x-coordinate of ``[s]P`` minus ``x_R``), each
    root giving exactly one preimage of ``R``.  For ``R = O`` they are the
    s-torsion points.
    """
    if s > MAX_DIVISOR_SCALE:
        raise ScaleExceeded(f"s = {s} exceeds the cap {MAX_DIVISOR_SCALE}")
    if s < 1:
        raise ValueError("s must be positive")
    c = ec.Curve(Fraction(a), Fraction(b))
    T0 = ec.CurvePoint(Fraction(0), Fraction(1))
    if not ec.on_curve(c, T0):
        raise ValueError("(0, 1) is not on the curve")
    xn, xd, _, _ = ec.multiplication_map(Fraction(a), Fraction(b), s)
    x = UniPoly.gen("x")
    Fx = x ** 3 + a * x + b
    total, simple, detail = 0, True, []
    for k in (1 - r, -1 - r):
        R = ec.scalar_mul(c, k, T0)
        if R is ec.O:
            # s-torsion: O and the roots of the reduced division polynomial f_s
            fs = ec.division_polynomial_reduced(a, b, s)
            count, ok = 1, True
            if s > 1:
                decomp = squarefree_decomposition(fs)
                ok = all(i == 1 for _, i in decomp) and poly_gcd(fs, Fx).is_constant()
                count += 2 * fs.degree
                if s % 2 == 0:
                    count += Fx.degree
            detail.append((k, "O", count, ok))
        else:
            if R.y == 0:
                raise AssertionError("target is 2-torsion; (0, 1) would have finite order")
            elim = xn - R.x * xd
            decomp = squarefree_decomposition(elim)
            count = sum(g.degree * i for g, i in decomp)
            ok = all(i == 1 for _, i in decomp) and poly_gcd(elim, Fx).is_constant()
            detail.append((k, str(R.x), count, ok))
        total += count
        simple = simple and ok
    return DivisorCount(total, simple, tuple(detail))


# -- squares in the residue field ---------------------------------------------------


def _split_residue(e):
    """``e = (A + B h) / C`` with A, B, C in Q[t1]."""
    a, b = e.a, e.b
    C = _lcm_poly(a.den, b.den)
    A = a.num * C.exact_quo(a.den)
    B = b.num * C.exact_quo(b.den)
    return A, B, C


def _lcm_poly(p, q):
    g, _, qc = gcd_cofactors(p, q)
    return p * qc


def _odd_part(p):
    """Product of the squarefree factors of ``p`` that occur to an odd power."""
    out = UniPoly.constant(1, p.var)
    for g, i in squarefree_decomposition(p):
        if i % 2:
            out = out * g
    return out


def odd_order_places(e):
    """Describe the places of Q(t1)(h1) where ``e`` has odd order (empty if none).

    Finite places lie over irreducible ``q`` in Q[t1]; they are split or inert
    when ``q`` does not divide ``D`` and ramified over ``q = D``.  Write
    ``e = G (A' + B' h) / C`` with ``gcd(A', B') = 1`` and ``N = A'^2 - B'^2 D``.
    Over ``q`` not dividing ``D`` the orders are ``v_q(G/C)`` and
    ``v_q(G/C) + v_q(N)``; over ``D`` the order is ``2 v_D(G/C) + v_D(N)``.  At
    the single place over ``t1 = oo``, ``ord(t1) = -2`` and ``ord(h1) = -3``.
    """
    if e == 0:
        raise ZeroElement("order of zero")
    A, B, C = _split_residue(e)
    D = e.D.num
    for p in (A, B, C):
        if p.degree > MAX_RESIDUE_DEGREE:
            raise ScaleExceeded(f"degree {p.degree} exceeds {MAX_RESIDUE_DEGREE}")
    if B.is_zero():
        G, A1, B1 = A.monic(), UniPoly.constant(A.lc, A.var), B
    else:
        G, A1, B1 = gcd_cofactors(A, B)
    N = A1 * A1 - B1 * B1 * D
    out = []
    gc = _odd_part(G * C)
    # drop the ramified prime: its G/C contribution is doubled
    g, rest, _ = gcd_cofactors(gc, D)
    if not rest.is_constant():
        out.append(("unramified", str(rest), "v(G/C) odd"))
    n_odd = _odd_part(N)
    if not n_odd.is_constant():
        g, rest, _ = gcd_cofactors(n_odd, D)
        if not g.is_constant():
            out.append(("ramified", str(D), "v(N) odd"))
        if not rest.is_constant():
            out.append(("split", str(rest), "v(N) odd"))
    # infinity: ord(A') = -2 deg A', ord(B' h) = -2 deg B' - 3; parities differ
    oa = -2 * A1.degree if not A1.is_zero() else None
    ob = -2 * B1.degree - 3 if not B1.is_zero() else None
    o_inf = min(o for o in (oa, ob) if o is not None) - 2 * (G.degree - C.degree)
    if o_inf % 2:
        out.append(("infinity", "1/t1", f"order {o_inf}"))
    return out


def residue_sqrt(e):
    """A square root of ``e`` in Q(t1)(h1), or None."""
    a, b = e.a, e.b
    if b == 0:
        r = field_sqrt(a)
        if r is not None:
            return e.lift(r)
        r = field_sqrt(a / e.D)
        if r is not None:
            return QuadExt(a * 0, r, e.D, e.gen)
        return None
    n = field_sqrt(e.norm())
    if n is None:
        return None
    for sgn in (1, -1):
        c = field_sqrt((a + sgn * n) / 2)
        if c is not None and c != 0:
            cand = QuadExt(c, b / (2 * c), e.D, e.gen)
            if cand * cand == e:
                return cand
    return None


def is_square_in_residue(e):
    """Whether ``e`` is a square in Q(t1)(h1).

    Odd order at some place refutes squareness; otherwise a root is
    constructed from ``sqrt(N(e))`` and checked.
    """
    if odd_order_places(e):
        return False
    return residue_sqrt(e) is not None


# -- grid report -------------------------------------------------------------------


@dataclass(frozen=True)
class GridCell:
    m: int
    n: int
    r: int
    s: int
    wm_A: int
    wm_B: int
    residue_ok: bool
    square: bool

    def ok(self):
        return self.wm_A == 0 and self.wm_B == 1 and self.residue_ok and not self.square

    def text(self):
        return (f"m={self.m} n={self.n} r={self.r} s={self.s} w_m(A)={self.wm_A} "
                f"residue_ok={self.residue_ok} square={self.square}")

    def json(self):
        return json.dumps({"m": self.m, "n": self.n, "r": self.r, "s": self.s,
                           "w_m(A)": self.wm_A, "w_m(B)": self.wm_B,
                           "residue_ok": self.residue_ok, "square": self.square},
                          sort_keys=True)


def grid_cell(ctx, m, n, r):
    s = n - m * r
    if s == 0:
        raise ValueError("s = n - m r must be nonzero")
    p = combo_point(ctx, n, r)
    ser = wm_expansion(ctx, m, p.x)
    xsr = residue_xsr(ctx, s, r)
    wb = wm_valuation(ctx, m, combo_point(ctx, m, 1).x)
    res_ok = ser.lead_exponent == 0 and ser[0] == xsr
    return GridCell(m, n, r, s, ser.lead_exponent, wb, res_ok, is_square_in_residue(xsr))


def grid(ctx, ms, ns, rs):
    """Cells with ``s = n - m r != 0``, sorted by key."""
    cells = []
    for m in sorted(ms):
        for n in sorted(ns):
            for r in sorted(rs):
                if n - m * r == 0:
                    continue
                cells.append(grid_cell(ctx, m, n, r))
    return cells
