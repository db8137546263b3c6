"""Sparse multivariate polynomials over Q with named generators."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import _dense as D
from .poly import UniPoly, _to_fraction, _lcm

_DENSE_FACTOR = 8  # dense packing allowed when at most this times the term-product size


def _merge_gens(a, b):
    if a == b:
        return a
    return tuple(a) + tuple(g for g in b if g not in a)


class MultiPoly:
    """``terms`` maps exponent tuples (aligned with ``gens``) to nonzero Fractions."""

    __slots__ = ("gens", "terms")

    def __init__(self, terms=None, gens=()):
        self.gens = tuple(gens)
        clean = {}
        for e, c in (terms or {}).items():
            c = _to_fraction(c)
            if c:
                e = tuple(e)
                if len(e) != len(self.gens):
                    raise ValueError("exponent tuple does not match generators")
                clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, terms, gens):
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        return p

    @classmethod
    def var(cls, name, gens=None):
        gens = tuple(gens) if gens is not None else (name,)
        e = tuple(1 if g == name else 0 for g in gens)
        if name not in gens:
            raise ValueError(f"{name} not among generators {gens}")
        return cls._raw({e: Fraction(1)}, gens)

    @classmethod
    def const(cls, c, gens=()):
        c = _to_fraction(c)
        gens = tuple(gens)
        return cls._raw({(0,) * len(gens): c} if c else {}, gens)

    # -- generator bookkeeping ---------------------------------------------

    def with_gens(self, gens):
        gens = tuple(gens)
        if gens == self.gens:
            return self
        idx = {g: i for i, g in enumerate(gens)}
        for e in self.terms:
            for g, k in zip(self.gens, e):
                if k and g not in idx:
                    raise ValueError(f"generator {g} missing from {gens}")
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(gens)
            for g, k in zip(self.gens, e):
                if k:
                    ne[idx[g]] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(out, gens)

    def used_gens(self):
        used = set()
        for e in self.terms:
            for g, k in zip(self.gens, e):
                if k:
                    used.add(g)
        return tuple(g for g in self.gens if g in used)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            gens = _merge_gens(self.gens, other.gens)
            return self.with_gens(gens), other.with_gens(gens)
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return self, MultiPoly.const(other, self.gens)
        if isinstance(other, UniPoly):
            return self._coerce(MultiPoly.from_unipoly(other))
        return None

    @classmethod
    def from_unipoly(cls, p, gens=None):
        gens = tuple(gens) if gens is not None else (p.var,)
        i = gens.index(p.var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c:
                e = [0] * len(gens)
                e[i] = k
                terms[tuple(e)] = c
        return cls._raw(terms, gens)

    # -- inspection ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, gen=None):
        if not self.terms:
            return float("-inf")
        if gen is None:
            return max(sum(e) for e in self.terms)
        if gen not in self.gens:
            return 0
        i = self.gens.index(gen)
        return max(e[i] for e in self.terms)

    def leading_term(self):
        """Leading ``(exponents, coeff)`` under graded lex order on ``gens``."""
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def is_integral(self):
        return all(c.denominator == 1 for c in self.terms.values())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(out, a.gens)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.gens)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if not a.terms or not b.terms:
            return MultiPoly._raw({}, a.gens)
        if len(a.terms) == 1 or len(b.terms) == 1:
            return _sparse_mul(a, b)
        packed = _packed_mul(a, b)
        return packed if packed is not None else _sparse_mul(a, b)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("nonnegative integer exponent required")
        result = MultiPoly.const(1, self.gens)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0].terms == pair[1].terms

    def __hash__(self):
        used = self.used_gens()
        p = self.with_gens(used)
        return hash((used, frozenset(p.terms.items())))

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_value()
        try:
            c = _to_fraction(other)
        except TypeError:
            return NotImplemented
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    def scale(self, c):
        c = _to_fraction(c)
        if not c:
            return MultiPoly._raw({}, self.gens)
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.gens)

    def subs(self, values):
        """Evaluate with ``values`` (gen -> ring element); unassigned gens stay symbolic."""
        acc = None
        for e, c in self.terms.items():
            term = c
            rest = [0] * len(self.gens)
            for i, (g, k) in enumerate(zip(self.gens, e)):
                if not k:
                    continue
                if g in values:
                    term = term * values[g] ** k
                else:
                    rest[i] = k
            if any(rest):
                term = term * MultiPoly._raw({tuple(rest): Fraction(1)}, self.gens)
            acc = term if acc is None else acc + term
        return Fraction(0) if acc is None else acc

    def coefficients_in(self, gen):
        """Dict ``k -> MultiPoly`` (same gens) with ``self = sum coeff_k * gen^k``."""
        i = self.gens.index(gen)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: MultiPoly._raw(t, self.gens) for k, t in out.items()}

    def to_unipoly(self, var):
        """Convert a polynomial in ``var`` alone to a :class:`UniPoly`."""
        used = self.used_gens()
        if any(g != var for g in used):
            raise ValueError(f"not univariate in {var}: uses {used}")
        if var not in self.gens:
            return UniPoly.constant(self.constant_value(), var)
        i = self.gens.index(var)
        deg = max((e[i] for e in self.terms), default=0)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return UniPoly(coeffs, var)

    def derivative(self, gen):
        if gen not in self.gens:
            return MultiPoly._raw({}, self.gens)
        i = self.gens.index(gen)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MultiPoly._raw(out, self.gens)

    # -- dense conversion ---------------------------------------------------

    def int_parts(self):
        den = 1
        for c in self.terms.values():
            den = _lcm(den, c.denominator)
        return {e: c.numerator * (den // c.denominator) for e, c in self.terms.items()}, den

    def to_dense(self):
        """``(nested, den)``: level-``len(gens)`` integer nested list, last gen outermost."""
        ints, den = self.int_parts()
        return _build_nested(ints, len(self.gens)), den

    @classmethod
    def from_dense(cls, nested, den, gens):
        terms = {}
        _walk_nested(nested, len(gens), [], terms, den)
        return cls._raw(terms, tuple(gens))

    def __repr__(self):
        return f"MultiPoly({format_multipoly(self)!r})"

    def __str__(self):
        return format_multipoly(self)


def _sparse_mul(a, b):
    out = {}
    for e1, c1 in a.terms.items():
        for e2, c2 in b.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e)
            out[e] = c1 * c2 if s is None else s + c1 * c2
    return MultiPoly._raw({e: c for e, c in out.items() if c}, a.gens)


def _packed_mul(a, b):
    n = len(a.gens)
    bounds = []
    for i in range(n):
        bounds.append(max(e[i] for e in a.terms) + max(e[i] for e in b.terms) + 1)
    size = 1
    for x in bounds:
        size *= x
    if size > _DENSE_FACTOR * len(a.terms) * len(b.terms) + 64:
        return None
    ia, da = a.int_parts()
    ib, db = b.int_parts()

    def pack(terms):
        dense = [0] * size
        for e, c in terms.items():
            k, m = 0, 1
            for x, bd in zip(e, bounds):
                k += x * m
                m *= bd
            dense[k] = c
        return D.strip(dense)

    prod = D.mul(pack(ia), pack(ib))
    den = da * db
    out = {}
    for k, c in enumerate(prod):
        if c:
            e = []
            for bd in bounds:
                k, r = divmod(k, bd)
                e.append(r)
            out[tuple(e)] = Fraction(c, den)
    return MultiPoly._raw(out, a.gens)


def _build_nested(ints, level):
    if level == 0:
        return next(iter(ints.values()), 0) if ints else 0
    groups = {}
    for e, c in ints.items():
        groups.setdefault(e[level - 1], {})[e[:level - 1]] = c
    if not groups:
        return []
    top = max(groups)
    out = [D.n_zero(level - 1)] * (top + 1)
    for k, sub in groups.items():
        out[k] = _build_nested(sub, level - 1)
    return out


def _walk_nested(f, level, suffix, terms, den):
    if level == 0:
        if f:
            terms[tuple(suffix)] = Fraction(f, den)
        return
    for k, c in enumerate(f):
        if not D.n_is_zero(c, level - 1):
            _walk_nested(c, level - 1, [k] + suffix, terms, den)


def multi_gcd_cofactors(f, g):
    """``(h, f/h, g/h)`` with ``h`` the gcd over Q (integer primitive, positive ground lc)."""
    gens = _merge_gens(f.gens, g.gens)
    f, g = f.with_gens(gens), g.with_gens(gens)
    n = len(gens)
    if n == 0:
        one = MultiPoly.const(1, gens)
        return one, f, g
    nf, df = f.to_dense()
    ng, dg = g.to_dense()
    h, cf, cg = D.n_gcd(nf, ng, n)
    if D.n_is_zero(h, n):
        z = MultiPoly._raw({}, gens)
        return z, z, z
    # keep h with integer content 1 so cofactors carry the rational scalars
    cont = D.n_int_content(h, n)
    if cont != 1:
        h = D.n_quo_int(h, cont, n)
        cf = D.n_scale(cf, cont, n)
        cg = D.n_scale(cg, cont, n)
    return (MultiPoly.from_dense(h, 1, gens),
            MultiPoly.from_dense(cf, df, gens),
            MultiPoly.from_dense(cg, dg, gens))


def multi_exact_quo(f, g):
    gens = _merge_gens(f.gens, g.gens)
    f, g = f.with_gens(gens), g.with_gens(gens)
    n = len(gens)
    nf, df = f.to_dense()
    ng, dg = g.to_dense()
    cont = D.n_int_content(ng, n)
    q = D.n_exact_div(nf, D.n_quo_int(ng, cont, n), n)
    if q is None:
        raise ArithmeticError("inexact multivariate division")
    return MultiPoly.from_dense(q, 1, gens).scale(Fraction(dg, df * cont))


def _mono_str(gens, e):
    parts = []
    for g, k in zip(gens, e):
        if k == 1:
            parts.append(g)
        elif k:
            parts.append(f"{g}^{k}")
    return "*".join(parts)


def sorted_terms(p):
    return sorted(p.terms.items(), key=lambda it: (-sum(it[0]), tuple(-x for x in it[0])))


def format_multipoly(p):
    if not p.terms:
        return "0"
    out = ""
    for i, (e, c) in enumerate(sorted_terms(p)):
        mono = _mono_str(p.gens, e)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        elif a.denominator == 1:
            body = f"{a}*{mono}"
        else:
            body = f"({a})*{mono}"
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out
