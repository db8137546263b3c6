import random
from fractions import Fraction

import pytest

from h10ff.algebra.multiratfunc import MultiRatFunc
from h10ff.algebra.quadext import QuadExt, quadext_inv
from h10ff.algebra.ratfunc import RatFunc
from h10ff.algebra.series import (
    LaurentSeries, Substitution, expand_adaptive, field_sqrt, series_expand, series_sqrt,
)
from h10ff.errors import DegenerateExtension, DivisionByZero, NotASquareConstantTerm, PrecisionExhausted

F = Fraction


def ext(a, b):
    t = RatFunc.gen("t")
    return QuadExt(a, b, t ** 3 + t + 1, "h")


def rf(x):
    return RatFunc.constant(x, "t")


# -- quadratic extensions --------------------------------------------------------


def test_inverse_of_one():
    one = ext(rf(1), rf(0))
    assert quadext_inv(one) == one


def test_inverse_of_h():
    t = RatFunc.gen("t")
    D = t ** 3 + t + 1
    h = ext(rf(0), rf(1))
    assert quadext_inv(h) == ext(rf(0), 1 / D)


def test_inverse_of_t_plus_h():
    # (t, 1)^-1 = (t, -1) / (t^2 - t^3 - t - 1); multiplied back by hand
    t = RatFunc.gen("t")
    e = ext(t, rf(1))
    n = t ** 2 - t ** 3 - t - 1
    inv = quadext_inv(e)
    assert inv == ext(t / n, -1 / n)
    assert e * inv == 1


def test_inverse_errors():
    with pytest.raises(DivisionByZero):
        quadext_inv(ext(rf(0), rf(0)))
    t = RatFunc.gen("t")
    fake = QuadExt(t, rf(1), t * t, "g")  # g^2 = t^2 is no extension
    with pytest.raises(DegenerateExtension):
        quadext_inv(fake)


def test_field_axioms_over_q_t():
    rng = random.Random(3)
    t = RatFunc.gen("t")
    for _ in range(30):
        xs = [ext(rng.randint(-3, 3) + rng.randint(-2, 2) * t, rf(rng.randint(-2, 2)))
              for _ in range(3)]
        a, b, c = xs
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * quadext_inv(a) == 1


def test_field_axioms_in_tower(kr):
    rng = random.Random(4)
    t1, t2 = MultiRatFunc.var("t1"), MultiRatFunc.var("t2")
    for _ in range(6):
        e = kr.tower(rng.randint(-2, 2) + t1, rng.randint(-1, 1), t2 - rng.randint(0, 2),
                     rng.randint(-1, 1))
        assert e * quadext_inv(e) == 1
        assert (e + kr.h1) * kr.h2 == e * kr.h2 + kr.h1 * kr.h2
    assert kr.h1 * kr.h1 == kr.t1 ** 3 + kr.t1 + 1
    assert kr.h2 * kr.h2 == kr.t2 ** 3 + kr.t2 + 1


# -- Laurent series ----------------------------------------------------------------


def test_series_sqrt_example():
    s = LaurentSeries([F(1), F(1), F(0), F(1)], 0, 4)
    r = series_sqrt(s)
    assert r.dense(0, 4) == [F(1), F(1, 2), F(-1, 8), F(9, 16)]
    assert r * r == s


def test_series_sqrt_to_order_8():
    # coefficients of sqrt(1 + u + u^3), frozen from an independent CAS expansion
    r = series_sqrt(LaurentSeries([F(1), F(1), F(0), F(1)], 0, 8))
    assert r.dense(0, 8) == [F(1), F(1, 2), F(-1, 8), F(9, 16), F(-37, 128), F(55, 256),
                             F(-309, 1024), F(697, 2048)]


def test_series_sqrt_trivial_cases():
    one = LaurentSeries([F(1)], 0, 4)
    assert series_sqrt(one) == one
    sq = LaurentSeries([F(1), F(2), F(1)], 0, 3)
    assert series_sqrt(sq).dense(0, 3) == [1, 1, 0]


def test_series_sqrt_rejects():
    with pytest.raises(NotASquareConstantTerm):
        series_sqrt(LaurentSeries([F(2), F(1)], 0, 4))
    with pytest.raises(NotASquareConstantTerm):
        series_sqrt(LaurentSeries([F(1)], 1, 4))


def test_series_arithmetic():
    u = LaurentSeries.gen(6)
    one = LaurentSeries.constant(F(1), 6)
    geo = (one - u).inverse()
    assert geo.dense(0, 6) == [1] * 6
    assert (u ** -2).valuation() == -2
    assert ((one + u) ** 3).dense(0, 4) == [1, 3, 3, 1]


def test_field_sqrt():
    assert field_sqrt(F(4, 9)) == F(2, 3)
    t = RatFunc.gen("t")
    assert field_sqrt((t + 1) ** 2 / t ** 4) == (t + 1) / t ** 2
    assert field_sqrt(t) is None


def _sub():
    def h(n):
        return series_sqrt(LaurentSeries([F(1), F(1), F(0), F(1)], 0, n))

    return Substitution(series={"u": lambda n: LaurentSeries.gen(n), "h": h})


def test_series_expand_examples():
    sub = _sub()
    c = series_expand(MultiRatFunc.constant(F(5, 3), ("u",)), sub, 6)
    assert c.dense(0, 6) == [F(5, 3), 0, 0, 0, 0, 0]
    u = series_expand(MultiRatFunc.var("u", ("u",)), sub, 6)
    assert u.valuation() == 1 and u[1] == 1
    one = MultiRatFunc.constant(1, ("u",))
    h = QuadExt(MultiRatFunc.constant(0, ("u",)), one, MultiRatFunc.var("u", ("u",)) ** 3
                + MultiRatFunc.var("u", ("u",)) + 1, "h")
    assert series_expand(h, sub, 4).dense(0, 4) == [1, F(1, 2), F(-1, 8), F(9, 16)]


def test_raising_precision_keeps_coefficients():
    sub = _sub()
    e = MultiRatFunc.var("u", ("u",)) / (1 - MultiRatFunc.var("u", ("u",)) ** 2)
    lo, hi = series_expand(e, sub, 6), series_expand(e, sub, 12)
    assert hi.dense(0, 6) == lo.dense(0, 6)


def test_precision_exhausted():
    sub = _sub()
    # h^2 - D(u) cancels in every expansion, leaving u^40 hidden below the cap
    u, h = MultiRatFunc.var("u", ("u", "h")), MultiRatFunc.var("h", ("u", "h"))
    e = h ** 2 - (u ** 3 + u + 1) + u ** 40
    with pytest.raises(PrecisionExhausted):
        expand_adaptive(e, sub, start=8, cap=32)
    assert expand_adaptive(e, sub, start=8, cap=64).valuation() == 40
