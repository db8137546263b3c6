import random
import warnings

import pytest

from h10ff import denef
from h10ff import elliptic as ec
from h10ff.algebra.ratfunc import RatFunc, ord_t_inverse, value_at_infinity
from h10ff.algebra.syntax import parse_ratfunc as P

# Values below were produced by a separate CAS doing chord-tangent arithmetic
# on (t, h) with h^2 = t^3 + t + 1, then reduced and frozen.
X2 = "(t^4 - 2*t^2 - 8*t + 1) / (4*(t^3 + t + 1))"
Y2 = "(t^6 + 5*t^4 + 20*t^3 - 5*t^2 - 4*t - 9) / (8*(t^3 + t + 1)^2)"
Z2 = "2*(t^4 - 2*t^2 - 8*t + 1)*(t^3 + t + 1) / (t*(t^6 + 5*t^4 + 20*t^3 - 5*t^2 - 4*t - 9))"
X3 = ("(t^9 - 12*t^7 - 96*t^6 + 30*t^5 - 24*t^4 + 84*t^3 + 48*t^2 + 105*t + 72)"
      " / (3*t^4 + 6*t^2 + 12*t - 1)^2")
Z3 = ("(3*t^4 + 6*t^2 + 12*t - 1)*(t^9 - 12*t^7 - 96*t^6 + 30*t^5 - 24*t^4 + 84*t^3 + 48*t^2"
      " + 105*t + 72) / (t*(t^12 + 22*t^10 + 220*t^9 - 165*t^8 - 528*t^7 - 1868*t^6 + 264*t^5"
      " - 1145*t^4 - 400*t^3 - 714*t^2 - 1028*t - 611))")


def rf(c):
    return RatFunc.constant(c, "t")


def test_context_invariants():
    with pytest.raises(ValueError):
        denef.DenefContext(1, 0)
    with pytest.raises(ValueError):
        denef.DenefContext(-1, 0)  # x^3 - x has rational roots


def test_points(ctx):
    assert denef.compute_Pn(ctx, 1) == ec.TwistedPoint(P("t"), rf(1))
    assert denef.compute_Pn(ctx, 0) is ec.O
    p2 = denef.compute_Pn(ctx, 2)
    assert p2 == ec.TwistedPoint(P(X2), P(Y2))
    assert ec.twisted_on_curve(ctx.curve, P("t^3 + t + 1"), p2)
    assert denef.compute_Pn(ctx, 3).X == P(X3)


def test_division_polynomials_match_group_law(ctx):
    for n in range(-6, 7):
        assert denef.compute_Pn(ctx, n) == denef.compute_Pn_group_law(ctx, n)


def test_zn_values(ctx):
    assert denef.compute_Zn(ctx, 1).value == 1
    assert denef.compute_Zn(ctx, -1).value == -1
    assert denef.compute_Zn(ctx, 0).value == 0
    z2 = denef.compute_Zn(ctx, 2).value
    assert z2 == P(Z2)
    assert value_at_infinity(z2) == 2
    assert denef.compute_Zn(ctx, 3).value == P(Z3)
    assert str(denef.compute_Zn(ctx, 0)) == "Z[0] = 0"


def test_zn_matches_point(ctx):
    for n in range(-5, 6):
        assert denef.z_of_point(denef.compute_Pn(ctx, n)) == denef.compute_Zn(ctx, n).value


@pytest.mark.parametrize("n", [2, 0, -7])
def test_check_infinity_value(ctx, n):
    assert denef.check_infinity_value(ctx, n)


def test_infinity_value_range(ctx):
    for n in range(-12, 13):
        z = denef.compute_Zn(ctx, n).value
        if n:
            assert ord_t_inverse(z) == 0 and value_at_infinity(z) == n
            assert ord_t_inverse(z - n) > 0


def test_distinct(ctx):
    zs = [denef.compute_Zn(ctx, n).value for n in range(-10, 11)]
    assert len({str(z) for z in zs}) == len(zs)


@pytest.mark.parametrize("method", ["exact", "infinity"])
def test_mult_examples(ctx, method):
    assert denef.mult_encoding_holds(ctx, 1, 2, 2, method)
    assert denef.mult_encoding_holds(ctx, 2, 2, 4, method)
    assert not denef.mult_encoding_holds(ctx, 2, 2, 3, method)


def test_mult_methods_agree(ctx):
    for n in range(-3, 4):
        for m in range(-3, 4):
            for l in range(-9, 10):
                a = denef.mult_encoding_holds(ctx, n, m, l, "exact")
                assert a == denef.mult_encoding_holds(ctx, n, m, l, "infinity") == (n * m == l)


def test_mult_unknown_method(ctx):
    with pytest.raises(ValueError):
        denef.mult_encoding_holds(ctx, 1, 1, 1, "guess")


def test_add_witness(ctx):
    w = denef.add_encoding_witness(ctx, 1, 0)
    assert w.points[1] is ec.O and w.z[1].value == 0
    w = denef.add_encoding_witness(ctx, 2, 3)
    assert w.points[2] == denef.compute_Pn(ctx, 5)
    assert [z.n for z in w.z] == [2, 3, 5]
    w = denef.add_encoding_witness(ctx, -2, 2)
    assert w.points[2] is ec.O and w.z[2].value == 0


def test_homomorphism_consistency(ctx):
    for n in range(-4, 5):
        for m in range(-4, 5):
            s = ec.twisted_add(ctx.curve, ctx.h, denef.compute_Pn(ctx, n), denef.compute_Pn(ctx, m))
            assert denef.z_of_point(s) == denef.compute_Zn(ctx, n + m).value


def test_com():
    assert denef.com_check(rf(2), rf(2))
    assert denef.com_check(rf(5), rf(11))
    assert not denef.com_check(rf(1), rf(1))


def test_T_witness(ctx, t):
    one, zero = rf(1), rf(0)
    assert denef.verify_T_witness(ctx, zero, rf(2), [one, zero, zero, zero, zero], rf(2))
    assert not denef.verify_T_witness(ctx, 1 / t, rf(2), [one, zero, zero, zero, zero], rf(2))
    # bad Com witness
    assert not denef.verify_T_witness(ctx, zero, rf(2), [one, zero, zero, zero, zero], rf(3))


def test_T_witness_with_positive_order(ctx, t):
    # Z = 1/t, y = 2: (2 - t)/t^2 + 1 = ((t - 1/2)/t)^2 + 7/(4 t^2)
    Z = 1 / t
    lead = (t - rf(1) / 2) / t
    rest = (2 - t) * Z * Z + 1 - lead * lead
    assert rest == RatFunc.constant(7, "t") / (4 * t * t)
    # 7/4 = 1 + 1/4 + 1/4 + 1/4: four rational squares
    X = [lead, 1 / t, 1 / (2 * t), 1 / (2 * t), 1 / (2 * t)]
    with warnings.catch_warnings():
        warnings.simplefilter("error", denef.SoundnessViolation)
        assert denef.verify_T_witness(ctx, Z, rf(2), X, rf(2))


def test_no_witness_when_order_nonpositive(ctx, t):
    rng = random.Random(5)
    for _ in range(50):
        Z = RatFunc.constant(rng.randint(1, 5), "t") + rng.randint(0, 2) * t
        X = [RatFunc.constant(rng.randint(-3, 3), "t") + rng.randint(-2, 2) * t for _ in range(5)]
        assert not denef.verify_T_witness(ctx, Z, rf(2), X, rf(2))


def test_five_square_degree(t):
    one = rf(1)
    assert denef.five_square_degree_check([t, one, one, one, one]) == 2
    assert denef.five_square_degree_check([t * t + 1, t, t, one, one]) == 4
    with pytest.raises(ValueError):
        denef.five_square_degree_check([t, rf(0), one, one, one])


def test_five_square_degree_sampled(t):
    rng = random.Random(17)
    for _ in range(100):
        X = []
        while len(X) < 5:
            x = sum((rng.randint(-4, 4) * t ** k for k in range(rng.randint(0, 4) + 1)), rf(0))
            if not x.is_zero():
                X.append(x / (rng.randint(1, 3) + 0 * t))
        d = denef.five_square_degree_check(X)
        assert d % 2 == 0


def test_even_odd_decomposition(ctx):
    for n in range(-6, 7):
        k, e = denef.even_odd_decomposition(ctx, n)
        assert 2 * k + e == n
