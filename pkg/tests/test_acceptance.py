"""Acceptance criteria, one test each.

Every test starts from cold caches, times itself against its limit and
prints a single ``criterion N: PASS|FAIL`` line.  Run ``pytest -v -s`` (or
this file directly) to see the lines.
"""

import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest

from h10ff import denef
from h10ff import elliptic as ec
from h10ff import kimroush, reducer
from h10ff.algebra.ratfunc import RatFunc, ord_t_inverse, value_at_infinity
from h10ff.algebra.series import LaurentSeries, series_sqrt

GOLDEN = Path(__file__).parent / "golden"


def _cold():
    for fn in (denef._h, denef._pn_positive, denef._zn, denef._infinity_value, ec._f,
               ec.multiplication_map, kimroush._multiple_coords, kimroush._h2p_series):
        fn.cache_clear()
    for cache in (kimroush._COMBO_CACHE, kimroush._SUBS, kimroush._RING_CACHE):
        cache.clear()


@contextmanager
def criterion(number, title, limit, capsys=None):
    """Run a criterion body; ``state["ok"]`` must be set by the body."""
    _cold()
    state = {"ok": False, "detail": ""}
    start = time.perf_counter()
    try:
        yield state
    finally:
        took = time.perf_counter() - start
        in_time = took < limit
        passed = state["ok"] and in_time
        line = (f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  "
                f"[{took:.2f}s / limit {limit:g}s]{'  ' + state['detail'] if state['detail'] else ''}")
        if capsys is not None:
            with capsys.disabled():
                print("\n" + line)
        else:
            print(line)
        state["passed"] = passed
        state["in_time"] = in_time


def _finish(state):
    assert state["ok"], state["detail"]
    assert state["in_time"], "time limit exceeded"


def _rand_ratfunc(rng, t, max_deg=4):
    while True:
        num = sum((Fraction(rng.randint(-9, 9), rng.randint(1, 4)) * t ** k
                   for k in range(rng.randint(0, max_deg) + 1)), RatFunc.constant(0, "t"))
        if num.is_zero():
            continue
        den = sum((rng.randint(-3, 3) * t ** k for k in range(rng.randint(0, 2) + 1)),
                  RatFunc.constant(0, "t"))
        if den.is_zero():
            continue
        x = num / den
        if x.num.degree - x.den.degree <= max_deg:
            return x


def test_criterion_01_infinity_values(capsys):
    ctx = denef.DenefContext()
    with criterion(1, "Z_n at infinity for |n| <= 12", 30, capsys) as st:
        bad = []
        for n in range(-12, 13):
            z = denef.compute_Zn(ctx, n).value
            if n == 0:
                good = z.is_zero()
            else:
                good = (ord_t_inverse(z) == 0 and value_at_infinity(z) == n
                        and ord_t_inverse(z - n) > 0)
            if not good:
                bad.append(n)
        st["ok"] = not bad
        st["detail"] = f"25 values, failures {bad}" if bad else "25 values"
    _finish(st)


def test_criterion_02_mult_truth_table(capsys):
    ctx = denef.DenefContext()
    with criterion(2, "mult truth table |n|,|m| <= 5, |l| <= 25", 120, capsys) as st:
        cells = mism = 0
        for n in range(-5, 6):
            for m in range(-5, 6):
                for l in range(-25, 26):
                    cells += 1
                    if denef.mult_encoding_holds(ctx, n, m, l, method="exact") != (n * m == l):
                        mism += 1
        st["ok"] = mism == 0 and cells == 11 * 11 * 51
        st["detail"] = f"{cells} cells, {mism} mismatches"
    _finish(st)


def test_criterion_03_degree_parity(capsys):
    rng = random.Random(20240503)
    t = RatFunc.gen("t")
    with criterion(3, "deg of five squares = 2 max deg (500 tuples)", 10, capsys) as st:
        bad = 0
        for _ in range(500):
            X = [_rand_ratfunc(rng, t) for _ in range(5)]
            s = sum((x * x for x in X), RatFunc.constant(0, "t"))
            d = s.num.degree - s.den.degree
            if d != 2 * max(x.num.degree - x.den.degree for x in X) or d % 2:
                bad += 1
            denef.five_square_degree_check(X)
        st["ok"] = bad == 0
        st["detail"] = f"500 tuples, {bad} violations"
    _finish(st)


def test_criterion_04_combiners(capsys):
    rng = random.Random(4242)
    t = RatFunc.gen("t")
    zero = RatFunc.constant(0, "t")
    with criterion(4, "conjunction and disjunction combiners (500 samples)", 5, capsys) as st:
        bad = 0
        for _ in range(500):
            u = zero if rng.random() < 0.25 else _rand_ratfunc(rng, t, 3)
            v = zero if rng.random() < 0.25 else _rand_ratfunc(rng, t, 3)
            if (u * u + t * v * v).is_zero() != (u.is_zero() and v.is_zero()):
                bad += 1
            if (u * v).is_zero() != (u.is_zero() or v.is_zero()):
                bad += 1
        st["ok"] = bad == 0
        st["detail"] = f"500 samples, {bad} violations"
    _finish(st)


def test_criterion_05_valuation_claim(capsys):
    with criterion(5, "w_m claim and residues, m in 0..2, |n|,|r| <= 3", 300, capsys) as st:
        ctx = kimroush.KRContext()
        cells = kimroush.grid(ctx, range(0, 3), range(-3, 4), range(-3, 4))
        bad = [(c.m, c.n, c.r) for c in cells
               if not (c.wm_B == 1 and c.wm_A == 0 and c.residue_ok)]
        expected = sum(1 for m in range(3) for n in range(-3, 4) for r in range(-3, 4)
                       if n - m * r != 0)
        st["ok"] = not bad and len(cells) == expected
        st["detail"] = f"{len(cells)} cells, failures {bad}" if bad else f"{len(cells)} cells"
    _finish(st)


def test_criterion_06_zero_count(capsys):
    with criterion(6, "2s^2 simple zeros for s in {1,2}, r in {0,1,2}", 120, capsys) as st:
        got = {(s, r): kimroush.shifted_x_divisor(s, r) for s in (1, 2) for r in (0, 1, 2)}
        st["ok"] = all(d.zero_count == 2 * s * s and d.all_simple for (s, _), d in got.items())
        st["detail"] = " ".join(f"({s},{r})->{d.zero_count}" for (s, r), d in got.items())
    _finish(st)


def test_criterion_07_non_squares(capsys):
    with criterion(7, "x_{s,r} is not a square for s in {1,2}, r in {0,1}", 60, capsys) as st:
        ctx = kimroush.KRContext()
        squares = [(s, r) for s in (1, 2) for r in (0, 1)
                   if kimroush.is_square_in_residue(kimroush.residue_xsr(ctx, s, r))]
        st["ok"] = not squares
        st["detail"] = f"squares found: {squares}" if squares else "4 residues"
    _finish(st)


CORPUS = [
    ("x_minus_1", "x - 1", {"x": 1}),
    ("x_squared_minus_4", "x^2 - 4", {"x": 2}),
    ("xy_minus_6", "x*y - 6", {"x": 2, "y": 3}),
    ("circle_25", "x^2 + y^2 - 25", {"x": 3, "y": 4}),
]


def test_criterion_08_end_to_end(capsys):
    with criterion(8, "reduction corpus: witnesses verify, systems byte-stable", 60, capsys) as st:
        notes, ok = [], True
        for name, f, sigma in CORPUS:
            first = reducer.reduce(f)
            text = first.dumps()
            stable = text == reducer.reduce(f).dumps() == (GOLDEN / f"{name}.json").read_text()
            rep = reducer.verify_witness(first, reducer.build_witness(f, sigma, first))
            c = rep.counts()
            good = stable and rep.ok and c["fail"] == 0 and all(ok_ for _, ok_ in rep.semantic)
            ok = ok and good
            notes.append(f"{f}: pass={c['pass']} uncovered={c['uncovered']} "
                         f"semantic={sum(o for _, o in rep.semantic)}/{len(rep.semantic)}"
                         f"{'' if stable else ' UNSTABLE'}")
        st["ok"] = ok
        st["detail"] = "; ".join(notes)
    _finish(st)


def test_criterion_09_group_law(capsys):
    with criterion(9, "group law: 200 seeded checks on n(t,h), |n| <= 5", 60, capsys) as st:
        ctx = denef.DenefContext()
        E, h = ctx.curve, ctx.h
        P = ec.CurvePoint(h.lift(ctx.t), h)
        pts = {0: ec.O, 1: P}
        for n in range(2, 6):
            pts[n] = ec.add(E, pts[n - 1], P)
        for n in range(1, 6):
            pts[-n] = ec.neg(pts[n])
        rng = random.Random(9)
        bad = 0
        kinds = ("assoc", "comm", "identity", "inverse")
        for i in range(200):
            kind = kinds[i % 4]
            a, b, c = (rng.randint(-5, 5) for _ in range(3))
            p, q, r = pts[a], pts[b], pts[c]
            if kind == "assoc":
                good = ec.add(E, ec.add(E, p, q), r) == ec.add(E, p, ec.add(E, q, r))
            elif kind == "comm":
                good = ec.add(E, p, q) == ec.add(E, q, p)
            elif kind == "identity":
                good = ec.add(E, p, ec.O) == p == ec.add(E, ec.O, p)
            else:
                good = ec.add(E, p, ec.neg(p)) is ec.O
            bad += not good
        st["ok"] = bad == 0
        st["detail"] = f"200 checks, {bad} failures"
    _finish(st)


def test_criterion_10_series_sqrt(capsys):
    with criterion(10, "series_sqrt(1 + t + t^3) squares back mod t^8", 1, capsys) as st:
        s = LaurentSeries([Fraction(1), Fraction(1), Fraction(0), Fraction(1)], 0, 8, "t")
        r = series_sqrt(s)
        sq = r * r
        st["ok"] = sq.precision >= 8 and sq.dense(0, 8) == s.dense(0, 8)
        st["detail"] = str(r)
    _finish(st)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(pytest.main([__file__, "-q", "-s"]))
