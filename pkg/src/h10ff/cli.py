"""Command-line front end: ``h10ff <subcommand> [options]``.

Every subcommand exits 0 exactly when all of its checks pass.  ``--format
json`` prints one JSON object per line carrying the same fields as the text
lines.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import denef, kimroush, reducer
from .algebra.ratfunc import RatFunc, value_at_infinity
from .algebra.series import LaurentSeries, series_sqrt
from .errors import CapExceeded, H10Error

MAX_ZN = 64
MAX_MULT_BOUND = 5
MAX_ADD_BOUND = 16
MAX_KR = 4
DIVISOR_SCALES = (1, 2)
DIVISOR_SHIFTS = (0, 1, 2)


def parse_range(text):
    """``"lo:hi"`` (inclusive) or a single integer; ``lo > hi`` is empty."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return range(int(lo), int(hi) + 1)
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo:hi' or an integer, got {text!r}") from None
    return range(n, n + 1)


def _cap(values, limit, what):
    for v in values:
        if abs(v) > limit:
            raise CapExceeded(f"{what} = {v} exceeds the cap {limit}")


class Report:
    def __init__(self, fmt, out):
        self.fmt = fmt
        self.out = out
        self.ok = True

    def line(self, text, ok=True, **fields):
        self.ok = self.ok and ok
        if self.fmt == "json":
            fields.setdefault("ok", ok)
            self.out.write(json.dumps(fields, sort_keys=True) + "\n")
        else:
            self.out.write(text + "\n")


# -- subcommands ------------------------------------------------------------------


def cmd_zn(args, rep):
    ns = args.n_range if args.n_range is not None else range(-3, 4)
    _cap(ns, MAX_ZN, "|n|")
    ctx = denef.DenefContext(args.a, args.b)
    for n in ns:
        z = denef.compute_Zn(ctx, n)
        if n == 0:
            ok = z.value.is_zero()
            rep.line(f"{z}", ok, n=n, Z=str(z.value))
            continue
        ok = denef.check_infinity_value(ctx, n)
        v = value_at_infinity(z.value)
        rep.line(f"{z}  value_at_infinity = {v}: {'OK' if ok else 'FAIL'}", ok,
                 n=n, Z=str(z.value), value_at_infinity=str(v))


def cmd_mult_table(args, rep):
    bound = args.bound if args.bound is not None else 2
    if not 0 <= bound <= MAX_MULT_BOUND:
        raise CapExceeded(f"bound = {bound} exceeds the cap {MAX_MULT_BOUND}")
    ctx = denef.DenefContext(args.a, args.b)
    cells = bad = 0
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            for l in range(-bound * bound, bound * bound + 1):
                got = denef.mult_encoding_holds(ctx, n, m, l, method=args.method)
                cells += 1
                if got != (n * m == l):
                    bad += 1
                    rep.line(f"n={n} m={m} l={l}: holds={got} expected={n * m == l}: FAIL",
                             False, n=n, m=m, l=l, holds=got)
    rep.line(f"mult-table bound={bound} cells={cells} mismatches={bad}: "
             f"{'OK' if not bad else 'FAIL'}", not bad, bound=bound, cells=cells, mismatches=bad)


def cmd_add_check(args, rep):
    bound = args.bound if args.bound is not None else 3
    if not 0 <= bound <= MAX_ADD_BOUND:
        raise CapExceeded(f"bound = {bound} exceeds the cap {MAX_ADD_BOUND}")
    ctx = denef.DenefContext(args.a, args.b)
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            try:
                denef.add_encoding_witness(ctx, n, m)
                ok = True
            except AssertionError:
                ok = False
            rep.line(f"P_{n} + P_{m} = P_{n + m}: {'OK' if ok else 'FAIL'}", ok, n=n, m=m)


def cmd_kr_claims(args, rep):
    ms = args.m_range if args.m_range is not None else range(0, 2)
    nr = args.nr_range if args.nr_range is not None else range(-2, 3)
    _cap(ms, MAX_KR, "|m|")
    _cap(nr, MAX_KR, "|n|, |r|")
    ctx = kimroush.KRContext(args.a, args.b)
    for cell in kimroush.grid(ctx, ms, nr, nr):
        if rep.fmt == "json":
            rep.line("", cell.ok(), **json.loads(cell.json()))
        else:
            rep.line(cell.text(), cell.ok())
    if not len(ms) or not len(nr):
        return
    for s in DIVISOR_SCALES:
        counts = [kimroush.shifted_x_divisor(s, r, args.a, args.b) for r in DIVISOR_SHIFTS]
        ok = all(c.zero_count == 2 * s * s and c.all_simple for c in counts)
        rep.line(f"2s² = {2 * s * s} (s={s}): {'OK' if ok else 'FAIL'}", ok,
                 s=s, expected=2 * s * s, counts=[c.zero_count for c in counts],
                 simple=[c.all_simple for c in counts])


def _read_source(text):
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return fh.read().strip()
    return text


def cmd_reduce(args, rep):
    system = reducer.reduce(_read_source(args.source), fold=args.fold,
                            ctx=denef.DenefContext(args.a, args.b))
    rep.out.write(system.dumps())


def cmd_verify(args, rep):
    src = _read_source(args.source)
    with open(args.witness, encoding="utf-8") as fh:
        sigma = reducer.load_sigma(fh.read())
    ctx = denef.DenefContext(args.a, args.b)
    system = reducer.reduce(src, fold=args.fold, ctx=ctx)
    w = reducer.build_witness(src, sigma, system, ctx=ctx)
    report = reducer.verify_witness(system, w)
    if rep.fmt == "json":
        for i, g, slots, status in report.entries:
            rep.line("", status != "fail", equation=i, gadget=g, slots=list(slots), status=status)
        for slots, ok in report.semantic:
            rep.line("", ok, mult=list(slots), semantic=ok)
        rep.line("", report.ok, summary=report.counts(), folded=report.folded)
    else:
        for text in report.lines():
            rep.line(text)
        rep.ok = rep.ok and report.ok


def cmd_selftest(args, rep):
    """A fast pass over every module."""
    rng = random.Random(args.seed)
    ctx = denef.DenefContext(args.a, args.b)
    ok = all(denef.check_infinity_value(ctx, n) for n in range(-3, 4))
    rep.line(f"Z_n at infinity, |n| <= 3: {'OK' if ok else 'FAIL'}", ok, check="zn")
    ok = all(denef.mult_encoding_holds(ctx, n, m, l, method="infinity") == (n * m == l)
             for n in range(-1, 2) for m in range(-1, 2) for l in range(-1, 2))
    rep.line(f"mult encoding, bound 1: {'OK' if ok else 'FAIL'}", ok, check="mult")
    s = LaurentSeries([Fraction(1), Fraction(1), Fraction(0), Fraction(1)], 0, 8)
    r = series_sqrt(s)
    ok = (r * r) == s
    rep.line(f"series sqrt squares back: {'OK' if ok else 'FAIL'}", ok, check="series")
    t = RatFunc.gen("t")
    ok = True
    for _ in range(20):
        u = RatFunc.constant(rng.randint(-3, 3), "t") + rng.randint(-3, 3) * t
        v = RatFunc.constant(rng.randint(-3, 3), "t") + rng.randint(-3, 3) * t * t
        ok &= ((u * u + t * v * v).is_zero() == (u.is_zero() and v.is_zero()))
        ok &= ((u * v).is_zero() == (u.is_zero() or v.is_zero()))
    rep.line(f"combiners on 20 samples (seed {args.seed}): {'OK' if ok else 'FAIL'}", ok,
             check="combiners")
    if (args.a, args.b) == (1, 1):
        c = kimroush.shifted_x_divisor(1, 0)
        ok = c.zero_count == 2 and c.all_simple
        rep.line(f"2s² = 2 (s=1): {'OK' if ok else 'FAIL'}", ok, check="divisor")
    system = reducer.reduce("x - 1", ctx=ctx)
    report = reducer.verify_witness(system, reducer.build_witness("x - 1", {"x": 1}, system, ctx))
    rep.line(f"reduce x - 1 with x = 1: {'OK' if report.ok else 'FAIL'}", report.ok,
             check="reduce")


COMMANDS = {
    "zn": cmd_zn, "mult-table": cmd_mult_table, "add-check": cmd_add_check,
    "kr-claims": cmd_kr_claims, "reduce": cmd_reduce, "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=Fraction, default=Fraction(1), help="curve coefficient a")
    common.add_argument("--b", type=Fraction, default=Fraction(1), help="curve coefficient b")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--out", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="h10ff", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    z = sub.add_parser("zn", parents=[common], help="Z_n and its value at infinity")
    z.add_argument("--n-range", "--nr-range", dest="n_range", type=parse_range,
                   help="lo:hi, default -3:3")
    mt = sub.add_parser("mult-table", parents=[common], help="the multiplication truth table")
    mt.add_argument("--bound", type=int)
    mt.add_argument("--method", choices=("exact", "infinity"), default="exact")
    ad = sub.add_parser("add-check", parents=[common], help="P_n + P_m = P_(n+m)")
    ad.add_argument("--bound", type=int)
    kr = sub.add_parser("kr-claims", parents=[common], help="valuation and divisor claims")
    kr.add_argument("--m-range", type=parse_range, help="lo:hi, default 0:1")
    kr.add_argument("--nr-range", type=parse_range, help="lo:hi for n and r, default -2:2")
    for name, helptext in (("reduce", "compile f = 0 to a system over Q(t)"),
                           ("verify", "check a witness against the compiled system")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("source", help="polynomial text or a file containing it")
        if name == "verify":
            sp.add_argument("witness", help='JSON file such as {"x": 2}')
        sp.add_argument("--fold", action="store_true", help="also fold the system to one equation")
    sub.add_parser("selftest", parents=[common], help="quick check of every module")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    rep = Report(args.format, out)
    try:
        COMMANDS[args.command](args, rep)
    except (H10Error, ValueError) as exc:
        print(f"h10ff {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"h10ff {args.command}: {exc}", file=sys.stderr)
        return 2
    finally:
        if out is not sys.stdout:
            out.close()
    return 0 if rep.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
