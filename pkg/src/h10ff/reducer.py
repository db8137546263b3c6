"""Compile ``f(x_1, ..., x_k) = 0`` over Z into a polynomial system over Q(t).

Every integer ``n`` is carried by a *slot* variable holding ``Z_n``.  Each
slot gets an S-membership gadget (its value comes from a point of the form
``2Q`` or ``2Q + P1``); each internal node of ``f`` becomes an add or mult
gadget over slots; integer literals are built from ``P1`` by
double-and-add chains of add gadgets; the root becomes an equality.

Points are kept projectively on ``y^2 = x^3 + a D^2 x + b D^3``, which is
isomorphic to the twist ``D Y^2 = X^3 + aX + b`` via ``(X, Y) -> (DX, D^2 Y)``.
The complete addition law used below has no exceptional pairs on a curve
without rational 2-torsion, so the point at infinity, doubling and inverse
pairs need no case split.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import denef
from . import elliptic as ec
from .algebra.multipoly import MultiPoly, format_multipoly
from .algebra.multiratfunc import MultiRatFunc
from .algebra.poly import UniPoly, gcd_cofactors
from .algebra.ratfunc import RatFunc, ord_t_inverse
from .algebra.syntax import evaluate, format_tree, parse_multipoly, parse_tree, tree_vars
from .errors import NonIntegerCoefficient, WitnessSchemaError

TAGS = ("S-membership", "add", "mult", "com", "five-square", "combiner",
        "denominator-clearing", "equality")


# -- input ---------------------------------------------------------------------


@dataclass(frozen=True)
class ZPolynomial:
    tree: tuple
    variables: tuple

    def __str__(self):
        return format_tree(self.tree)


def _find_div(node):
    if node[0] == "div":
        return node
    for child in node[1:]:
        if isinstance(child, tuple):
            hit = _find_div(child)
            if hit is not None:
                return hit
    return None


def parse_zpoly(text):
    """Parse a polynomial with integer coefficients; any ``/`` is rejected."""
    tree = parse_tree(text)
    if _find_div(tree) is not None:
        raise NonIntegerCoefficient(f"division in {text.strip()!r}: coefficients must be integers")
    return ZPolynomial(tree, tuple(tree_vars(tree)))


# -- combiners -----------------------------------------------------------------


def _t_like(p):
    return MultiPoly.var("t", ("t",))


def conj_combine(p, q):
    """``p^2 + t q^2``: both vanish iff this does, over Q(t)."""
    return p * p + _t_like(p) * q * q


def disj_combine(p, q):
    """``p q``: one of them vanishes iff this does."""
    return p * q


def fold_tree(trees):
    """Nest ``conj_combine`` over syntax trees, balanced, without expanding."""
    if not trees:
        return ("num", 0)
    if len(trees) == 1:
        return trees[0]
    mid = (len(trees) + 1) // 2
    left, right = fold_tree(trees[:mid]), fold_tree(trees[mid:])
    return ("add", ("pow", left, 2), ("mul", ("var", "t"), ("pow", right, 2)))


# -- the complete addition law --------------------------------------------------


def complete_add(P, Q, a, b):
    """Projective sum on ``y^2 = x^3 + a x + b`` by a complete addition law.

    Works over any commutative ring; each output coordinate is bihomogeneous
    of degree (2, 2) in the inputs.
    """
    X1, Y1, Z1 = P
    X2, Y2, Z2 = Q
    b3 = 3 * b
    s = X1 * Z2 + X2 * Z1
    t0 = X1 * Y2 + X2 * Y1
    t1 = Y1 * Y2
    t2 = Y1 * Z2 + Y2 * Z1
    t3 = X1 * X2
    t4 = Z1 * Z2
    u = t1 - a * s - b3 * t4
    w = t1 + a * s + b3 * t4
    g = a * t3 + b3 * s - a * a * t4
    k = 3 * t3 + a * t4
    return (t0 * u - t2 * g, w * u + k * g, t2 * w + t0 * k)


def _cross(p, q):
    """All 2x2 minors of ``(p; q)``: they vanish iff ``p`` and ``q`` are proportional."""
    return (p[0] * q[1] - p[1] * q[0], p[0] * q[2] - p[2] * q[0], p[1] * q[2] - p[2] * q[1])


# -- the system ------------------------------------------------------------------


@dataclass
class Equation:
    poly: MultiPoly
    gadget: str
    slots: tuple

    def text(self):
        p = self.poly
        return format_multipoly(p.with_gens(sorted(p.used_gens())))


@dataclass
class EquationSystem:
    """Variables, tagged equations and the bookkeeping needed to build witnesses."""

    variables: list = field(default_factory=list)
    equations: list = field(default_factory=list)
    slots: dict = field(default_factory=dict)      # slot -> ("var", name) | ("const", c) | ("node", ...)
    gadgets: list = field(default_factory=list)    # (kind, slots, aux names)
    mult_checks: list = field(default_factory=list)
    root: tuple = ()                               # ("eq", a, b) or ("zero", a)
    folded: tuple | None = None

    def document(self):
        doc = {
            "variables": list(self.variables),
            "equations": [{"poly": e.text(), "gadget": e.gadget, "slots": list(e.slots)}
                          for e in self.equations],
        }
        if self.folded is not None:
            doc["folded"] = format_tree(self.folded)
        return doc

    def dumps(self):
        return json.dumps(self.document(), indent=2, ensure_ascii=True) + "\n"


class SystemBuilder:
    """Emits gadgets into an :class:`EquationSystem` with deterministic names."""

    def __init__(self, ctx=None):
        self.ctx = ctx or denef.DenefContext()
        self.sys = EquationSystem()
        self._known = set()
        self._n_add = 0
        self._n_mult = 0
        t = MultiPoly.var("t", ("t",))
        self.t = t
        self.D = t ** 3 + self.ctx.a * t + self.ctx.b
        self.A = self.ctx.a * self.D ** 2
        self.B = self.ctx.b * self.D ** 3
        self.P1 = (t * self.D, self.D ** 2, MultiPoly.const(1, ("t",)))

    def var(self, name):
        if name not in self._known:
            self._known.add(name)
            self.sys.variables.append(name)
        return MultiPoly.var(name, (name,))

    def eq(self, poly, gadget, slots):
        if gadget not in TAGS:
            raise ValueError(f"unknown gadget tag {gadget!r}")
        if not poly.is_zero():
            self.sys.equations.append(Equation(poly, gadget, tuple(slots)))

    def point(self, prefix, k):
        return tuple(self.var(f"{prefix}{c}_{k}") for c in "xyz")

    # gadgets ---------------------------------------------------------------

    def clear_denominators(self, expr, rhs, cert, slots):
        """``expr = rhs`` with ``expr`` a fraction: ``num - rhs den = 0`` and ``den w - 1 = 0``.

        Polynomial input (constant denominator) gives the single equation
        ``num - rhs den``.
        """
        if isinstance(expr, MultiRatFunc):
            num, den = expr.num, expr.den
        else:
            num, den = expr, MultiPoly.const(1, ())
        out = [num - rhs * den]
        if not den.is_constant():
            out.append(den * self.var(cert) - 1)
        for p in out:
            self.eq(p, "denominator-clearing", slots)
        return out

    def emit_S_membership_gadget(self, slot):
        """``slot = Z(P)`` with ``P = 2Q`` or ``P = 2Q + P1`` and ``Q`` on the curve."""
        k = len(self.sys.gadgets) + 1
        v = self.var(slot)
        q = self.point("q", k)
        d = self.point("d", k)
        e = self.point("e", k)
        p = self.point("p", k)
        s = self.var(f"s_{k}")
        A, B = self.A, self.B
        qx, qy, qz = q
        self.eq(qy * qy * qz - (qx ** 3 + A * qx * qz * qz + B * qz ** 3), "S-membership", [slot])
        for di, ci in zip(d, complete_add(q, q, A, B)):
            self.eq(di - ci, "S-membership", [slot])
        for ei, ci in zip(e, complete_add(d, self.P1, A, B)):
            self.eq(ei - ci, "S-membership", [slot])
        # P is projectively equal to 2Q (s = 0) or 2Q + P1 (s = 1)
        c = tuple(di + s * (ei - di) for di, ei in zip(d, e))
        for poly in _cross(p, c):
            self.eq(poly, "S-membership", [slot])
        self.eq(disj_combine(s, s - 1), "combiner", [slot])
        # Z = X / (t Y) on the twist is D x / (t y) here
        z = MultiRatFunc(self.D * p[0], self.t * p[1], gens=("t", f"px_{k}", f"py_{k}"))
        self.clear_denominators(z, v, f"w_{k}", [slot])
        aux = {"q": f"_{k}", "s": f"s_{k}", "w": f"w_{k}"}
        self.sys.gadgets.append(("S", (slot,), aux))
        return p

    def _slot_point(self, slot):
        for kind, slots, aux in self.sys.gadgets:
            if kind == "S" and slots[0] == slot:
                k = aux["q"]
                return tuple(MultiPoly.var(f"p{c}{k}", (f"p{c}{k}",)) for c in "xyz")
        raise KeyError(slot)

    def emit_add_gadget(self, v1, v2, v3):
        """``P(v1) + P(v2) = P(v3)`` as a projective identity."""
        self._n_add += 1
        j = self._n_add
        p1, p2, p3 = (self._slot_point(v) for v in (v1, v2, v3))
        r = self.point("r", j)
        slots = [v1, v2, v3]
        for ri, ci in zip(r, complete_add(p1, p2, self.A, self.B)):
            self.eq(ri - ci, "add", slots)
        for poly in _cross(p3, r):
            self.eq(poly, "add", slots)
        self.sys.gadgets.append(("add", tuple(slots), {"r": f"_{j}"}))

    def emit_mult_gadget(self, v1, v2, v3):
        """``Com(y)`` and ``(y - t)(v1 v2 - v3)^2 + 1 = X_1^2 + ... + X_5^2``."""
        self._n_mult += 1
        j = self._n_mult
        y, cx = self.var(f"cy_{j}"), self.var(f"cx_{j}")
        xs = [self.var(f"sq{i}_{j}") for i in range(1, 6)]
        a, b, c = (MultiPoly.var(v, (v,)) for v in (v1, v2, v3))
        slots = [v1, v2, v3]
        self.eq(y * y - (cx ** 3 - 4), "com", slots)
        z = a * b - c
        rhs = xs[0] * xs[0]
        for x in xs[1:]:
            rhs = rhs + x * x
        self.eq((y - self.t) * z * z + 1 - rhs, "five-square", slots)
        self.sys.gadgets.append(("mult", tuple(slots), {"j": j}))
        self.sys.mult_checks.append(tuple(slots))

    def emit_equality(self, a, b=None):
        if b is None:
            self.eq(MultiPoly.var(a, (a,)), "equality", [a])
        else:
            self.eq(MultiPoly.var(a, (a,)) - MultiPoly.var(b, (b,)), "equality", [a, b])


# -- compiling a tree -------------------------------------------------------------


class _Compiler:
    def __init__(self, builder):
        self.b = builder
        self.memo = {}
        self.n_nodes = 0

    def new_slot(self, name, role):
        self.b.var(name)
        self.b.sys.slots[name] = role
        self.b.emit_S_membership_gadget(name)
        return name

    def const(self, c):
        key = ("num", c)
        if key in self.memo:
            return self.memo[key]
        name = f"K_{c}" if c >= 0 else f"K_m{-c}"
        if c in (0, 1):
            self.new_slot(name, ("const", c))
            self.b.eq(MultiPoly.var(name, (name,)) - c, "equality", [name])
        elif c < 0:
            pos, zero = self.const(-c), self.const(0)
            self.new_slot(name, ("const", c))
            self.b.emit_add_gadget(name, pos, zero)
        elif c % 2:
            dbl, unit = self.const(c - 1), self.const(1)
            self.new_slot(name, ("const", c))
            self.b.emit_add_gadget(dbl, unit, name)
        else:
            half = self.const(c // 2)
            self.new_slot(name, ("const", c))
            self.b.emit_add_gadget(half, half, name)
        self.memo[key] = name
        return name

    def node(self, op, *children):
        self.n_nodes += 1
        return self.new_slot(f"N_{self.n_nodes}", ("node", op) + tuple(children))

    def slot(self, t):
        if t in self.memo:
            return self.memo[t]
        kind = t[0]
        if kind == "num":
            return self.const(t[1])
        if kind == "var":
            name = self.new_slot(f"Z_{t[1]}", ("var", t[1]))
        elif kind == "neg":
            a = self.slot(t[1])
            zero = self.const(0)
            name = self.node("neg", a)
            self.b.emit_add_gadget(name, a, zero)
        elif kind in ("add", "sub", "mul"):
            a, c = self.slot(t[1]), self.slot(t[2])
            name = self.node(kind, a, c)
            if kind == "add":
                self.b.emit_add_gadget(a, c, name)
            elif kind == "sub":
                self.b.emit_add_gadget(name, c, a)
            else:
                self.b.emit_mult_gadget(a, c, name)
        elif kind == "pow":
            name = self.power(self.slot(t[1]) if t[2] else None, t[2])
        else:
            raise NonIntegerCoefficient(f"unsupported node {kind!r}")
        self.memo[t] = name
        return name

    def power(self, base, k):
        if k == 0:
            return self.const(1)
        if k == 1:
            return base
        half = self.power(base, k // 2)
        sq = self.node("mul", half, half)
        self.b.emit_mult_gadget(half, half, sq)
        if k % 2 == 0:
            return sq
        out = self.node("mul", sq, base)
        self.b.emit_mult_gadget(sq, base, out)
        return out


def reduce(f, fold=False, ctx=None):
    """Compile ``f = 0`` (text or :class:`ZPolynomial`) into an :class:`EquationSystem`."""
    if isinstance(f, str):
        f = parse_zpoly(f)
    b = SystemBuilder(ctx)
    tree = f.tree
    trivial = not f.variables and evaluate(tree, {}) == 0
    if not trivial:
        comp = _Compiler(b)
        if tree[0] == "sub":
            left, right = comp.slot(tree[1]), comp.slot(tree[2])
            b.emit_equality(left, right)
            b.sys.root = ("eq", left, right)
        else:
            top = comp.slot(tree)
            b.emit_equality(top)
            b.sys.root = ("zero", top)
    if fold:
        b.sys.folded = fold_tree([parse_tree(e.text()) for e in b.sys.equations])
    return b.sys


# -- witnesses --------------------------------------------------------------------


@dataclass
class WitnessMap:
    values: dict
    integers: dict = field(default_factory=dict)   # slot -> n with value Z_n
    coverage: dict = field(default_factory=dict)   # equation index -> every variable assigned


def _node_value(role, ints):
    kind = role[0]
    if kind == "const":
        return role[1]
    op = role[1]
    args = [ints[s] for s in role[2:]]
    if op == "neg":
        return -args[0]
    if op == "add":
        return args[0] + args[1]
    if op == "sub":
        return args[0] - args[1]
    return args[0] * args[1]


def _ratfunc(x):
    return x if isinstance(x, RatFunc) else RatFunc.constant(x, "t")


def build_witness(f, sigma, system=None, ctx=None):
    """Exact values for every slot, point and clearing variable; mult gadgets keep
    their Com and five-square variables unassigned."""
    ctx = ctx or denef.DenefContext()
    if isinstance(f, str):
        f = parse_zpoly(f)
    missing = [v for v in f.variables if v not in sigma]
    if missing:
        raise WitnessSchemaError(f"no integer given for {missing}")
    for v in f.variables:
        if isinstance(sigma[v], bool) or not isinstance(sigma[v], int):
            raise WitnessSchemaError(f"value for {v} must be an integer, got {sigma[v]!r}")
    if system is None:
        system = reduce(f, ctx=ctx)
    ints = {}
    for slot, role in system.slots.items():   # insertion order: children first
        ints[slot] = sigma[role[1]] if role[0] == "var" else _node_value(role, ints)
    tp = UniPoly.gen("t")
    D = tp ** 3 + ctx.a * tp + ctx.b
    A, B = ctx.a * D * D, ctx.b * D ** 3
    one = UniPoly.constant(1, "t")
    P1 = (tp * D, D * D, one)
    polys = {}
    points = {}
    for kind, slots, aux in system.gadgets:
        if kind == "S":
            slot, k = slots[0], aux["q"]
            n = ints[slot]
            q = _projective(ctx, D, n // 2 if n % 2 == 0 else (n - 1) // 2)
            d = complete_add(q, q, A, B)
            e = complete_add(d, P1, A, B)
            p = _projective(ctx, D, n)
            for name, val in zip("qdep", (q, d, e, p)):
                for c, x in zip("xyz", val):
                    polys[f"{name}{c}{k}"] = x
            polys[aux["s"]] = UniPoly.constant(n % 2, "t")
            points[slot] = p
        elif kind == "add":
            r = complete_add(points[slots[0]], points[slots[1]], A, B)
            for c, x in zip("xyz", r):
                polys[f"r{c}{aux['r']}"] = x
    vals = {name: RatFunc(x) for name, x in polys.items()}
    for kind, slots, aux in system.gadgets:
        if kind == "S":
            py = polys[f"py{aux['q']}"]
            vals[aux["w"]] = RatFunc(one, tp * py)
            # D px / (t py) is Z_n; the clearing equation re-checks it
            vals[slots[0]] = denef.compute_Zn(ctx, ints[slots[0]]).value
    w = WitnessMap(vals, ints)
    for i, e in enumerate(system.equations):
        w.coverage[i] = all(g in vals for g in e.poly.used_gens() if g != "t")
    return w


def _projective(ctx, D, n):
    """``n P1`` on the scaled model with coprime polynomial coordinates; ``O = (0 : 1 : 0)``."""
    pt = denef.compute_Pn(ctx, n)
    if pt is ec.O:
        return (UniPoly.constant(0, "t"), UniPoly.constant(1, "t"), UniPoly.constant(0, "t"))
    L = _lcm(pt.X.den, pt.Y.den)
    return (D * pt.X.num * L.exact_quo(pt.X.den), D * D * pt.Y.num * L.exact_quo(pt.Y.den), L)


def _lcm(p, q):
    g, _, qc = gcd_cofactors(p, q)
    return p * qc


def _eval_poly(p, values):
    """``p`` at the given RatFunc values, over one common denominator (no gcds).

    Terms are grouped by their monomial in the non-``t`` variables so that each
    group costs one product of values.
    """
    gens = [g for g in p.used_gens() if g != "t"]
    env = {g: _ratfunc(values[g]) for g in gens}
    top = {g: p.degree(g) for g in gens}
    it = p.gens.index("t") if "t" in p.gens else None
    idx = [p.gens.index(g) for g in gens]
    groups = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in idx)
        k = e[it] if it is not None else 0
        groups.setdefault(key, {})[k] = c
    cache = {}

    def pw(g, which, k):
        key = (g, which, k)
        if key not in cache:
            v = env[g]
            cache[key] = (v.num if which == "n" else v.den) ** k
        return cache[key]

    total = None
    for key, coeffs in groups.items():
        deg = max(coeffs)
        term = UniPoly([coeffs.get(i, 0) for i in range(deg + 1)], "t")
        for g, k in zip(gens, key):
            if k:
                term = term * _t(pw(g, "n", k))
            if top[g] - k and not env[g].den.is_constant():
                term = term * _t(pw(g, "d", top[g] - k))
        total = term if total is None else total + term
    return total


def _t(p):
    return p if p.var == "t" else UniPoly(p.coeffs, "t")


def _is_zero(x):
    return x == 0 if not hasattr(x, "is_zero") else x.is_zero()


@dataclass
class VerifyReport:
    entries: list            # (index, gadget, slots, status) with status pass | fail | uncovered
    semantic: list           # (slots, ok) for mult gadgets: ord_{1/t}(v1 v2 - v3) > 0
    folded: str | None = None

    @property
    def ok(self):
        return (all(s != "fail" for *_, s in self.entries)
                and all(ok for _, ok in self.semantic) and self.folded != "fail")

    def counts(self):
        out = {"pass": 0, "fail": 0, "uncovered": 0}
        for *_, s in self.entries:
            out[s] += 1
        return out

    def lines(self):
        out = [f"eq {i} [{g}] {','.join(sl)}: {s}" for i, g, sl, s in self.entries]
        out += [f"mult {','.join(sl)}: ord(v1*v2 - v3) > 0 {'OK' if ok else 'FAIL'}"
                for sl, ok in self.semantic]
        if self.folded is not None:
            out.append(f"folded: {self.folded}")
        c = self.counts()
        out.append(f"summary: pass={c['pass']} fail={c['fail']} uncovered={c['uncovered']} "
                   f"semantic={sum(ok for _, ok in self.semantic)}/{len(self.semantic)} "
                   f"{'OK' if self.ok else 'FAIL'}")
        return out


def verify_witness(system, witness):
    """Substitute assigned values into each equation and check it exactly."""
    values = witness.values if isinstance(witness, WitnessMap) else dict(witness)
    entries = []
    for i, e in enumerate(system.equations):
        used = [g for g in e.poly.used_gens() if g != "t"]
        if not all(g in values for g in used):
            entries.append((i, e.gadget, e.slots, "uncovered"))
            continue
        ok = _is_zero(_eval_poly(e.poly, values))
        entries.append((i, e.gadget, e.slots, "pass" if ok else "fail"))
    semantic = []
    for slots in system.mult_checks:
        if all(s in values for s in slots):
            a, b, c = (values[s] for s in slots)
            semantic.append((slots, ord_t_inverse(a * b - c) > 0))
    folded = None
    if system.folded is not None:
        names = tree_vars(system.folded)
        if all(n in values or n == "t" for n in names):
            env = dict(values)
            env["t"] = RatFunc.gen("t")
            folded = "pass" if _ratfunc(evaluate(system.folded, env)).is_zero() else "fail"
        else:
            folded = "uncovered"
    return VerifyReport(entries, semantic, folded)


def load_sigma(text):
    """Parse a witness file: a JSON object mapping variable names to integers."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WitnessSchemaError(f"witness is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise WitnessSchemaError("witness must be a JSON object of name -> integer")
    for k, v in data.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise WitnessSchemaError(f"value for {k!r} must be an integer")
    return data


def system_from_document(doc):
    """Rebuild the equation list of a serialized system (for inspection and re-checking)."""
    try:
        variables = list(doc["variables"])
        eqs = [Equation(parse_multipoly(e["poly"]), e["gadget"], tuple(e["slots"]))
               for e in doc["equations"]]
    except (KeyError, TypeError) as exc:
        raise WitnessSchemaError(f"malformed system document: {exc}") from None
    sys_ = EquationSystem(variables=variables, equations=eqs)
    if "folded" in doc:
        sys_.folded = parse_tree(doc["folded"])
    return sys_

