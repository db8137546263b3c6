"""Text syntax shared by every module.

Integer or rational literals, identifiers ``[a-zA-Z][a-zA-Z0-9_']*``, the
operators ``+ - * ^ /`` and parentheses.  Parsing yields a small tuple tree
which :func:`evaluate` folds into any ring that supports the operators.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import PolySyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_']*)|(\S))")

# tree nodes: ("num", int) ("var", name) ("neg", x) ("add", x, y) ("sub", x, y)
# ("mul", x, y) ("div", x, y) ("pow", x, k)


def tokenize(text):
    text = text.replace("−", "-").replace("·", "*")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() == "-":
                tok = self.take()
                raise PolySyntaxError("negative exponents are not allowed", tok[2])
            tok = self.take("num") if self.peek() == "num" else None
            if tok is None:
                bad = self.toks[self.i]
                raise PolySyntaxError("exponent must be a nonnegative integer", bad[2])
            base = ("pow", base, tok[1])
        return base

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "num":
            self.i += 1
            return ("num", val)
        if kind == "id":
            self.i += 1
            return ("var", val)
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"unexpected {what}", pos)


def parse_tree(text):
    p = _Parser(text)
    if p.peek() == "end":
        raise PolySyntaxError("empty expression", 0)
    node = p.expr()
    if p.peek() != "end":
        tok = p.toks[p.i]
        raise PolySyntaxError(f"unexpected {tok[1]!r}", tok[2])
    return node


def tree_vars(node, acc=None):
    """Variables in order of first appearance."""
    if acc is None:
        acc = []
    kind = node[0]
    if kind == "var":
        if node[1] not in acc:
            acc.append(node[1])
    elif kind in ("neg",):
        tree_vars(node[1], acc)
    elif kind == "pow":
        tree_vars(node[1], acc)
    elif kind != "num":
        tree_vars(node[1], acc)
        tree_vars(node[2], acc)
    return acc


def evaluate(node, env):
    """Fold a tree; ``env`` maps names to ring elements, literals become Fractions."""
    kind = node[0]
    if kind == "num":
        return Fraction(node[1])
    if kind == "var":
        try:
            return env[node[1]]
        except KeyError:
            raise PolySyntaxError(f"unknown variable {node[1]!r}") from None
    if kind == "neg":
        return -evaluate(node[1], env)
    if kind == "pow":
        return evaluate(node[1], env) ** node[2]
    a = evaluate(node[1], env)
    b = evaluate(node[2], env)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    return a / b


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4, "num": 5, "var": 5}


def format_tree(node):
    """Print with the fewest parentheses that re-parse to the same tree."""
    kind = node[0]
    if kind == "num":
        return str(node[1])
    if kind == "var":
        return node[1]
    if kind == "neg":
        inner = node[1]
        s = format_tree(inner)
        return f"-{s}" if _PREC[inner[0]] >= 3 else f"-({s})"
    if kind == "pow":
        inner = node[1]
        s = format_tree(inner)
        if _PREC[inner[0]] < 5:
            s = f"({s})"
        return f"{s}^{node[2]}"
    op = {"add": " + ", "sub": " - ", "mul": "*", "div": " / "}[kind]
    p = _PREC[kind]
    left = format_tree(node[1])
    if _PREC[node[1][0]] < p:
        left = f"({left})"
    right = format_tree(node[2])
    # left-associative: an equal-precedence right operand needs parentheses
    rp = _PREC[node[2][0]]
    if rp <= p or (node[2][0] == "neg" and kind in ("add", "sub")):
        right = f"({right})"
    return f"{left}{op}{right}"


# -- typed front ends ----------------------------------------------------------


def parse_ratfunc(text, var="t"):
    """Parse an element of Q(var)."""
    from .ratfunc import RatFunc
    tree = parse_tree(text)
    for v in tree_vars(tree):
        if v != var:
            raise PolySyntaxError(f"unexpected variable {v!r} (expected {var!r})")
    return _as_ratfunc(evaluate(tree, {var: RatFunc.gen(var)}), var)


def _as_ratfunc(x, var):
    from .ratfunc import RatFunc
    if isinstance(x, RatFunc):
        return x
    return RatFunc.constant(x, var)


def parse_multiratfunc(text, gens=("t1", "t2")):
    from .multiratfunc import MultiRatFunc
    tree = parse_tree(text)
    env = {g: MultiRatFunc.var(g, gens) for g in gens}
    x = evaluate(tree, env)
    if not isinstance(x, MultiRatFunc):
        x = MultiRatFunc.constant(x, gens)
    return x


def parse_multipoly(text, gens=None):
    """Parse a polynomial (no division by non-constants) in the given or discovered generators."""
    from .multipoly import MultiPoly
    tree = parse_tree(text)
    if gens is None:
        gens = tuple(sorted(tree_vars(tree)))
    env = {g: MultiPoly.var(g, gens) for g in gens}
    x = evaluate(tree, env)
    if not isinstance(x, MultiPoly):
        x = MultiPoly.const(x, gens)
    return x
