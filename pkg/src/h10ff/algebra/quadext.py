"""Quadratic extensions ``Base[h] / (h^2 - D)``.

Elements are ``a + b*h`` with ``a, b`` in the base field.  The base may
itself be a quadratic extension, which is how the tower
Q(t1, t2)(h1)(h2) is built.  Elements of one extension share the same
``D`` object; anything else is treated as a base-field scalar.
"""

from __future__ import annotations

from ..errors import DegenerateExtension, DivisionByZero


class QuadExt:
    __slots__ = ("a", "b", "D", "gen")

    def __init__(self, a, b, D, gen="h"):
        self.a = a
        self.b = b
        self.D = D
        self.gen = gen

    def _same_ext(self, other):
        return isinstance(other, QuadExt) and (other.D is self.D or
                                               (other.gen == self.gen and other.D == self.D))

    def _coerce(self, other):
        if self._same_ext(other):
            return other
        return QuadExt(other, self.a * 0, self.D, self.gen)

    def lift(self, x):
        """Embed a base-field element (or int) in this extension."""
        return QuadExt(x if not isinstance(x, int) else self.a * 0 + x, self.a * 0, self.D, self.gen)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def in_base(self):
        return self.b == 0

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self.D, self.gen)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.D, self.gen)

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a - o.a, self.b - o.b, self.D, self.gen)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not self._same_ext(other):
            if isinstance(other, QuadExt) or not _is_scalar(other):
                other = self._coerce(other)
            else:
                return QuadExt(self.a * other, self.b * other, self.D, self.gen)
        a, b, c, d = self.a, self.b, other.a, other.b
        if b == 0:
            return QuadExt(a * c, a * d, self.D, self.gen)
        if d == 0:
            return QuadExt(a * c, b * c, self.D, self.gen)
        return QuadExt(a * c + b * d * self.D, a * d + b * c, self.D, self.gen)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadExt(self.a, -self.b, self.D, self.gen)

    def norm(self):
        """a^2 - b^2 D, an element of the base field."""
        return self.a * self.a - self.b * self.b * self.D

    def inverse(self):
        return quadext_inv(self)

    def __truediv__(self, other):
        if not self._same_ext(other) and not isinstance(other, QuadExt) and _is_scalar(other):
            if other == 0:
                raise DivisionByZero("division by zero")
            return QuadExt(self.a / other, self.b / other, self.D, self.gen)
        return self * quadext_inv(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * quadext_inv(self)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return quadext_inv(self) ** (-n)
        result = self.lift(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if self._same_ext(other):
            return self.a == other.a and self.b == other.b
        if isinstance(other, QuadExt) and other.gen != self.gen:
            # other lives in our base field
            return self.b == 0 and self.a == other
        try:
            return self.b == 0 and self.a == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QuadExt({self})"

    def __str__(self):
        return format_quadext(self)


def _is_scalar(x):
    from fractions import Fraction
    return isinstance(x, (int, Fraction))


def quadext_inv(e):
    """``(a + b h)^-1 = (a - b h) / (a^2 - b^2 D)``."""
    if e.is_zero():
        raise DivisionByZero("inverse of zero in quadratic extension")
    if e.b == 0:
        return QuadExt(1 / e.a, e.b, e.D, e.gen)
    n = e.norm()
    if n == 0:
        raise DegenerateExtension(f"a^2 - b^2 D vanished; {e.gen}^2 = {e.D} is a square")
    inv = 1 / n
    return QuadExt(e.a * inv, -e.b * inv, e.D, e.gen)


def format_quadext(e):
    parts = []
    if e.a != 0:
        parts.append(str(e.a))
    if e.b != 0:
        bs = str(e.b)
        if bs == "1":
            parts.append(e.gen)
        elif bs == "-1":
            parts.append(f"-{e.gen}")
        else:
            parts.append(f"({bs})*{e.gen}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out
