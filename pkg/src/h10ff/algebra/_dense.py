"""Dense integer polynomial kernel.

Univariate polynomials are lists of ints, lowest degree first, with no
trailing zeros (``[]`` is zero).  A multivariate polynomial at level ``u``
is a list of level ``u - 1`` polynomials in the outermost variable; level 0
is a plain int.  Everything above this module converts to and from these
shapes for the expensive operations (products, exact division, gcd).
"""

from __future__ import annotations

from math import gcd as igcd
from math import isqrt

try:  # GMP multiplies huge integers much faster than CPython's Karatsuba
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - optional accelerator
    _mpz = None

_GMP_MIN_BITS = 4096

_KRONECKER_MIN = 40  # below this many terms schoolbook wins
_HEU_TRIES = 6


class HeuristicGCDFailed(Exception):
    pass


# ---------------------------------------------------------------------------
# univariate


def strip(f):
    while f and not f[-1]:
        f.pop()
    return f


def add(f, g):
    if len(f) < len(g):
        f, g = g, f
    h = list(f)
    for i, c in enumerate(g):
        h[i] += c
    return strip(h)


def sub(f, g):
    h = list(f)
    if len(h) < len(g):
        h.extend([0] * (len(g) - len(h)))
    for i, c in enumerate(g):
        h[i] -= c
    return strip(h)


def neg(f):
    return [-c for c in f]


def scale(f, c):
    if not c:
        return []
    return [c * a for a in f]


def quo_int(f, c):
    return [a // c for a in f]


def max_norm(f):
    return max((abs(c) for c in f), default=0)


def _pack(f, k):
    """Pack nonnegative ints ``f`` into one int with ``k``-byte slots."""
    return int.from_bytes(b"".join(c.to_bytes(k, "little") for c in f), "little")


def _kronecker_mul(f, g):
    bound = max_norm(f) * max_norm(g) * min(len(f), len(g))
    k = (bound.bit_length() + 2 + 7) // 8
    fp = [c if c > 0 else 0 for c in f]
    fn = [-c if c < 0 else 0 for c in f]
    gp = [c if c > 0 else 0 for c in g]
    gn = [-c if c < 0 else 0 for c in g]
    F = _pack(fp, k) - _pack(fn, k)
    G = _pack(gp, k) - _pack(gn, k)
    if _mpz is not None and F.bit_length() > _GMP_MIN_BITS:
        H = int(_mpz(F) * _mpz(G))
    else:
        H = F * G
    n = len(f) + len(g) - 1
    half = 1 << (8 * k - 1)
    # shift every slot into [0, 2^(8k)) so the bytes can be read unsigned
    offset = _pack([half] * n, k)
    raw = (H + offset).to_bytes(n * k + 1, "little")
    out = [int.from_bytes(raw[i * k:(i + 1) * k], "little") - half for i in range(n)]
    return strip(out)


def mul(f, g):
    if not f or not g:
        return []
    if len(f) < _KRONECKER_MIN or len(g) < _KRONECKER_MIN:
        h = [0] * (len(f) + len(g) - 1)
        for i, a in enumerate(f):
            if a:
                for j, b in enumerate(g):
                    h[i + j] += a * b
        return strip(h)
    return _kronecker_mul(f, g)


def sqr(f):
    return mul(f, f)


def power(f, n):
    result = [1]
    base = f
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = sqr(base)
    return result


def deriv(f):
    return strip([i * c for i, c in enumerate(f)][1:])


def evaluate(f, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def content(f):
    g = 0
    for c in f:
        g = igcd(g, c)
        if g == 1:
            break
    return g


def primitive(f):
    """Return ``(c, p)`` with ``f = c * p`` and ``p`` having positive leading coefficient."""
    if not f:
        return 0, []
    c = content(f)
    if f[-1] < 0:
        c = -c
    return c, [a // c for a in f]


def exact_div(f, g):
    """Quotient ``f / g`` in Z[x], or None when ``g`` does not divide ``f``."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return None
    r = list(f)
    lc = g[-1]
    q = [0] * (df - dg + 1)
    for i in range(df - dg, -1, -1):
        c = r[i + dg]
        if c:
            qc, rem = divmod(c, lc)
            if rem:
                return None
            q[i] = qc
            for j, b in enumerate(g):
                r[i + j] -= qc * b
    if any(r[:dg]):
        return None
    return q


def pseudo_rem(f, g):
    """prem(f, g) = lc(g)^(df-dg+1) f mod g, computed in Z[x]."""
    r = list(f)
    dg = len(g) - 1
    lc = g[-1]
    k = len(r) - 1 - dg + 1
    while len(r) - 1 >= dg and r:
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [lc * a for a in r]
        for j, b in enumerate(g):
            r[shift + j] -= c * b
        strip(r)
        k -= 1
    if k > 0:
        r = [a * lc ** k for a in r]
    return r


def divmod_rational(f, g):
    """Pseudo-division ``d * f = q * g + r`` with ``d = lc(g)**(df - dg + 1)``."""
    dg = len(g) - 1
    df = len(f) - 1
    if df < dg:
        return [], list(f), 1
    lc = g[-1]
    e = df - dg + 1
    r = [a * lc ** e for a in f]
    q = [0] * e
    for i in range(df - dg, -1, -1):
        c = r[i + dg]
        if c:
            qc = c // lc
            q[i] = qc
            for j, b in enumerate(g):
                r[i + j] -= qc * b
    return strip(q), strip(r[:dg] if dg else []), lc ** e


def _interpolate(h, x):
    out = []
    half = x // 2
    while h:
        g = h % x
        if g > half:
            g -= x
        out.append(g)
        h = (h - g) // x
    if out and out[-1] < 0:
        out = neg(out)
    return out


def _heu_gcd(f, g):
    cont = igcd(content(f), content(g))
    f = quo_int(f, cont)
    g = quo_int(g, cont)
    if len(f) == 1 or len(g) == 1:
        return [cont], f, g
    f_norm, g_norm = max_norm(f), max_norm(g)
    B = 2 * min(f_norm, g_norm) + 29
    x = max(min(B, 99 * isqrt(B)),
            2 * min(f_norm // abs(f[-1]), g_norm // abs(g[-1])) + 2)
    for _ in range(_HEU_TRIES):
        ff = evaluate(f, x)
        gg = evaluate(g, x)
        if ff and gg:
            hh = igcd(ff, gg)
            cff_v, cfg_v = ff // hh, gg // hh
            h = primitive(_interpolate(hh, x))[1]
            cff = exact_div(f, h)
            if cff is not None:
                cfg = exact_div(g, h)
                if cfg is not None:
                    return scale(h, cont), cff, cfg
            cff = _interpolate(cff_v, x)
            h = exact_div(f, cff) if cff else None
            if h is not None:
                cfg = exact_div(g, h)
                if cfg is not None:
                    return scale(h, cont), cff, cfg
            cfg = _interpolate(cfg_v, x)
            h = exact_div(g, cfg) if cfg else None
            if h is not None:
                cff = exact_div(f, h)
                if cff is not None:
                    return scale(h, cont), cff, cfg
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


def _prs_gcd(f, g):
    cf, pf = primitive(f)
    cg, pg = primitive(g)
    c = igcd(cf, cg)
    a, b = (pf, pg) if len(pf) >= len(pg) else (pg, pf)
    while b:
        r = pseudo_rem(a, b)
        a, b = b, (primitive(r)[1] if r else [])
    h = primitive(a)[1]
    return scale(h, c)


def gcd(f, g):
    """Return ``(h, cff, cfg)``: ``h`` = gcd in Z[x] with positive lc, ``f = h*cff``, ``g = h*cfg``."""
    if not f and not g:
        return [], [], []
    if not f:
        sign = -1 if g[-1] < 0 else 1
        return scale(g, sign), [], [sign]
    if not g:
        sign = -1 if f[-1] < 0 else 1
        return scale(f, sign), [sign], []
    if len(f) == 1 or len(g) == 1:
        c = igcd(content(f), content(g))
        return [c], quo_int(f, c), quo_int(g, c)
    try:
        return _heu_gcd(f, g)
    except HeuristicGCDFailed:
        h = _prs_gcd(f, g)
        return h, exact_div(f, h), exact_div(g, h)


def is_coprime_mod(f, g, p):
    """True only if gcd(f mod p, g mod p) is constant and p keeps both degrees.

    A True answer certifies gcd over Q is 1; False is inconclusive.
    """
    if f[-1] % p == 0 or g[-1] % p == 0:
        return False
    a = [c % p for c in f]
    b = [c % p for c in g]
    while len(b) > 1:
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            shift = len(a) - 1 - db
            for j in range(db + 1):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                return False
        a, b = b, a
    return len(b) == 1 and b[0] != 0


# ---------------------------------------------------------------------------
# recursive multivariate (level u >= 1 means a list of level u-1 items)


def n_zero(u):
    return [] if u else 0


def n_is_zero(f, u):
    return not f


def n_strip(f, u):
    while f and n_is_zero(f[-1], u - 1):
        f.pop()
    return f


def n_add(f, g, u):
    if not u:
        return f + g
    if len(f) < len(g):
        f, g = g, f
    h = list(f)
    for i, c in enumerate(g):
        h[i] = n_add(h[i], c, u - 1)
    return n_strip(h, u)


def n_neg(f, u):
    if not u:
        return -f
    return [n_neg(c, u - 1) for c in f]


def n_sub(f, g, u):
    return n_add(f, n_neg(g, u), u)


def n_scale(f, c, u):
    if not u:
        return f * c
    if not c:
        return []
    return [n_scale(a, c, u - 1) for a in f]


def n_quo_int(f, c, u):
    if not u:
        return f // c
    return [n_quo_int(a, c, u - 1) for a in f]


def n_mul(f, g, u):
    if not u:
        return f * g
    if u == 1:
        return mul(f, g)
    if not f or not g:
        return []
    h = [[] for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    h[i + j] = n_add(h[i + j], n_mul(a, b, u - 1), u - 1)
    return n_strip(h, u)


def n_max_norm(f, u):
    if not u:
        return abs(f)
    return max((n_max_norm(c, u - 1) for c in f), default=0)


def n_int_content(f, u):
    if not u:
        return abs(f)
    g = 0
    for c in f:
        g = igcd(g, n_int_content(c, u - 1))
        if g == 1:
            break
    return g


def n_ground_lc(f, u):
    while u:
        f = f[-1]
        u -= 1
    return f


def n_eval_outer(f, x, u):
    """Substitute the outermost variable by the integer ``x``."""
    acc = n_zero(u - 1)
    for c in reversed(f):
        acc = n_add(n_scale(acc, x, u - 1), c, u - 1)
    return acc


def n_trunc(f, x, u):
    if not u:
        g = f % x
        return g - x if g > x // 2 else g
    return n_strip([n_trunc(c, x, u - 1) for c in f], u)


def n_exact_div(f, g, u):
    if not u:
        q, r = divmod(f, g)
        return None if r else q
    if u == 1:
        return exact_div(f, g)
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return None
    r = list(f)
    lc = g[-1]
    q = [n_zero(u - 1)] * (df - dg + 1)
    for i in range(df - dg, -1, -1):
        c = r[i + dg]
        if not n_is_zero(c, u - 1):
            qc = n_exact_div(c, lc, u - 1)
            if qc is None:
                return None
            q[i] = qc
            for j, b in enumerate(g):
                r[i + j] = n_sub(r[i + j], n_mul(qc, b, u - 1), u - 1)
    if any(not n_is_zero(c, u - 1) for c in r[:dg]):
        return None
    return n_strip(q, u)


def _n_interpolate(h, x, v):
    out = []
    while not n_is_zero(h, v):
        g = n_trunc(h, x, v)
        out.append(g)
        h = n_quo_int(n_sub(h, g, v), x, v)
    if out and n_ground_lc(out, v + 1) < 0:
        out = n_neg(out, v + 1)
    return out


def _n_heu_gcd(f, g, u):
    if u == 1:
        return _heu_gcd(f, g)
    cont = igcd(n_int_content(f, u), n_int_content(g, u))
    f = n_quo_int(f, cont, u)
    g = n_quo_int(g, cont, u)
    f_norm, g_norm = n_max_norm(f, u), n_max_norm(g, u)
    B = 2 * min(f_norm, g_norm) + 29
    x = max(min(B, 99 * isqrt(B)),
            2 * min(f_norm // abs(n_ground_lc(f, u)), g_norm // abs(n_ground_lc(g, u))) + 2)
    for _ in range(_HEU_TRIES):
        ff = n_eval_outer(f, x, u)
        gg = n_eval_outer(g, x, u)
        v = u - 1
        if not (n_is_zero(ff, v) or n_is_zero(gg, v)):
            hh, cff_v, cfg_v = _n_heu_gcd(ff, gg, v)
            h = _n_interpolate(hh, x, v)
            h = n_quo_int(h, n_int_content(h, u), u)
            cff = n_exact_div(f, h, u)
            if cff is not None:
                cfg = n_exact_div(g, h, u)
                if cfg is not None:
                    return n_scale(h, cont, u), cff, cfg
            cff = _n_interpolate(cff_v, x, v)
            h = n_exact_div(f, cff, u) if cff else None
            if h is not None:
                cfg = n_exact_div(g, h, u)
                if cfg is not None:
                    return n_scale(h, cont, u), cff, cfg
            cfg = _n_interpolate(cfg_v, x, v)
            h = n_exact_div(g, cfg, u) if cfg else None
            if h is not None:
                cff = n_exact_div(f, h, u)
                if cff is not None:
                    return n_scale(h, cont, u), cff, cfg
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    raise HeuristicGCDFailed


def n_content(f, u):
    """Content of ``f`` over the ring of its outer coefficients (level ``u - 1``)."""
    c = n_zero(u - 1)
    for a in f:
        c = n_gcd(c, a, u - 1)[0]
        if u - 1 == 0 and c == 1:
            break
    return c


def n_primitive(f, u):
    c = n_content(f, u)
    if n_ground_lc(f, u) < 0:
        c = n_neg(c, u - 1)
    return c, [n_exact_div(a, c, u - 1) for a in f]


def _n_pseudo_rem(f, g, u):
    dg = len(g) - 1
    lc = g[-1]
    r = list(f)
    k = len(r) - dg
    while r and len(r) - 1 >= dg:
        c = r[-1]
        shift = len(r) - 1 - dg
        r = [n_mul(lc, a, u - 1) for a in r]
        for j, b in enumerate(g):
            r[shift + j] = n_sub(r[shift + j], n_mul(c, b, u - 1), u - 1)
        n_strip(r, u)
        k -= 1
    while k > 0:
        r = [n_mul(lc, a, u - 1) for a in r]
        k -= 1
    return r


def _n_prs_gcd(f, g, u):
    """Recursive content/primitive-part Euclid in Z[...][x_outer]."""
    cf, pf = n_primitive(f, u)
    cg, pg = n_primitive(g, u)
    c = n_gcd(cf, cg, u - 1)[0]
    a, b = (pf, pg) if len(pf) >= len(pg) else (pg, pf)
    while b:
        r = _n_pseudo_rem(a, b, u)
        a, b = b, (n_primitive(r, u)[1] if r else [])
    h = n_primitive(a, u)[1]
    return [n_mul(c, x, u - 1) for x in h]


def n_gcd(f, g, u):
    """Multivariate gcd over Z: ``(h, f/h, g/h)``; ``h`` has positive ground lc."""
    if not u:
        h = igcd(f, g)
        if not h:
            return 0, 0, 0
        return h, f // h, g // h
    if u == 1:
        return gcd(f, g)
    if n_is_zero(f, u) and n_is_zero(g, u):
        return [], [], []
    if n_is_zero(f, u) or n_is_zero(g, u):
        nz = g if n_is_zero(f, u) else f
        sign = -1 if n_ground_lc(nz, u) < 0 else 1
        h = n_scale(nz, sign, u)
        one = n_const(sign, u)
        return (h, [], one) if n_is_zero(f, u) else (h, one, [])
    try:
        return _n_heu_gcd(f, g, u)
    except HeuristicGCDFailed:
        h = _n_prs_gcd(f, g, u)
        if n_ground_lc(h, u) < 0:
            h = n_neg(h, u)
        return h, n_exact_div(f, h, u), n_exact_div(g, h, u)


def n_const(c, u):
    for _ in range(u):
        c = [c] if (c != 0 and c != []) else []
    return c
