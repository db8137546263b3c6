"""Exact machinery for elliptic curves over rational function fields.

Modules: ``algebra`` (Q, Q(t), Q(t1, t2), quadratic extensions, Laurent
series), ``elliptic`` (group law, division polynomials, twists), ``denef``
(the integers inside the twist over Q(t)), ``kimroush`` (the two-variable
construction and its valuation), ``reducer`` (integer equations to systems
over Q(t)) and ``cli``.
"""

__version__ = "0.1.0"
