"""Exact arithmetic over Q, Q(t), Q(t1, t2), quadratic extensions and Laurent series."""

from .multipoly import MultiPoly, format_multipoly, multi_gcd_cofactors
from .multiratfunc import MultiRatFunc, format_multiratfunc
from .poly import (UniPoly, discriminant, format_unipoly, gcd_cofactors, is_squarefree,
                   poly_gcd, poly_sqrt, rational_sqrt, resultant, squarefree_decomposition)
from .quadext import QuadExt, quadext_inv
from .ratfunc import (INFINITY, RatFunc, format_ratfunc, ord_t_inverse, ratfunc_normalize,
                      value_at_infinity)
from .series import (LaurentSeries, Substitution, expand_adaptive, field_sqrt, series_expand,
                     series_sqrt)
from .syntax import (evaluate, format_tree, parse_multipoly, parse_multiratfunc, parse_ratfunc,
                     parse_tree)

__all__ = [
    "INFINITY", "LaurentSeries", "MultiPoly", "MultiRatFunc", "QuadExt", "RatFunc",
    "Substitution", "UniPoly", "discriminant", "evaluate", "expand_adaptive", "field_sqrt",
    "format_multipoly", "format_multiratfunc", "format_ratfunc", "format_tree",
    "format_unipoly", "gcd_cofactors", "is_squarefree", "multi_gcd_cofactors",
    "ord_t_inverse", "parse_multipoly", "parse_multiratfunc", "parse_ratfunc", "parse_tree",
    "poly_gcd", "poly_sqrt", "quadext_inv", "rational_sqrt", "ratfunc_normalize", "resultant",
    "series_expand", "series_sqrt", "squarefree_decomposition", "value_at_infinity",
]
