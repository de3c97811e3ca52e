"""Exact scalars, sparse polynomials and linear algebra over Q, Q(sqrt(d)) and F_p."""

from .field import FieldElem, FieldError, field_arith, format_scalar, make, parse_scalar
from .linalg import EchelonBasis, det_bareiss, nullspace, rank, rank_mod_p, solve
from .modp import ModPoly, PrimeContext, ReductionError, reduce_mod, select_primes
from .poly import Poly, format_poly, parse_poly, poly_arith, poly_partial

__all__ = [
    "EchelonBasis",
    "FieldElem",
    "FieldError",
    "ModPoly",
    "Poly",
    "PrimeContext",
    "ReductionError",
    "det_bareiss",
    "field_arith",
    "format_poly",
    "format_scalar",
    "make",
    "nullspace",
    "parse_poly",
    "parse_scalar",
    "poly_arith",
    "poly_partial",
    "rank",
    "rank_mod_p",
    "reduce_mod",
    "select_primes",
    "solve",
]
