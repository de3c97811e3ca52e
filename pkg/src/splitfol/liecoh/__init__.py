"""Matrix Lie algebras, the quotient module sl(n+1)/g, and Chevalley-Eilenberg cohomology."""

from .algebra import LieAlgebraData, LieAlgebraError, NotClosedError, bracket, structure_constants
from .builtins import aff_sym, builtin_algebra, chain, diagonal, infinito, sl2_sym
from .cohomology import Cochain, CohomologyResult, ce_coboundary, cohomology_dim
from .module import NotSemisimpleError, QuotientModule, quotient_module

__all__ = [
    "Cochain",
    "CohomologyResult",
    "LieAlgebraData",
    "LieAlgebraError",
    "NotClosedError",
    "NotSemisimpleError",
    "QuotientModule",
    "aff_sym",
    "bracket",
    "builtin_algebra",
    "ce_coboundary",
    "chain",
    "cohomology_dim",
    "diagonal",
    "infinito",
    "quotient_module",
    "sl2_sym",
    "structure_constants",
]
