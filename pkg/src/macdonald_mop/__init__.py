"""Multiple orthogonal polynomials for the Macdonald weights.

The weights are ``x^alpha rho_nu`` and ``x^alpha rho_{nu+1}`` on ``(0, oo)``
with ``rho_nu(x) = 2 x^(nu/2) K_nu(2 sqrt x)``.
"""

from .errors import (DegenerateSystemError, DomainError, IdentityViolation, MacdonaldError,
                     OrderViolation, QuadratureError, UnsupportedIndexError, ZeroLocationError)
from .hermitepade import laurent_f, numerator_C, numerator_R_S, order_check
from .kernelcalc import differentiate, rodrigues_type1, type2_from_rodrigues, WeightCombo
from .mop import Type1Pair, Type2Poly, determinant_identity, type1, type2
from .numerics import Params, Poly, bareiss_solve, hankel_solve, moment, moment_table
from .recurrence import (asymptotic_ratios, coeffs_from_moments, generate_sequence, rec_coeffs,
                         zero_report, zeros)
from .verify import run_suites
from .weights import bessel_k, quad_moment, rho, sommerfeld_k

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized moment tables and solved polynomials (for cold timings)."""
    from . import mop, numerics
    mop.type1.cache_clear()
    mop.type2.cache_clear()
    numerics.moment_table.cache_clear()


__all__ = [
    "DegenerateSystemError", "DomainError", "IdentityViolation", "MacdonaldError",
    "OrderViolation", "QuadratureError", "UnsupportedIndexError", "ZeroLocationError",
    "laurent_f", "numerator_C", "numerator_R_S", "order_check",
    "differentiate", "rodrigues_type1", "type2_from_rodrigues", "WeightCombo",
    "Type1Pair", "Type2Poly", "determinant_identity", "type1", "type2",
    "Params", "Poly", "bareiss_solve", "hankel_solve", "moment", "moment_table",
    "asymptotic_ratios", "coeffs_from_moments", "generate_sequence", "rec_coeffs",
    "zero_report", "zeros", "run_suites", "clear_caches", "bessel_k", "quad_moment", "rho", "sommerfeld_k",
]
