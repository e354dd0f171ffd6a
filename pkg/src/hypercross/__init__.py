"""Hyperbolic crosses: exact counts, smooth-cross volumes, width and tractability bounds."""

from ._backend import BACKEND
from .bounds import (Bound, find_t_star, check_t_star, inverse_bounds, shift_sandwich,
                     symmetric_sandwich, upper_bound_delta, exponential_upper,
                     volume_sandwich)
from .counting import (CrossParams, Kind, cardinality, count_bruteforce,
                       count_by_support_decomposition, count_recursive, enumerate_cross)
from .errors import (DomainError, EnumerationOverflowError, HypercrossError,
                     InvalidParameterError, NumericError, PrecisionError, RangeError,
                     SupportViolationError, UndefinedRatioError)
from .remainder import remainder_bounds, remainder_series, remainder_stable
from .spectral import (JacobiParams, SparseCoefficients, bernstein_check, gauss_jacobi,
                       jackson_check, jacobi_eval, korobov_norm, project)
from .volume import volume, volume_bounds, volume_quadrature_oracle
from .widths import (SmoothnessParams, TractabilityClass, WidthKind, classify_tractability,
                     exact_dN, exact_n_eps, singular_values)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Bound", "CrossParams", "DomainError", "EnumerationOverflowError",
    "HypercrossError", "InvalidParameterError", "JacobiParams", "Kind", "NumericError",
    "PrecisionError", "RangeError", "SmoothnessParams", "SparseCoefficients",
    "SupportViolationError", "TractabilityClass", "UndefinedRatioError", "WidthKind",
    "bernstein_check", "cardinality", "check_t_star", "classify_tractability",
    "count_bruteforce", "count_by_support_decomposition", "count_recursive",
    "enumerate_cross", "exact_dN", "exact_n_eps", "exponential_upper", "find_t_star",
    "gauss_jacobi", "inverse_bounds", "jackson_check", "jacobi_eval", "korobov_norm",
    "project", "remainder_bounds", "remainder_series", "remainder_stable",
    "shift_sandwich", "singular_values", "symmetric_sandwich", "upper_bound_delta",
    "volume", "volume_bounds", "volume_quadrature_oracle", "volume_sandwich",
]
