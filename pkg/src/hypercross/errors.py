"""Exception types raised across the package."""


class HypercrossError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(HypercrossError, ValueError):
    """A parameter is outside its admissible range (e.g. T <= 0)."""


class DomainError(HypercrossError, ValueError):
    """A bound or formula was evaluated outside its stated domain."""


class RangeError(HypercrossError, OverflowError):
    """Input magnitude exceeds what the floating-point fast path supports."""


class PrecisionError(HypercrossError, ArithmeticError):
    """Requested accuracy cannot be reached in the working precision."""


class NumericError(HypercrossError, ArithmeticError):
    """An iterative numerical routine failed to converge."""


class UndefinedRatioError(HypercrossError, ZeroDivisionError):
    """A check ratio has a zero denominator."""


class EnumerationOverflowError(HypercrossError):
    """Enumeration exceeded the caller-set cap.

    ``partial_count`` is the number of members produced before the cap hit.
    """

    def __init__(self, cap, partial_count):
        super().__init__(
            f"enumeration exceeded cap={cap} (partial count {partial_count})")
        self.cap = cap
        self.partial_count = partial_count


class SupportViolationError(DomainError):
    """Coefficients are supported outside the required hyperbolic cross."""
