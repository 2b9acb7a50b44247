"""Exception hierarchy shared across the package.

The CLI maps these onto exit statuses: usage problems exit 2, capacity and
numeric failures exit 3.
"""


class GGCodeError(Exception):
    """Base class for all package errors."""


class UsageError(GGCodeError, ValueError):
    """Bad input: mismatched fields, wrong lengths, malformed files or specs."""


class DomainError(GGCodeError, ArithmeticError):
    """Operation undefined for the given value (inverse of zero, zero codeword)."""


class CapacityError(GGCodeError):
    """Instance too large for the requested exact engine."""


class NumericError(GGCodeError, ArithmeticError):
    """Floating point routine failed to converge."""
