"""Exception hierarchy shared by all modules.

Validation problems (bad parameters, missing data) are ``ParameterError``
and map to CLI exit code 2; numerical breakdowns (precision exhaustion,
series/quadrature failure) map to exit code 3.
"""


class FreudError(Exception):
    """Base class for everything raised by this package."""


class ParameterError(FreudError, ValueError):
    """A precondition on user-supplied parameters is violated."""


class PoleError(ParameterError):
    """Gamma evaluated at a non-positive integer."""


class InsufficientDataError(ParameterError):
    """A moment table or recurrence table is too short for the request."""


class DivergenceError(FreudError):
    """A hypergeometric series diverges for the given parameters."""


class RangeError(FreudError):
    """Series terms exceed the representable range for the working precision."""


class ConvergenceError(FreudError):
    """An iterative scheme (series or quadrature) failed to converge."""


class PrecisionExhaustedError(FreudError):
    """Adaptive precision escalation ran out of retries."""
