"""Error types shared across the library.

Poles and domain violations are signaled with dedicated exceptions rather
than NaN propagation so that callers (and tests) can distinguish "the
function has a pole here" from "the algorithm broke".
"""


class SelzetError(Exception):
    """Base class for all library errors."""


class PoleError(SelzetError):
    """Evaluation requested at (or numerically on top of) a pole."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class DomainError(SelzetError):
    """Arguments outside the supported domain of an operation."""


class ConvergenceError(SelzetError):
    """A series/product/quadrature did not meet its tolerance."""

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class SpectrumFormatError(SelzetError):
    """Malformed spectrum/eigenvalue file."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
