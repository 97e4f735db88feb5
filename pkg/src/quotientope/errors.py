"""Exception types shared across the package.

The CLI maps these onto exit codes: invalid input is 2, a failed
internal verification is 3 and an exceeded size budget is 4.
"""


class QuotientopeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(QuotientopeError, ValueError):
    """Malformed permutation, fence, diagram or pattern input."""


class NonEssentialError(InvalidInputError):
    """An operation that requires an essential congruence got a non-essential one."""


class NotWellBehavedError(InvalidInputError):
    """A pattern set is not of the shape A[k1]B or is not closed under permuting A and B."""

    def __init__(self, message, completion=None):
        super().__init__(message)
        self.completion = completion


class NotZigzagError(InvalidInputError):
    """A permutation set is not a zigzag language."""


class RailCollapseError(InvalidInputError):
    """Rails are entirely contracted because f(n-1,n,{}) is in the congruence."""


class BudgetExceededError(QuotientopeError):
    """The requested n is beyond what the operation supports."""


class VerificationError(QuotientopeError, RuntimeError):
    """A self-check failed; this indicates a bug rather than bad input."""
