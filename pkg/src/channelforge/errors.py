"""Exception hierarchy shared by every module."""


class ChannelError(Exception):
    """Base class for all channelforge errors."""


class ShapeError(ChannelError, ValueError):
    """Operand shapes or dimensions are incompatible."""


class DomainError(ChannelError, ValueError):
    """Argument lies outside the domain of the operation."""


class ConventionError(DomainError):
    """A vectorization or Choi convention is not the one required."""


class NotCPError(DomainError):
    """A map expected to be completely positive is not.

    ``min_eigenvalue`` carries the most negative Choi eigenvalue found.
    """

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class NumericError(ChannelError, ArithmeticError):
    """A numerical routine failed to converge or produced non-finite values."""
