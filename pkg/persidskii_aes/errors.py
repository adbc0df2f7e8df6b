"""Exception hierarchy for the certification toolkit.

Every error derives from ``AESError`` and from the closest built-in exception, so callers
can keep catching ``ValueError`` or ``RuntimeError`` where that reads better.
"""

from typing import Optional


class AESError(Exception):
    """Base class for all errors raised by persidskii_aes."""


class SystemSpecError(AESError, ValueError):
    """A system, sector, bound matrix or input file is malformed."""


class ExpressionSyntaxError(AESError, ValueError):
    """An expression string does not match the grammar."""

    def __init__(self, message: str, source: str = "", position: Optional[int] = None):
        self.source = source
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if source:
                message = f"{message}\n    {source}\n    {' ' * position}^"
        super().__init__(message)


class UnknownIdentifierError(ExpressionSyntaxError):
    """An identifier is neither ``t``, a known function, nor a named constant."""


class ExpressionEvaluationError(AESError, ArithmeticError):
    """Evaluation hit a division by zero or produced a non-finite value."""


class ConvergenceError(AESError, RuntimeError):
    """An iterative procedure hit its iteration cap."""


class IntegrationError(AESError, RuntimeError):
    """A simulated state became non-finite."""


class SectorViolationError(AESError, ValueError):
    """A nonlinearity leaves its declared sector."""
