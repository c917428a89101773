"""Exception types shared across the package."""

from __future__ import annotations


class ExplogError(Exception):
    """Base class for every error raised by this package."""


class UnknownStructureError(ExplogError, KeyError):
    """Raised for a structure name that is not in the catalog."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown structure"


class UnsupportedStructureError(ExplogError, ValueError):
    """The structure cannot be handled by the requested operation."""


class ResourceLimitError(ExplogError):
    """A computation would exceed the configured memory or size budget."""


class QuadratureError(ExplogError, ArithmeticError):
    """Quadrature failed to reach the requested tolerance.

    The best estimate reached so far is kept on ``estimate`` together with
    its error bound ``error``.
    """

    def __init__(self, message: str, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
