"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BimeasureError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(BimeasureError, ValueError):
    pass


class InconsistentSystem(BimeasureError):
    """A linear system has no solution."""


class NotInvertible(BimeasureError):
    """A map has no convolution (or composition) inverse."""


class DoesNotFactor(BimeasureError):
    """A map does not factor through a quotient / subobject / candidate."""


class BudgetExceeded(BimeasureError):
    """An enumeration would exceed its candidate budget."""


class ValidationError(BimeasureError):
    """Raised by eager constructors when an axiom fails.

    The failing :class:`~bimeasure.algebra.Counterexample` is kept on
    ``counterexample``.
    """

    def __init__(self, counterexample):
        super().__init__(str(counterexample))
        self.counterexample = counterexample


class SchemaError(BimeasureError):
    """A definition file is malformed; ``location`` is a JSON-pointer-ish path."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message
