"""Exception hierarchy.

Every error carries a user-facing message; the CLI prints ``str(exc)``
unchanged and exits 1.
"""

from __future__ import annotations


class DynChargeError(Exception):
    """Base class for all toolkit errors."""


class ConstantsError(DynChargeError):
    """Raised when a constants override file cannot be applied."""


class UnitParseError(DynChargeError, ValueError):
    """Raised when a unit expression does not match the grammar.

    ``position`` is the 0-based character offset of the offending token in
    ``text``; ``str(exc)`` renders a caret under it.
    """

    def __init__(self, message: str, text: str, position: int) -> None:
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


class DimensionError(DynChargeError):
    """Raised when a formula receives an argument of the wrong dimension."""


class DomainError(DynChargeError, ValueError):
    """Raised when an argument lies outside the mathematical domain of an operation."""


class GridError(DynChargeError):
    """Raised when a field does not live on the grid it is combined with."""


class WellPosednessError(DynChargeError):
    """Raised when boundary conditions leave the radial problem singular."""


class QuadratureError(DynChargeError):
    """Raised when adaptive quadrature cannot reach the requested tolerance."""

    def __init__(self, message: str, achieved: float) -> None:
        self.achieved = achieved
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")
