"""Exception hierarchy for semibrick-lab."""
from __future__ import annotations

from typing import Optional


class QuiverBrickError(Exception):
    """Base class for every error raised by the library."""


class QuiverSyntaxError(QuiverBrickError):
    """Malformed quiver file; carries the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class FieldError(QuiverBrickError, ValueError):
    """Modulus is not a prime in the supported range."""


class ScopeError(QuiverBrickError):
    """The operation needs a relation-free (acyclic) path algebra."""


class ModuleMismatchError(QuiverBrickError):
    """Operands live over different quivers or fields, or have bad shapes."""


class NotABrickError(QuiverBrickError):
    """A brick was required."""


class NotASemibrickError(QuiverBrickError):
    """Members are not bricks or not pairwise Hom-orthogonal."""

    def __init__(self, message: str, witness: Optional[tuple] = None) -> None:
        self.witness = witness
        super().__init__(message)


class MemberIndexError(QuiverBrickError, IndexError):
    """A semibrick member index is out of range."""


class OracleInfeasibleError(QuiverBrickError):
    """Input exceeds the exhaustive bounds and no fast path applies."""


class ModuleFormatError(QuiverBrickError):
    """Bad module / semibrick JSON document."""

    def __init__(self, message: str, path: Optional[str] = None) -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class BudgetError(QuiverBrickError, ValueError):
    """A search budget (trials, samples, l_max) is not positive."""


def require_positive(name: str, value: int) -> None:
    """Raise BudgetError unless *value* >= 1."""
    if value < 1:
        raise BudgetError(f"{name} must be ≥ 1")
