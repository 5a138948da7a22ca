"""Exception types shared across the package."""

from __future__ import annotations


class FockmodesError(Exception):
    """Base class for all library-specific errors."""


class DimensionError(FockmodesError):
    """Shapes, lengths, or mode counts do not line up."""


class DegenerateStateError(FockmodesError):
    """A state with (numerically) zero norm where a proper state is required."""


class NotNormalizedError(FockmodesError):
    """An operation that requires a unit-norm state received something else."""


class NotUnitaryError(FockmodesError):
    """A matrix failed the unitarity check."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class PartitionError(FockmodesError):
    """Mode indices do not describe a valid bipartition."""


class SizeLimitError(FockmodesError):
    """Input exceeds a hard size cap (e.g. permanent dimension)."""


class NumericalConsistencyError(FockmodesError):
    """An internal cross-check failed beyond rounding tolerances."""


class ParseError(FockmodesError):
    """Base class for input-format errors."""


class KetParseError(ParseError):
    """Ket-expression syntax or consistency error, carrying a byte offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnitaryFileError(ParseError):
    """Unitary JSON document is malformed or has the wrong shape."""
