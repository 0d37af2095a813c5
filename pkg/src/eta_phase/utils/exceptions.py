"""Custom exceptions for eta-phase."""

from typing import Any


class EtaPhaseError(Exception):
    """Base exception for eta-phase."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        self.message = message
        self.details = details or {}
        super().__init__(message)


class ValidationError(EtaPhaseError):
    """Validation error."""

    pass


class InvalidDimensionError(ValidationError):
    """Dimension or grid size is not acceptable."""

    pass


class InvalidParameterError(ValidationError):
    """A scalar parameter is out of its admissible range."""

    pass


class DomainError(ValidationError):
    """Input lies outside the mathematical domain of an operation."""

    pass


class InvalidStateError(ValidationError):
    """A mixed state violates normalization or orthonormality."""

    pass


class GridMismatchError(ValidationError):
    """Grids or Planck parameters of two objects are incompatible."""

    pass


class FileFormatError(ValidationError):
    """A file does not parse to the expected format."""

    def __init__(self, path: str, reason: str) -> None:
        message = f"Cannot parse {path}: {reason}"
        super().__init__(message, {"path": path, "reason": reason})


class NotAQuantumStateError(EtaPhaseError):
    """The phase-space distribution is not a quantum state at this eta."""

    def __init__(self, eta: float, threshold: float) -> None:
        message = f"|eta| = {abs(eta)} exceeds the quantum threshold 2*lambda_min = {threshold}"
        super().__init__(message, {"eta": eta, "threshold": threshold})
        self.eta = eta
        self.threshold = threshold


class NumericalInstabilityError(EtaPhaseError):
    """A computed result failed its own accuracy check."""

    def __init__(self, message: str, residual: float, tolerance: float) -> None:
        super().__init__(
            f"{message} (residual {residual:.3e} > tolerance {tolerance:.3e})",
            {"residual": residual, "tolerance": tolerance},
        )
        self.residual = residual
        self.tolerance = tolerance
