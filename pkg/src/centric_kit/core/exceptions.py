"""Custom exceptions for centric-kit.

Every error raised by the library derives from ``CentricKitError`` so the
command-line layer can turn it into a clean message and a non-zero exit code.
"""

from typing import Any, Optional, Sequence


class CentricKitError(Exception):
    """Base exception class for all centric-kit errors."""

    def __init__(self, message: str, details: Optional[dict[str, Any]] = None) -> None:
        """Initialize the exception with a message and optional details.

        Args:
            message: Human-readable error message
            details: Optional dictionary with additional error context
        """
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        """Return a string representation of the exception."""
        if self.details:
            details_str = ", ".join(f"{k}={v}" for k, v in self.details.items())
            return f"{self.message} ({details_str})"
        return self.message


class ConfigurationError(CentricKitError):
    """Raised when runtime or experiment configuration is invalid."""
    pass


class DataValidationError(CentricKitError):
    """Raised when a dataset or one of its derived objects is malformed."""
    pass


class PartitionError(DataValidationError):
    """Raised when a partition does not fit the dataset it is paired with."""

    def __init__(
        self,
        message: str,
        violations: Optional[Sequence[str]] = None,
        details: Optional[dict[str, Any]] = None
    ) -> None:
        """Initialize with the list of violated partition invariants.

        Args:
            message: Human-readable error message
            violations: Every invariant the partition breaks
            details: Additional error context
        """
        partition_details = details or {}
        if violations:
            partition_details["violations"] = "; ".join(violations)
        super().__init__(message, partition_details)
        self.violations = list(violations or [])


class EmptySubsetError(DataValidationError):
    """Raised when an operation needs at least one point but got none."""
    pass


class TransformError(CentricKitError):
    """Raised when a transform is given an invalid factor, axis or subset."""
    pass


class OracleBudgetError(CentricKitError):
    """Raised when exhaustive enumeration would exceed its budget."""
    pass


class AnalysisError(CentricKitError):
    """Raised when an alternative split is inconsistent with its reference."""
    pass


class ExportError(CentricKitError):
    """Raised when reading or writing CSV, JSON or SVG files fails."""
    pass
