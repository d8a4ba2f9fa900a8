"""Custom exception classes for hymcmc.

This module provides a hierarchy of exception classes for the different kinds
of failure that can occur while solving forward problems, training surrogates,
running chains, or orchestrating experiments.

Example:
    >>> from hymcmc.errors import HymcmcError, HymcmcNumericalError
    >>> try:
    ...     # solver operation
    ...     pass
    ... except HymcmcNumericalError as e:
    ...     print(f"Numerical failure: {e.message}")
    ... except HymcmcError as e:
    ...     print(f"hymcmc error: {e.message}")
"""

from typing import Any, Optional


class HymcmcError(Exception):
    """Base exception for all hymcmc errors.

    Attributes:
        message: Human-readable error message
        details: Additional error context or details

    Example:
        >>> try:
        ...     raise HymcmcError("Something went wrong", {"level": 11})
        ... except HymcmcError as e:
        ...     print(e.message)
        ...     print(e.details)
    """

    exit_code: int = 1

    def __init__(self, message: str, details: Any = None):
        """Create a new HymcmcError instance.

        Args:
            message: Human-readable error message
            details: Additional error context or details
        """
        super().__init__(message)
        self.message = message
        self.details = details

    def __str__(self) -> str:
        """Return string representation of the error."""
        if self.details:
            return f"{self.message} (details: {self.details})"
        return self.message

    def __repr__(self) -> str:
        """Return detailed string representation of the error."""
        return f"{self.__class__.__name__}(message={self.message!r}, details={self.details!r})"


class HymcmcConfigurationError(HymcmcError):
    """Error raised when an experiment or runtime configuration is invalid.

    Raised for unknown config keys, missing input files, unwritable output
    directories and runs that need an artifact that does not exist (for
    example a hybrid run without a trained surrogate).

    Example:
        >>> try:
        ...     from hymcmc import ExperimentConfig, ExperimentRunner
        ...     ExperimentRunner(ExperimentConfig(), workers=0)
        ... except HymcmcConfigurationError as e:
        ...     print(f"Configuration error: {e.message}")
    """

    exit_code = 2

    def __init__(self, message: str, details: Any = None):
        """Create a new HymcmcConfigurationError instance.

        Args:
            message: Human-readable error message
            details: Offending keys, paths or pydantic error list
        """
        super().__init__(message, details)


class HymcmcValidationError(HymcmcError):
    """Error raised when an operation is called outside its preconditions.

    Examples are a mesh level outside 1..10, a parameter outside its prior
    box, an observation point on the boundary, or a length mismatch between
    model output and data.
    """

    exit_code = 2


class HymcmcNumericalError(HymcmcError):
    """Error raised when a numerical computation fails.

    Covers singular or non-convergent linear solves and non-finite forward
    model output that aborts a chain.
    """

    exit_code = 3


class HymcmcTrainingError(HymcmcError):
    """Error raised when surrogate training diverges.

    Attributes:
        message: Human-readable error message
        epoch: Epoch index (0-based) at which the loss became non-finite
        details: Additional error context

    Example:
        >>> try:
        ...     raise HymcmcTrainingError("Loss is NaN", epoch=17)
        ... except HymcmcTrainingError as e:
        ...     print(f"Training stopped at epoch {e.epoch}")
    """

    exit_code = 4

    def __init__(self, message: str, epoch: Optional[int] = None, details: Any = None):
        """Create a new HymcmcTrainingError instance.

        Args:
            message: Human-readable error message
            epoch: Epoch index at which training aborted
            details: Additional error context
        """
        super().__init__(message, details)
        self.epoch = epoch

    def __str__(self) -> str:
        """Return string representation of the error."""
        parts = [self.message]
        if self.epoch is not None:
            parts.append(f"epoch={self.epoch}")
        if self.details:
            parts.append(f"details={self.details}")

        if len(parts) > 1:
            return f"{parts[0]} ({', '.join(parts[1:])})"
        return parts[0]

    def __repr__(self) -> str:
        """Return detailed string representation of the error."""
        return (
            f"{self.__class__.__name__}(message={self.message!r}, "
            f"epoch={self.epoch!r}, details={self.details!r})"
        )


class HymcmcPersistenceError(HymcmcError):
    """Error raised when a persisted artifact cannot be read.

    Raised for wrong magic bytes, unsupported format versions, truncated
    files and malformed CSV dumps.
    """

    exit_code = 2


__all__ = [
    'HymcmcError',
    'HymcmcConfigurationError',
    'HymcmcValidationError',
    'HymcmcNumericalError',
    'HymcmcTrainingError',
    'HymcmcPersistenceError',
]
