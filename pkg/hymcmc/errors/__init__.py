"""hymcmc error classes."""

from hymcmc.errors.exceptions import (
    HymcmcConfigurationError,
    HymcmcError,
    HymcmcNumericalError,
    HymcmcPersistenceError,
    HymcmcTrainingError,
    HymcmcValidationError,
)

__all__ = [
    "HymcmcError",
    "HymcmcConfigurationError",
    "HymcmcValidationError",
    "HymcmcNumericalError",
    "HymcmcTrainingError",
    "HymcmcPersistenceError",
]
