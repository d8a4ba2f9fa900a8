"""hymcmc: hybrid two-level MCMC for PDE-constrained Bayesian inverse problems.

A long Metropolis-Hastings chain on a cheap surrogate (a trained network or a
coarse finite element model) is corrected by short chains on the finite
element model, giving posterior expectations at the accuracy of the fine model
for a fraction of its solves.
"""

from hymcmc.client import ExperimentRunner, RuntimeSettings
from hymcmc.errors import (
    HymcmcConfigurationError,
    HymcmcError,
    HymcmcNumericalError,
    HymcmcPersistenceError,
    HymcmcTrainingError,
    HymcmcValidationError,
)
from hymcmc.models import ExperimentConfig, load_config
from hymcmc.version import __version__

__all__ = [
    "__version__",
    "ExperimentRunner",
    "RuntimeSettings",
    "ExperimentConfig",
    "load_config",
    "HymcmcError",
    "HymcmcConfigurationError",
    "HymcmcValidationError",
    "HymcmcNumericalError",
    "HymcmcTrainingError",
    "HymcmcPersistenceError",
]
