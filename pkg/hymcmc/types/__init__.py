"""Type definitions and enumerations for hymcmc.

This module contains all type definitions organized by domain:
- prior_types: prior families, basis families, quantities of interest
- model_types: forward model cost classes and surrogate targets
- experiment_types: kernels, problems, run modes, estimator forms
"""

from hymcmc.types.experiment_types import (
    KernelType,
    NormalizerForm,
    ProblemKind,
    RunMode,
)
from hymcmc.types.model_types import (
    CostClass,
    SurrogateKind,
    TargetSpace,
)
from hymcmc.types.prior_types import (
    PriorType,
    PsiFamily,
    QoiKind,
)

__all__ = [
    # Prior types
    "PriorType",
    "PsiFamily",
    "QoiKind",
    # Model types
    "CostClass",
    "SurrogateKind",
    "TargetSpace",
    # Experiment types
    "KernelType",
    "NormalizerForm",
    "ProblemKind",
    "RunMode",
]
