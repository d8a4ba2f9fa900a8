"""Forward model and surrogate type definitions and enumerations."""

from enum import Enum


class CostClass(str, Enum):
    """Cost class of a forward model implementation."""

    NUMERICAL = "numerical"
    """Finite element solve per evaluation"""

    SURROGATE = "surrogate"
    """Cheap approximate evaluation"""


class TargetSpace(str, Enum):
    """What a trained surrogate predicts."""

    OBSERVATIONS = "observations"
    """The k observation values directly"""

    FIELD = "field"
    """The full nodal solution on the training level"""


class SurrogateKind(str, Enum):
    """Implementation used in place of the cheap model."""

    MLP = "mlp"
    """Trained fully connected network loaded from a model file"""

    NUMERICAL = "numerical"
    """Numerical model on a (usually coarser) level"""


__all__ = ['CostClass', 'TargetSpace', 'SurrogateKind']
