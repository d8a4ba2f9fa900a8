"""Prior and quantity-of-interest type definitions and enumerations."""

from enum import Enum


class PriorType(str, Enum):
    """Prior family of the unknown parameter vector."""

    UNIFORM = "uniform"
    """Independent uniform coordinates on a box"""

    GAUSSIAN = "gaussian"
    """Independent standard normal coordinates"""


class PsiFamily(str, Enum):
    """Closed-form basis families for the log-normal coefficient expansion."""

    SIN_DECAY = "sin-decay"
    """psi_j(x) = (0.5 / j^2) sin(j pi x1) sin(j pi x2)"""


class QoiKind(str, Enum):
    """Quantity of interest evaluated along chains."""

    PARAMETER = "parameter"
    """Q(z) = z, one component per parameter"""

    COEFFICIENT_FIELD = "coefficient_field"
    """Nodal coefficient field K(z) on the experiment mesh"""


__all__ = ['PriorType', 'PsiFamily', 'QoiKind']
