"""Quantities of interest Q(z)."""

from abc import ABC, abstractmethod

import numpy as np

from hymcmc.fem.mesh import build_mesh, check_level
from hymcmc.models.experiment import QoiConfig
from hymcmc.prior.fields import FieldBuilder
from hymcmc.types.prior_types import QoiKind


class QuantityOfInterest(ABC):
    """Vector-valued function of the parameter.

    Attributes:
        name: Label used in chain dumps and reports
        dimension: Number of components
    """

    name: str = "qoi"
    dimension: int = 1

    @abstractmethod
    def __call__(self, z: np.ndarray) -> np.ndarray:
        """Q(z) as a 1-D array of length ``dimension``."""

    def labels(self) -> list:
        """Column names, ``qoi_1 .. qoi_q``."""
        return [f"qoi_{i + 1}" for i in range(self.dimension)]


class ParameterQoI(QuantityOfInterest):
    """Q(z) = z."""

    name = "parameter"

    def __init__(self, n: int):
        self.dimension = n

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return np.array(z, dtype=float, copy=True).reshape(self.dimension)


class CoefficientFieldQoI(QuantityOfInterest):
    """Nodal coefficient field on a fixed level.

    Used for the log-normal experiment, where the posterior mean of K is
    estimated component-wise.
    """

    name = "coefficient_field"

    def __init__(self, builder: FieldBuilder, level: int):
        self.builder = builder
        self.level = check_level(level)
        self.dimension = build_mesh(self.level).node_count

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return self.builder(z, build_mesh(self.level)).values


def make_qoi(config: QoiConfig, n: int, builder: FieldBuilder) -> QuantityOfInterest:
    """QoI described by a config section."""
    if QoiKind(config.kind) == QoiKind.COEFFICIENT_FIELD:
        return CoefficientFieldQoI(builder, config.level)
    return ParameterQoI(n)


__all__ = ['QuantityOfInterest', 'ParameterQoI', 'CoefficientFieldQoI', 'make_qoi']
