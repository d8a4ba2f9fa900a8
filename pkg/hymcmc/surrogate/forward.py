"""Surrogate forward models.

Two kinds of cheap model stand in for G^L:

- :class:`SurrogateForwardModel`, a trained network predicting either the
  observations directly or the nodal field on its training level
- :class:`CoarseSurrogate`, the numerical model on a coarser level, which
  removes training randomness from correction experiments
"""

from typing import Optional

import numpy as np

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem.observation import ObservationLayout, interpolation_matrix
from hymcmc.fem.solver import FemSolution
from hymcmc.forward.base import ForwardModel
from hymcmc.forward.numerical import NumericalForwardModel
from hymcmc.surrogate.mlp import MlpModel, predict
from hymcmc.types.model_types import CostClass, TargetSpace


class SurrogateForwardModel(ForwardModel):
    """Trained network behind the forward-model interface.

    Attributes:
        mlp: Network
        layout: Observation points
        target_space: ``observations`` or ``field``
        level: Training level of field-space networks

    Raises:
        HymcmcValidationError: If the network's output size does not fit the
            layout (observations) or the level's node count (field)
    """

    cost_class = CostClass.SURROGATE

    def __init__(
        self,
        mlp: MlpModel,
        layout: ObservationLayout,
        target_space: TargetSpace = TargetSpace.OBSERVATIONS,
        level: Optional[int] = None,
    ):
        self.mlp = mlp
        self.layout = layout
        self.target_space = TargetSpace(target_space)
        self.level = level
        n_out = mlp.layer_sizes[-1]
        if self.target_space == TargetSpace.FIELD:
            if level is None:
                raise HymcmcValidationError("A field-space surrogate needs its training level")
            self._observe = interpolation_matrix(level, layout.points)
            if self._observe.shape[1] != n_out:
                raise HymcmcValidationError(
                    "Network output does not match the field size",
                    details={"outputs": n_out, "nodes": self._observe.shape[1]}
                )
        elif n_out != layout.size:
            raise HymcmcValidationError(
                "Network output does not match the observation count",
                details={"outputs": n_out, "observations": layout.size}
            )

    @property
    def input_size(self) -> int:
        return self.mlp.layer_sizes[0]

    @property
    def output_size(self) -> int:
        return self.layout.size

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        y = predict(self.mlp, np.asarray(z, dtype=float))
        if self.target_space == TargetSpace.FIELD:
            return self._observe @ y
        return y

    def field(self, z: np.ndarray) -> FemSolution:
        """Predicted nodal field (field-space networks only)."""
        if self.target_space != TargetSpace.FIELD:
            raise HymcmcValidationError("This surrogate predicts observations, not fields")
        return FemSolution(level=self.level, values=predict(self.mlp, np.asarray(z, dtype=float)))

    def describe(self) -> str:
        return f"SurrogateForwardModel({self.mlp.layer_sizes}, {self.target_space.value})"


class CoarseSurrogate(NumericalForwardModel):
    """Numerical model on a coarse level used in place of a trained network."""

    cost_class = CostClass.SURROGATE

    def describe(self) -> str:
        return f"CoarseSurrogate(level={self.level}, k={self.output_size})"


def coarse_surrogate(model: NumericalForwardModel, level: int) -> CoarseSurrogate:
    """The numerical model re-targeted to ``level`` and tagged as a surrogate."""
    return CoarseSurrogate(level, model.builder, model.layout, model.n, model.source, model.bc)


__all__ = ['SurrogateForwardModel', 'CoarseSurrogate', 'coarse_surrogate']
