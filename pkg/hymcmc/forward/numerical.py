"""Finite-element forward model G^l."""

import logging
from typing import Optional

import numpy as np

from hymcmc.fem.mesh import build_mesh, check_level
from hymcmc.fem.observation import ObservationLayout, observe
from hymcmc.fem.solver import BoundarySpec, FemSolution, Source, assemble_and_solve, default_source
from hymcmc.forward.base import ForwardModel
from hymcmc.prior.fields import FieldBuilder
from hymcmc.types.model_types import CostClass

logger = logging.getLogger(__name__)


class NumericalForwardModel(ForwardModel):
    """Composition build_field -> assemble_and_solve -> observe on one level.

    Attributes:
        level: Mesh level l
        builder: Coefficient-field builder
        layout: Observation points
        source: Right-hand side f
        bc: Dirichlet values on the x1 faces
    """

    cost_class = CostClass.NUMERICAL

    def __init__(
        self,
        level: int,
        builder: FieldBuilder,
        layout: ObservationLayout,
        n: int,
        source: Source = default_source,
        bc: BoundarySpec = BoundarySpec(),
    ):
        self.level = check_level(level)
        self.builder = builder
        self.layout = layout
        self.n = n
        self.source = source
        self.bc = bc

    @property
    def input_size(self) -> int:
        return self.n

    @property
    def output_size(self) -> int:
        return self.layout.size

    def solve(self, z: np.ndarray) -> FemSolution:
        """Full nodal solution u^l(z)."""
        mesh = build_mesh(self.level)
        return assemble_and_solve(mesh, self.builder(np.asarray(z, dtype=float), mesh), self.source, self.bc)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        return observe(self.solve(z), self.layout)

    def at_level(self, level: int) -> "NumericalForwardModel":
        """Same model on another level."""
        return NumericalForwardModel(level, self.builder, self.layout, self.n, self.source, self.bc)

    def describe(self) -> str:
        return f"NumericalForwardModel(level={self.level}, builder={self.builder!r}, k={self.output_size})"


def numerical_forward(
    level: int,
    builder: FieldBuilder,
    layout: ObservationLayout,
    n: int = 1,
    source: Optional[Source] = None,
) -> NumericalForwardModel:
    """Numerical forward model G^l on ``level``.

    Raises:
        HymcmcValidationError: If the level lies outside 1..10
    """
    model = NumericalForwardModel(level, builder, layout, n, default_source if source is None else source)
    logger.debug("Created %s", model.describe())
    return model


__all__ = ['NumericalForwardModel', 'numerical_forward']
