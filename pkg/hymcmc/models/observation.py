"""Observation data schema.

An ObservationSet is the published data file of an experiment: it records the
noise variance, observation layout, the noisy data and everything needed to
regenerate it (truth parameter and seed).
"""

from typing import List, Optional

import numpy as np
from pydantic import Field, model_validator

from hymcmc.models.base import BaseModel, Point


class ObservationSet(BaseModel):
    """Noisy point observations of the forward model.

    Noise covariance is sigma2 times the identity.

    Attributes:
        sigma2: Noise variance, strictly positive
        layout: Observation coordinates, in data order
        delta: Observed data, one value per layout point
        truth_z: Parameter the data was generated from (reference only)
        truth_seed: Seed of the noise draw (serialized as ``seed``)
        noise_free: Whether the noise was switched off explicitly
        level: Mesh level of the generating model, when numerical

    Example:
        ```python
        obs = ObservationSet(
            sigma2=0.001,
            layout=[(1 / 7, 1 / 7)],
            delta=[0.142],
            truth_z=[0.3],
            seed=11,
        )
        ```
    """

    sigma2: float = Field(..., gt=0, description="Noise variance")
    layout: List[Point] = Field(..., min_length=1, description="Observation coordinates")
    delta: List[float] = Field(..., min_length=1, description="Observed data")
    truth_z: List[float] = Field(..., description="Generating parameter, reference only")
    truth_seed: int = Field(..., description="Noise seed", alias="seed")
    noise_free: bool = Field(False, description="Noise explicitly disabled")
    level: Optional[int] = Field(None, description="Mesh level of the generating model")

    @model_validator(mode="after")
    def _check_lengths(self) -> "ObservationSet":
        if len(self.delta) != len(self.layout):
            raise ValueError(
                f"delta has {len(self.delta)} entries but layout has {len(self.layout)} points"
            )
        return self

    @property
    def size(self) -> int:
        """Number of observations k."""
        return len(self.delta)

    @property
    def delta_array(self) -> np.ndarray:
        """Observed data as a float array."""
        return np.asarray(self.delta, dtype=float)

    @property
    def points(self) -> np.ndarray:
        """Layout as a (k, 2) array."""
        return np.asarray(self.layout, dtype=float)


__all__ = ['ObservationSet']
