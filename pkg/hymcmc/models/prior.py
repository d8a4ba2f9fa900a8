"""Prior specification schemas.

Serialized inside the experiment config, e.g.
``{"type": "uniform", "bounds": [[0, 1]]}`` or
``{"type": "gaussian", "n": 4, "field": {"k_star": 0, "k_bar": 0, "psi": "sin-decay"}}``.
"""

from typing import Annotated, List, Literal, Tuple, Union

import numpy as np
from pydantic import Field, field_validator

from hymcmc.models.base import BaseModel
from hymcmc.types.prior_types import PsiFamily


class UniformPriorSpec(BaseModel):
    """Independent uniform prior on a box.

    Attributes:
        type: Discriminator, always ``"uniform"``
        bounds: Per-coordinate ``[lo, hi]`` pairs

    Example:
        ```python
        prior = UniformPriorSpec(bounds=[(0.0, 1.0)])
        prior.dimension  # 1
        ```
    """

    type: Literal["uniform"] = "uniform"
    bounds: List[Tuple[float, float]] = Field(
        default_factory=lambda: [(0.0, 1.0)],
        min_length=1,
        description="Per-coordinate [lo, hi] pairs"
    )

    @field_validator("bounds")
    @classmethod
    def _check_bounds(cls, value: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        for lo, hi in value:
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"invalid bound pair [{lo}, {hi}]")
        return value

    @property
    def dimension(self) -> int:
        """Number of parameters."""
        return len(self.bounds)

    @property
    def lower(self) -> np.ndarray:
        """Lower corner of the box."""
        return np.array([b[0] for b in self.bounds], dtype=float)

    @property
    def upper(self) -> np.ndarray:
        """Upper corner of the box."""
        return np.array([b[1] for b in self.bounds], dtype=float)


class GaussianFieldConfig(BaseModel):
    """Truncated log-normal expansion K = K_star + exp(K_bar + sum z_j psi_j).

    Attributes:
        k_star: Non-negative shift K_star
        k_bar: Mean of the log-field K_bar
        psi: Closed-form basis family
        amplitude: Leading amplitude of the basis (0.5 for sin-decay)
    """

    k_star: float = Field(0.0, ge=0, description="Non-negative shift K_star")
    k_bar: float = Field(0.0, description="Mean of the log-field")
    psi: PsiFamily = Field(PsiFamily.SIN_DECAY, description="Closed-form basis family")
    amplitude: float = Field(0.5, gt=0, description="Leading basis amplitude")


class GaussianPriorSpec(BaseModel):
    """Independent standard normal prior driving a log-normal field.

    Attributes:
        type: Discriminator, always ``"gaussian"``
        n: Number of expansion terms
        field: Coefficient-field expansion settings
    """

    type: Literal["gaussian"] = "gaussian"
    n: int = Field(4, ge=1, le=64, description="Number of expansion terms")
    field: GaussianFieldConfig = Field(
        default_factory=GaussianFieldConfig,
        description="Coefficient-field expansion settings"
    )

    @property
    def dimension(self) -> int:
        """Number of parameters."""
        return self.n


PriorSpec = Annotated[
    Union[UniformPriorSpec, GaussianPriorSpec],
    Field(discriminator="type"),
]


__all__ = [
    'UniformPriorSpec',
    'GaussianFieldConfig',
    'GaussianPriorSpec',
    'PriorSpec',
]
