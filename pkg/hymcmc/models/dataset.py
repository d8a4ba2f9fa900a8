"""Dataset sidecar schema."""

from typing import List, Optional

from pydantic import Field, model_validator

from hymcmc.models.base import BaseModel
from hymcmc.types.model_types import TargetSpace


class DatasetMeta(BaseModel):
    """JSON sidecar written next to a dataset CSV.

    Attributes:
        count: Number of records
        n_in: Parameter dimension
        n_out: Target dimension
        target_space: What the targets are
        level: Level of the generating numerical model
        seed: Seed of the prior draws and the split permutation
        train: Training record indices
        validation: Validation record indices
        test: Test record indices
    """

    count: int = Field(..., ge=1)
    n_in: int = Field(..., ge=1)
    n_out: int = Field(..., ge=1)
    target_space: TargetSpace
    level: Optional[int] = None
    seed: int
    train: List[int]
    validation: List[int]
    test: List[int]

    @model_validator(mode="after")
    def _check_split(self) -> "DatasetMeta":
        joined = sorted(self.train + self.validation + self.test)
        if joined != list(range(self.count)):
            raise ValueError("split index sets must be disjoint and cover every record")
        return self


__all__ = ['DatasetMeta']
