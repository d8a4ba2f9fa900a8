"""Surrogate training and error-estimate schemas."""

import math
from typing import List, Optional

from pydantic import Field, model_validator

from hymcmc.models.base import BaseModel


class AdamParams(BaseModel):
    """Adam optimizer constants.

    Attributes:
        lr: Step size
        beta1: First-moment decay
        beta2: Second-moment decay
        eps: Denominator guard
    """

    lr: float = Field(1e-3, gt=0, description="Step size")
    beta1: float = Field(0.9, ge=0, lt=1, description="First-moment decay")
    beta2: float = Field(0.999, ge=0, lt=1, description="Second-moment decay")
    eps: float = Field(1e-8, gt=0, description="Denominator guard")


class SurrogateErrorEstimate(BaseModel):
    """Surrogate gap epsilon derived from two measured errors.

    epsilon = log2(err_ml / err_num), so the surrogate error is
    2^epsilon times the level-L numerical error.

    Attributes:
        err_ml: Mean error of the surrogate against the reference
        err_num: Mean error of the level-L numerical model against the reference
        epsilon: log2(err_ml / err_num)
    """

    err_ml: float = Field(..., gt=0)
    err_num: float = Field(..., gt=0)
    epsilon: float

    @model_validator(mode="after")
    def _check_epsilon(self) -> "SurrogateErrorEstimate":
        expected = math.log2(self.err_ml / self.err_num)
        if not math.isclose(self.epsilon, expected, rel_tol=1e-12, abs_tol=1e-12):
            raise ValueError("epsilon must equal log2(err_ml / err_num)")
        return self


class TrainingReport(BaseModel):
    """Summary emitted by the train subcommand.

    Attributes:
        layer_sizes: Network widths from input to output
        epochs: Epochs run
        seed: Training seed
        adam: Optimizer constants
        loss_history: Training MSE per epoch (normalized targets)
        validation_history: Validation MSE per epoch (normalized targets)
        best_epoch: Epoch whose weights were kept
        test_mse: Test MSE in physical units
        test_r2: Test coefficient of determination
        error_estimate: Epsilon estimate, when reference errors were measured
    """

    layer_sizes: List[int]
    epochs: int = Field(..., ge=1)
    seed: int
    adam: AdamParams
    loss_history: List[float]
    validation_history: List[float] = Field(default_factory=list)
    best_epoch: int = Field(..., ge=0)
    test_mse: Optional[float] = None
    test_r2: Optional[float] = None
    error_estimate: Optional[SurrogateErrorEstimate] = None


__all__ = ['AdamParams', 'SurrogateErrorEstimate', 'TrainingReport']
