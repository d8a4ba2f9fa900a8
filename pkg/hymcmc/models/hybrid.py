"""Hybrid estimator schemas: sample budgets and estimates."""

from typing import Dict, List, Optional

from pydantic import Field, model_validator

from hymcmc.models.base import BaseModel
from hymcmc.types.experiment_types import NormalizerForm
from hymcmc.types.prior_types import PriorType


class SampleBudget(BaseModel):
    """Chain lengths balancing the surrogate and correction errors.

    Attributes:
        L: Target level
        epsilon: Surrogate gap
        C: Calibration constant
        m_ml: Surrogate chain length, round(C 2^(2L))
        m_num: Numerical chain length, round(C (1 + 2^epsilon)^2)
    """

    L: int = Field(..., ge=1, description="Target level")
    epsilon: float = Field(..., description="Surrogate gap")
    C: float = Field(..., gt=0, description="Calibration constant")
    m_ml: int = Field(..., ge=1, description="Surrogate chain length")
    m_num: int = Field(..., ge=1, description="Numerical chain length")


class HybridEstimate(BaseModel):
    """Hybrid two-level estimate with its per-term breakdown.

    Every QoI-valued field is a list with one entry per QoI component.

    Uniform priors fill ``term_weighted`` (chain mean of (1 - e^Delta) Q) and
    ``term_ratio`` (chain mean of e^Delta - 1); Gaussian priors fill
    ``a_terms`` (means of A1..A6; A5 and A6 are scalar and repeated) and
    ``ratio_constants`` (the two normalizing constants used).

    Attributes:
        prior_type: Which estimator produced the estimate
        base_ml_mean: Long surrogate-chain mean of Q
        term_weighted: Mean of (1 - e^Delta) Q over the numerical chain
        term_ratio: Mean of e^Delta - 1 over the numerical chain
        a_terms: Means of A1..A6
        ratio_constants: Normalizing constants multiplying A3 and A4 means
        normalizer: Normalizer form of the Gaussian estimator
        total: The hybrid estimate
        standard_errors: Batch-means standard error per term and ``total``
        chain_lengths: Stored states per chain
        numerical_solves: Numerical model evaluations spent
    """

    prior_type: PriorType
    base_ml_mean: List[float]
    term_weighted: Optional[List[float]] = None
    term_ratio: Optional[float] = None
    a_terms: Optional[List[List[float]]] = None
    ratio_constants: Optional[List[float]] = None
    normalizer: Optional[NormalizerForm] = None
    total: List[float]
    standard_errors: Dict[str, List[float]] = Field(default_factory=dict)
    chain_lengths: Dict[str, int] = Field(default_factory=dict)
    numerical_solves: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_shapes(self) -> "HybridEstimate":
        if len(self.total) != len(self.base_ml_mean):
            raise ValueError("total and base_ml_mean must have the same length")
        if self.a_terms is not None and len(self.a_terms) != 6:
            raise ValueError("a_terms must hold six entries")
        return self


__all__ = ['SampleBudget', 'HybridEstimate']
