"""Chain configuration and summary schemas."""

from typing import Dict, List, Optional

from pydantic import Field, model_validator

from hymcmc.models.base import BaseModel
from hymcmc.types.experiment_types import KernelType

DEFAULT_BURN_IN_FRACTION = 0.1


class ChainConfig(BaseModel):
    """Settings of one Metropolis-Hastings chain.

    ``length`` counts stored states after burn-in and thinning, so the chain
    takes ``burn_in + length * thin`` steps in total.

    Attributes:
        kernel: Proposal kernel
        step: Random-walk standard deviation (rw_reflect)
        beta: pCN step in (0, 1]
        length: Number of stored states
        burn_in: Discarded steps; defaults to 10% of length
        seed: Seed of the chain's generator
        thin: Keep every ``thin``-th post-burn-in state

    Example:
        ```python
        cfg = ChainConfig(kernel="rw_reflect", step=0.1, length=4000, seed=3)
        cfg.resolved_burn_in  # 400
        ```
    """

    kernel: KernelType = Field(KernelType.RW_REFLECT, description="Proposal kernel")
    step: float = Field(0.1, gt=0, description="Random-walk standard deviation")
    beta: float = Field(0.2, gt=0, le=1, description="pCN step size")
    length: int = Field(..., ge=1, description="Stored states after burn-in and thinning")
    burn_in: Optional[int] = Field(None, ge=0, description="Discarded initial steps")
    seed: int = Field(..., description="Generator seed")
    thin: int = Field(1, ge=1, description="Thinning interval")

    @model_validator(mode="after")
    def _check_burn_in(self) -> "ChainConfig":
        if self.burn_in is not None and self.burn_in >= self.length * self.thin:
            raise ValueError("burn_in must be smaller than the chain length")
        return self

    @property
    def resolved_burn_in(self) -> int:
        """Burn-in actually applied."""
        if self.burn_in is not None:
            return self.burn_in
        return int(DEFAULT_BURN_IN_FRACTION * self.length)

    @property
    def total_steps(self) -> int:
        """Number of Metropolis-Hastings steps taken."""
        return self.resolved_burn_in + self.length * self.thin


class ChainSummary(BaseModel):
    """JSON summary written next to a chain dump.

    Attributes:
        config: Chain configuration as run
        cost_class: Cost class of the target model
        acceptance_rate: Accepted proposals over all steps (burn-in included)
        nonfinite_rejections: Proposals rejected for a non-finite potential
        ess: Effective sample size of every QoI component
        qoi_mean: Chain mean of the QoI
        model_evaluations: Target-model evaluations
        companion_evaluations: Companion-model evaluations
        burn_in: Burn-in applied
        seeds: Seeds involved
    """

    config: ChainConfig
    cost_class: str
    acceptance_rate: float = Field(..., ge=0, le=1)
    nonfinite_rejections: int = Field(0, ge=0)
    ess: List[float]
    qoi_mean: List[float]
    model_evaluations: int = Field(..., ge=0)
    companion_evaluations: int = Field(0, ge=0)
    burn_in: int = Field(..., ge=0)
    seeds: Dict[str, int] = Field(default_factory=dict)


__all__ = ['ChainConfig', 'ChainSummary', 'DEFAULT_BURN_IN_FRACTION']
