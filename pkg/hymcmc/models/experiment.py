"""Experiment configuration schema.

An ExperimentConfig is the single JSON document every CLI subcommand reads.
All seeds live in it, so a report that embeds its resolved config can be
re-run to the same numbers.

Example:
    ```python
    from hymcmc.models import ExperimentConfig

    config = ExperimentConfig.model_validate({
        "problem": "elliptic_uniform",
        "level": 5,
        "observations": {"sigma2": 0.001, "truth_z": [0.3], "seed": 11},
        "output_dir": "runs/uniform",
    })
    ```
"""

import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import Field, field_validator, model_validator

from hymcmc.errors import HymcmcConfigurationError
from hymcmc.models.base import BaseModel, parse_model
from hymcmc.models.chain import DEFAULT_BURN_IN_FRACTION, ChainConfig
from hymcmc.models.prior import GaussianPriorSpec, PriorSpec, UniformPriorSpec
from hymcmc.models.surrogate import AdamParams
from hymcmc.types.experiment_types import KernelType, NormalizerForm, ProblemKind
from hymcmc.types.model_types import SurrogateKind, TargetSpace
from hymcmc.types.prior_types import PriorType, QoiKind

MAX_LEVEL = 10


class ObservationConfig(BaseModel):
    """How observation data is produced or where it is read from.

    Attributes:
        sigma2: Noise variance
        truth_z: Generating parameter; drawn from the prior with ``truth_seed`` when omitted
        truth_seed: Seed of the truth draw
        seed: Seed of the noise draw
        grid: The layout is a ``grid x grid`` lattice at i / (grid + 1)
        noise_free: Switch the noise off (exact-recovery runs)
        level: Level of the generating numerical model; the experiment level when omitted
        data_path: Existing ObservationSet JSON to use instead of generating one
    """

    sigma2: float = Field(0.001, gt=0, description="Noise variance")
    truth_z: Optional[List[float]] = Field(None, description="Generating parameter")
    truth_seed: int = Field(7, description="Seed of the truth draw")
    seed: int = Field(11, description="Noise seed")
    grid: int = Field(6, ge=1, le=64, description="Observation lattice size per axis")
    noise_free: bool = Field(False, description="Disable observation noise")
    level: Optional[int] = Field(None, ge=1, le=MAX_LEVEL, description="Generating level")
    data_path: Optional[str] = Field(None, description="Existing observation file")


class SurrogateConfig(BaseModel):
    """Surrogate construction, training and error measurement.

    Attributes:
        kind: ``mlp`` for a trained network, ``numerical`` for a coarser numerical model
        hidden_layers: Hidden-layer widths of the network
        epochs: Training epochs
        adam: Optimizer constants
        batch_size: Mini-batch size; full batch when omitted
        seed: Training seed (initialization and batch order)
        dataset_size: Number of generated training records
        split: Train/validation/test fractions
        dataset_seed: Seed of the dataset's prior draws and split
        target_space: What the network predicts
        model_path: Model file; ``<output_dir>/surrogate.hmlp`` when omitted
        level: Level of the numerical surrogate (``kind == "numerical"``)
        reference_level: Level of the high-fidelity reference for error measurement
        reference_samples: Prior draws averaged when measuring errors
        reference_seed: Seed of those draws
        log_every: Epoch interval of training progress logs
    """

    kind: SurrogateKind = Field(SurrogateKind.MLP, description="Surrogate implementation")
    hidden_layers: List[int] = Field(default_factory=lambda: [512, 512], min_length=1)
    epochs: int = Field(10000, ge=1)
    adam: AdamParams = Field(default_factory=AdamParams)
    batch_size: Optional[int] = Field(None, ge=1)
    seed: int = 0
    dataset_size: int = Field(8000, ge=10)
    split: Tuple[float, float, float] = (0.5, 0.25, 0.25)
    dataset_seed: int = 1
    target_space: TargetSpace = TargetSpace.OBSERVATIONS
    model_path: Optional[str] = None
    level: Optional[int] = Field(None, ge=1, le=MAX_LEVEL)
    reference_level: Optional[int] = Field(None, ge=1, le=MAX_LEVEL)
    reference_samples: int = Field(64, ge=1)
    reference_seed: int = 3
    log_every: int = Field(500, ge=1)

    @field_validator("hidden_layers")
    @classmethod
    def _check_widths(cls, value: List[int]) -> List[int]:
        if any(w < 1 for w in value):
            raise ValueError("hidden layer widths must be positive")
        return value

    @field_validator("split")
    @classmethod
    def _check_split(cls, value: Tuple[float, float, float]) -> Tuple[float, float, float]:
        if any(f < 0 for f in value) or abs(sum(value) - 1.0) > 1e-9:
            raise ValueError("split fractions must be non-negative and sum to 1")
        if value[0] <= 0:
            raise ValueError("training fraction must be positive")
        return value


class ChainsConfig(BaseModel):
    """Settings shared by every chain of a run.

    The long surrogate chain uses ``seed``, the numerical chain ``seed + 1``
    and the short surrogate chain ``seed + 2``; repeat ``r`` adds
    ``r * REPEAT_SEED_STRIDE`` to all three.

    Attributes:
        kernel: Proposal kernel; rw_reflect for uniform priors and pcn for Gaussian ones by default
        step: Random-walk standard deviation
        beta: pCN step
        ml_length: Stored states of the long surrogate chain
        num_length: Stored states of each correction chain
        burn_in_fraction: Burn-in as a fraction of the chain length
        thin: Thinning interval
        seed: Base seed
    """

    kernel: Optional[KernelType] = None
    step: float = Field(0.1, gt=0)
    beta: float = Field(0.2, gt=0, le=1)
    ml_length: int = Field(100000, ge=1)
    num_length: int = Field(4000, ge=1)
    burn_in_fraction: float = Field(DEFAULT_BURN_IN_FRACTION, ge=0, lt=1)
    thin: int = Field(1, ge=1)
    seed: int = 2024


REPEAT_SEED_STRIDE = 1000


class BudgetConfig(BaseModel):
    """Optional sample-budget rule replacing the explicit chain lengths.

    Attributes:
        epsilon: Surrogate gap; required by both rules
        C: Calibration constant of the budget formulas
        numerical_solves: Target numerical chain length; C is derived from it
    """

    epsilon: Optional[float] = None
    C: Optional[float] = Field(None, gt=0)
    numerical_solves: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _check_rule(self) -> "BudgetConfig":
        if self.C is not None and self.numerical_solves is not None:
            raise ValueError("give either C or numerical_solves, not both")
        if (self.C is not None or self.numerical_solves is not None) and self.epsilon is None:
            raise ValueError("epsilon is required by the budget rule")
        return self

    @property
    def active(self) -> bool:
        """Whether a budget rule overrides the chain lengths."""
        return self.C is not None or self.numerical_solves is not None


class QuadratureConfig(BaseModel):
    """Quadrature oracle settings.

    Attributes:
        n_points: Points per coordinate
        level: Level of the numerical model evaluated at the nodes
        gaussian_half_width: Truncation of Gaussian coordinates to [-w, w]
    """

    n_points: int = Field(32, ge=4, le=128)
    level: int = Field(10, ge=1, le=MAX_LEVEL)
    gaussian_half_width: float = Field(6.0, gt=0)


class QoiConfig(BaseModel):
    """Quantity of interest.

    Attributes:
        kind: ``parameter`` (Q(z) = z) or ``coefficient_field`` (nodal K)
        level: Mesh level of the coefficient-field QoI
    """

    kind: QoiKind = QoiKind.PARAMETER
    level: int = Field(2, ge=1, le=MAX_LEVEL)


class ExperimentConfig(BaseModel):
    """Complete description of one experiment.

    Attributes:
        problem: Built-in inverse problem
        level: Target level L of the numerical model
        prior: Prior specification
        observations: Observation data settings
        surrogate: Surrogate settings
        chains: Chain settings
        budget: Optional budget rule
        quadrature: Oracle settings
        qoi: Quantity of interest
        normalizer: Normalizer form of the Gaussian-prior estimator
        output_dir: Directory receiving every artifact
    """

    problem: ProblemKind = ProblemKind.ELLIPTIC_UNIFORM
    level: int = Field(5, ge=1, le=MAX_LEVEL)
    prior: PriorSpec = Field(default_factory=UniformPriorSpec)
    observations: ObservationConfig = Field(default_factory=ObservationConfig)
    surrogate: SurrogateConfig = Field(default_factory=SurrogateConfig)
    chains: ChainsConfig = Field(default_factory=ChainsConfig)
    budget: BudgetConfig = Field(default_factory=BudgetConfig)
    quadrature: QuadratureConfig = Field(default_factory=QuadratureConfig)
    qoi: QoiConfig = Field(default_factory=QoiConfig)
    normalizer: NormalizerForm = NormalizerForm.EXACT
    output_dir: str = "runs/default"

    @model_validator(mode="after")
    def _check_problem(self) -> "ExperimentConfig":
        if self.problem == ProblemKind.ELLIPTIC_UNIFORM.value:
            if not isinstance(self.prior, UniformPriorSpec) or self.prior.dimension != 1:
                raise ValueError("elliptic_uniform needs a one-dimensional uniform prior")
            lo, hi = self.prior.bounds[0]
            if lo < 0 or hi > 1:
                raise ValueError("elliptic_uniform prior bounds must lie inside [0, 1]")
        elif not isinstance(self.prior, GaussianPriorSpec):
            raise ValueError("elliptic_lognormal needs a gaussian prior")
        if self.observations.truth_z is not None and len(self.observations.truth_z) != self.prior.dimension:
            raise ValueError("observations.truth_z does not match the prior dimension")
        if self.surrogate.kind == SurrogateKind.NUMERICAL.value and self.surrogate.level is None:
            raise ValueError("a numerical surrogate needs surrogate.level")
        return self

    @property
    def prior_type(self) -> PriorType:
        """Prior family as an enum."""
        return PriorType(self.prior.type)

    @property
    def kernel(self) -> KernelType:
        """Kernel actually used by the chains."""
        if self.chains.kernel is not None:
            return KernelType(self.chains.kernel)
        if self.prior_type == PriorType.GAUSSIAN:
            return KernelType.PCN
        return KernelType.RW_REFLECT

    @property
    def reference_level(self) -> int:
        """Level of the high-fidelity reference: L + 5, capped at the maximum level."""
        if self.surrogate.reference_level is not None:
            return self.surrogate.reference_level
        return min(self.level + 5, MAX_LEVEL)

    @property
    def output_path(self) -> Path:
        """Output directory as a path."""
        return Path(self.output_dir)

    @property
    def model_path(self) -> Path:
        """Surrogate model file."""
        if self.surrogate.model_path is not None:
            return Path(self.surrogate.model_path)
        return self.output_path / "surrogate.hmlp"

    @property
    def observation_path(self) -> Path:
        """Observation file read by the run subcommand."""
        if self.observations.data_path is not None:
            return Path(self.observations.data_path)
        return self.output_path / "observations.json"

    def chain_config(self, length: int, seed: int) -> ChainConfig:
        """Build the ChainConfig of one chain from the shared settings."""
        return ChainConfig(
            kernel=self.kernel,
            step=self.chains.step,
            beta=self.chains.beta,
            length=length,
            burn_in=int(self.chains.burn_in_fraction * length),
            seed=seed,
            thin=self.chains.thin,
        )

    @classmethod
    def for_problem(cls, problem: Union[ProblemKind, str], **overrides: object) -> "ExperimentConfig":
        """Defaults of a built-in problem, with keyword overrides.

        The log-normal problem switches to a four-term Gaussian prior, noise
        variance 0.2 and the pCN kernel.
        """
        data: dict = {"problem": ProblemKind(problem).value}
        if ProblemKind(problem) == ProblemKind.ELLIPTIC_LOGNORMAL:
            data["prior"] = {"type": "gaussian", "n": 4}
            data["observations"] = {"sigma2": 0.2}
            data["chains"] = {"kernel": KernelType.PCN.value}
        data.update(overrides)
        return parse_model(cls, data, "experiment config")


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """Read and validate an experiment config file.

    Raises:
        HymcmcConfigurationError: Missing file, invalid JSON or schema violation
    """
    path = Path(path)
    if not path.is_file():
        raise HymcmcConfigurationError(f"Config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise HymcmcConfigurationError(f"Config file is not valid JSON: {path}", details=str(e))
    return parse_model(ExperimentConfig, data, "experiment config")


__all__ = [
    'MAX_LEVEL',
    'REPEAT_SEED_STRIDE',
    'ObservationConfig',
    'SurrogateConfig',
    'ChainsConfig',
    'BudgetConfig',
    'QuadratureConfig',
    'QoiConfig',
    'ExperimentConfig',
    'load_config',
]
