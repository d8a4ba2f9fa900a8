"""Pydantic models for hymcmc.

This package contains every config, persisted record and report, organized
by domain:
- base: shared base model and helpers
- prior: prior specifications
- observation: observation data files
- chain: chain configuration and summaries
- surrogate: optimizer constants, training reports, epsilon estimates
- dataset: dataset sidecars
- hybrid: sample budgets and hybrid estimates
- experiment: the experiment config
- report: run and aggregate reports
"""

from hymcmc.models.base import BaseModel, Point, parse_model, points_to_list
from hymcmc.models.chain import DEFAULT_BURN_IN_FRACTION, ChainConfig, ChainSummary
from hymcmc.models.dataset import DatasetMeta
from hymcmc.models.experiment import (
    MAX_LEVEL,
    REPEAT_SEED_STRIDE,
    BudgetConfig,
    ChainsConfig,
    ExperimentConfig,
    ObservationConfig,
    QoiConfig,
    QuadratureConfig,
    SurrogateConfig,
    load_config,
)
from hymcmc.models.hybrid import HybridEstimate, SampleBudget
from hymcmc.models.observation import ObservationSet
from hymcmc.models.prior import (
    GaussianFieldConfig,
    GaussianPriorSpec,
    PriorSpec,
    UniformPriorSpec,
)
from hymcmc.models.report import AggregateReport, Provenance, RunReport
from hymcmc.models.surrogate import AdamParams, SurrogateErrorEstimate, TrainingReport

__all__ = [
    # Base
    "BaseModel",
    "Point",
    "parse_model",
    "points_to_list",
    # Prior
    "UniformPriorSpec",
    "GaussianFieldConfig",
    "GaussianPriorSpec",
    "PriorSpec",
    # Observations
    "ObservationSet",
    # Chains
    "DEFAULT_BURN_IN_FRACTION",
    "ChainConfig",
    "ChainSummary",
    # Surrogate
    "AdamParams",
    "SurrogateErrorEstimate",
    "TrainingReport",
    "DatasetMeta",
    # Hybrid
    "SampleBudget",
    "HybridEstimate",
    # Experiment
    "MAX_LEVEL",
    "REPEAT_SEED_STRIDE",
    "ObservationConfig",
    "SurrogateConfig",
    "ChainsConfig",
    "BudgetConfig",
    "QuadratureConfig",
    "QoiConfig",
    "ExperimentConfig",
    "load_config",
    # Reports
    "Provenance",
    "RunReport",
    "AggregateReport",
]
