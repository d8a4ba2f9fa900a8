"""Hybrid two-level estimators, correction terms and sample budgets."""

from hymcmc.hybrid.budget import budget_for_numerical_solves, select_budget
from hymcmc.hybrid.estimators import (
    assemble_gaussian,
    assemble_uniform,
    hybrid_estimate_gaussian,
    hybrid_estimate_uniform,
    normalizing_constants,
)
from hymcmc.hybrid.statistics import DEFAULT_BATCHES, batch_means_standard_error, combine_standard_errors
from hymcmc.hybrid.terms import (
    A_TERM_NAMES,
    DualPotentialSample,
    WeightFactors,
    a_term_arrays,
    a_terms,
    delta_of,
    switching_indicator,
    weight_factors,
    write_a_terms_csv,
)

__all__ = [
    # Terms
    "A_TERM_NAMES",
    "DualPotentialSample",
    "WeightFactors",
    "switching_indicator",
    "delta_of",
    "weight_factors",
    "a_term_arrays",
    "a_terms",
    "write_a_terms_csv",
    # Estimators
    "assemble_uniform",
    "assemble_gaussian",
    "normalizing_constants",
    "hybrid_estimate_uniform",
    "hybrid_estimate_gaussian",
    # Standard errors
    "DEFAULT_BATCHES",
    "batch_means_standard_error",
    "combine_standard_errors",
    # Budgets
    "select_budget",
    "budget_for_numerical_solves",
]
