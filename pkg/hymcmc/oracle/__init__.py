"""Reference expectations: Gauss-Legendre rules and importance sampling."""

from hymcmc.oracle.expectation import (
    MIN_QUADRATURE_POINTS,
    posterior_expectation_quadrature,
    prior_importance_expectation,
    prior_rule,
    weighted_expectation,
)
from hymcmc.oracle.quadrature import (
    DEFAULT_HALF_WIDTH,
    MAX_POINTS,
    MAX_TENSOR_DIMENSION,
    QuadratureRule,
    gauss_legendre,
    gaussian_rule,
    tensor_rule,
)

__all__ = [
    # Rules
    "MAX_POINTS",
    "MAX_TENSOR_DIMENSION",
    "DEFAULT_HALF_WIDTH",
    "QuadratureRule",
    "gauss_legendre",
    "gaussian_rule",
    "tensor_rule",
    # Expectations
    "MIN_QUADRATURE_POINTS",
    "weighted_expectation",
    "prior_rule",
    "posterior_expectation_quadrature",
    "prior_importance_expectation",
]
