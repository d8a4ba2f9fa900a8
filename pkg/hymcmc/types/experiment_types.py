"""Sampler and experiment type definitions and enumerations."""

from enum import Enum


class KernelType(str, Enum):
    """Metropolis-Hastings proposal kernels."""

    RW_REFLECT = "rw_reflect"
    """Gaussian random walk reflected into the prior box"""

    PCN = "pcn"
    """Preconditioned Crank-Nicolson for standard normal priors"""


class ProblemKind(str, Enum):
    """Built-in inverse problems."""

    ELLIPTIC_UNIFORM = "elliptic_uniform"
    """Scalar z ~ U[0, 1], K = z cos(2 pi x1) sin(2 pi x2) + 2"""

    ELLIPTIC_LOGNORMAL = "elliptic_lognormal"
    """z ~ N(0, I), K = K_star + exp(K_bar + sum z_j psi_j)"""


class RunMode(str, Enum):
    """Estimation modes of the run subcommand."""

    NUMERICAL = "numerical"
    """Single chain on the numerical model"""

    ML = "ml"
    """Single chain on the surrogate"""

    HYBRID = "hybrid"
    """Surrogate chain corrected by short numerical chains"""

    QUADRATURE = "quadrature"
    """Gauss-Legendre posterior expectation"""


class NormalizerForm(str, Enum):
    """How the Gaussian-prior estimator forms its normalizing constants."""

    EXACT = "exact"
    """Ratio (1 + a5) / (1 - a6); exact telescoping"""

    SWITCHED = "switched"
    """Branch-restricted means used directly as the constants"""


__all__ = ['KernelType', 'ProblemKind', 'RunMode', 'NormalizerForm']
