"""Parameter vectors and prior samplers.

Every random draw in the package goes through :func:`make_rng`, a NumPy
``Generator`` on the PCG64 bit generator seeded with an explicit integer.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from hymcmc.errors import HymcmcValidationError
from hymcmc.models.prior import GaussianPriorSpec, UniformPriorSpec
from hymcmc.types.prior_types import PriorType

logger = logging.getLogger(__name__)

AnyPrior = Union[UniformPriorSpec, GaussianPriorSpec]


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator."""
    return np.random.Generator(np.random.PCG64(seed))


def prior_type(prior: AnyPrior) -> PriorType:
    return PriorType(prior.type)


def in_support(prior: AnyPrior, z: np.ndarray) -> bool:
    """Whether ``z`` lies in the prior's support (always true for Gaussian priors)."""
    if isinstance(prior, UniformPriorSpec):
        return bool(np.all(z >= prior.lower) and np.all(z <= prior.upper))
    return bool(np.all(np.isfinite(z)))


@dataclass(eq=False)
class ParameterVector:
    """A parameter z together with the prior it belongs to.

    Attributes:
        z: Parameter values, shape (n,)
        prior: Uniform box or standard normal prior

    Raises:
        HymcmcValidationError: Wrong dimension, or a uniform parameter outside its box
    """

    z: np.ndarray
    prior: AnyPrior

    def __post_init__(self) -> None:
        z = np.atleast_1d(np.asarray(self.z, dtype=float))
        if z.ndim != 1 or z.shape[0] != self.prior.dimension:
            raise HymcmcValidationError(
                "Parameter dimension does not match the prior",
                details={"expected": self.prior.dimension, "shape": z.shape}
            )
        if not in_support(self.prior, z):
            raise HymcmcValidationError(
                "Parameter lies outside the prior support",
                details={"z": z.tolist()}
            )
        self.z = z

    @property
    def dimension(self) -> int:
        return self.z.shape[0]

    @property
    def domain_tag(self) -> PriorType:
        """``uniform`` for box priors, ``gaussian`` for i.i.d. normal ones."""
        return prior_type(self.prior)


def draw_prior(prior: AnyPrior, rng: np.random.Generator, count: Optional[int] = None) -> np.ndarray:
    """Draw raw parameter arrays from the prior.

    Returns:
        Shape (n,) when ``count`` is None, else (count, n)
    """
    shape = (prior.dimension,) if count is None else (count, prior.dimension)
    if isinstance(prior, UniformPriorSpec):
        return prior.lower + (prior.upper - prior.lower) * rng.random(shape)
    return rng.standard_normal(shape)


def sample_prior(prior: AnyPrior, rng_seed: int, count: int) -> List[ParameterVector]:
    """I.i.d. prior draws, deterministic given the seed.

    Args:
        prior: Prior specification
        rng_seed: Seed of the PCG64 generator
        count: Number of draws, at least 1

    Returns:
        ``count`` parameter vectors

    Raises:
        HymcmcValidationError: If count < 1
    """
    if count < 1:
        raise HymcmcValidationError("count must be at least 1", details={"count": count})
    draws = draw_prior(prior, make_rng(rng_seed), count)
    logger.debug("Drew %d samples from the %s prior (seed %d)", count, prior.type, rng_seed)
    return [ParameterVector(z=row, prior=prior) for row in draws]


__all__ = [
    'AnyPrior',
    'ParameterVector',
    'make_rng',
    'prior_type',
    'in_support',
    'draw_prior',
    'sample_prior',
]
