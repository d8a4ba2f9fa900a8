"""Prior-reversible Metropolis-Hastings proposals.

Both kernels leave the prior invariant, so the acceptance probability only
involves the potential: alpha = min(1, exp(Phi(z) - Phi(z'))).
"""

import math
from abc import ABC, abstractmethod
from typing import Union

import numpy as np

from hymcmc.errors import HymcmcValidationError
from hymcmc.models.chain import ChainConfig
from hymcmc.models.prior import GaussianPriorSpec, UniformPriorSpec
from hymcmc.types.experiment_types import KernelType


def acceptance_probability(phi_current: float, phi_proposal: float) -> float:
    """min(1, exp(phi_current - phi_proposal)); zero for a non-finite proposal."""
    if not math.isfinite(phi_proposal):
        return 0.0
    if phi_proposal <= phi_current:
        return 1.0
    return math.exp(phi_current - phi_proposal)


def reflect_into_box(x: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Fold ``x`` into [lower, upper] by repeated mirror reflection at the faces."""
    width = upper - lower
    y = np.mod(x - lower, 2.0 * width)
    y = np.where(y > width, 2.0 * width - y, y)
    return lower + y


class ProposalKernel(ABC):
    """Draws a proposal z' given the current state."""

    kind: KernelType

    @abstractmethod
    def propose(self, z: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Proposal for state ``z``."""


class ReflectedRandomWalk(ProposalKernel):
    """Gaussian random walk folded back into the prior box.

    The reflection map makes the proposal density symmetric on the box, so
    with a uniform prior the Metropolis ratio reduces to exp(Phi(z) - Phi(z')).
    """

    kind = KernelType.RW_REFLECT

    def __init__(self, step: float, lower: np.ndarray, upper: np.ndarray):
        if step <= 0:
            raise HymcmcValidationError("Random-walk step must be positive", details={"step": step})
        self.step = float(step)
        self.lower = np.asarray(lower, dtype=float)
        self.upper = np.asarray(upper, dtype=float)

    def propose(self, z: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return reflect_into_box(z + self.step * rng.standard_normal(z.shape), self.lower, self.upper)


class PreconditionedCrankNicolson(ProposalKernel):
    """z' = sqrt(1 - beta^2) z + beta xi with xi ~ N(0, I)."""

    kind = KernelType.PCN

    def __init__(self, beta: float):
        if not 0.0 < beta <= 1.0:
            raise HymcmcValidationError("pCN beta must lie in (0, 1]", details={"beta": beta})
        self.beta = float(beta)
        self._shrink = math.sqrt(1.0 - self.beta ** 2)

    def propose(self, z: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return self._shrink * z + self.beta * rng.standard_normal(z.shape)


def make_kernel(config: ChainConfig, prior: Union[UniformPriorSpec, GaussianPriorSpec]) -> ProposalKernel:
    """Kernel of a chain config.

    Raises:
        HymcmcValidationError: A random walk on a Gaussian prior or pCN on a uniform one
    """
    kind = KernelType(config.kernel)
    if kind == KernelType.RW_REFLECT:
        if not isinstance(prior, UniformPriorSpec):
            raise HymcmcValidationError("The reflected random walk needs a uniform prior")
        return ReflectedRandomWalk(config.step, prior.lower, prior.upper)
    if not isinstance(prior, GaussianPriorSpec):
        raise HymcmcValidationError("pCN needs a Gaussian prior")
    return PreconditionedCrankNicolson(config.beta)


def reflected_proposal_density(
    z: np.ndarray,
    z_prime: np.ndarray,
    step: float,
    lower: np.ndarray,
    upper: np.ndarray,
) -> float:
    """Density of the reflected random walk moving from ``z`` to ``z_prime``.

    Each coordinate sums the Gaussian density over every pre-image of
    ``z_prime`` under the folding map; images further than 8 standard
    deviations away are dropped.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    zp = np.atleast_1d(np.asarray(z_prime, dtype=float))
    lower = np.atleast_1d(np.asarray(lower, dtype=float))
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    density = 1.0
    norm = 1.0 / (step * math.sqrt(2.0 * math.pi))
    for x, y, lo, hi in zip(z, zp, lower, upper):
        w = hi - lo
        reach = int(math.ceil(8.0 * step / (2.0 * w))) + 1
        shifts = 2.0 * w * np.arange(-reach, reach + 1)
        xs, ys = x - lo, y - lo
        images = np.concatenate([ys + shifts, -ys + shifts])
        density *= float(np.sum(norm * np.exp(-0.5 * ((images - xs) / step) ** 2)))
    return density


__all__ = [
    'acceptance_probability',
    'reflect_into_box',
    'ProposalKernel',
    'ReflectedRandomWalk',
    'PreconditionedCrankNicolson',
    'make_kernel',
    'reflected_proposal_density',
]
