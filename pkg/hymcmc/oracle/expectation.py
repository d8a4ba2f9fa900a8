"""Reference posterior expectations by quadrature and by prior importance sampling."""

import logging
from typing import Callable, Tuple

import numpy as np

from hymcmc.errors import HymcmcNumericalError, HymcmcValidationError
from hymcmc.forward.base import ForwardModel
from hymcmc.forward.potential import potential
from hymcmc.models.observation import ObservationSet
from hymcmc.models.prior import UniformPriorSpec
from hymcmc.oracle.quadrature import (
    DEFAULT_HALF_WIDTH,
    MAX_TENSOR_DIMENSION,
    QuadratureRule,
    gauss_legendre,
    gaussian_rule,
    tensor_rule,
)
from hymcmc.prior.qoi import QuantityOfInterest
from hymcmc.prior.sampling import AnyPrior, draw_prior, make_rng

logger = logging.getLogger(__name__)

MIN_QUADRATURE_POINTS = 4


def _shifted_weights(weights: np.ndarray, phi: np.ndarray) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    if not np.all(np.isfinite(phi)):
        raise HymcmcNumericalError(
            "Potential is not finite at every node",
            details={"nonfinite": int(np.sum(~np.isfinite(phi)))},
        )
    return np.asarray(weights, dtype=float) * np.exp(-(phi - phi.min()))


def weighted_expectation(weights: np.ndarray, phi: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Sum(w e^-phi Q) / Sum(w e^-phi) with phi shifted by its minimum.

    Args:
        weights: Base weights, shape (k,)
        phi: Potentials, shape (k,)
        values: Q at the nodes, shape (k,) or (k, d)

    Returns:
        Array of shape () or (d,)

    Raises:
        HymcmcNumericalError: A non-finite potential or a vanishing normalizer
    """
    w = _shifted_weights(weights, phi)
    total = w.sum()
    if not total > 0.0:
        raise HymcmcNumericalError("Posterior normalizer vanished", details={"sum": float(total)})
    return np.tensordot(w, np.asarray(values, dtype=float), axes=1) / total


def prior_rule(prior: AnyPrior, n_points: int, half_width: float = DEFAULT_HALF_WIDTH) -> QuadratureRule:
    """Tensor rule integrating against the prior, up to three dimensions.

    Uniform priors get Gauss-Legendre rules on their box (the constant prior
    density cancels in posterior means); Gaussian priors get truncated
    normal-weighted rules.

    Raises:
        HymcmcValidationError: Fewer than 4 points or more than 3 dimensions
    """
    if n_points < MIN_QUADRATURE_POINTS:
        raise HymcmcValidationError(
            f"Quadrature needs at least {MIN_QUADRATURE_POINTS} points",
            details={"n_points": n_points},
        )
    if prior.dimension > MAX_TENSOR_DIMENSION:
        raise HymcmcValidationError(
            f"Quadrature is limited to {MAX_TENSOR_DIMENSION} dimensions",
            details={"dimension": prior.dimension},
        )
    if isinstance(prior, UniformPriorSpec):
        factors = [gauss_legendre(n_points, lo, hi) for lo, hi in prior.bounds]
    else:
        factors = [gaussian_rule(n_points, half_width)] * prior.dimension
    return factors[0] if len(factors) == 1 else tensor_rule(factors)


def posterior_expectation_quadrature(
    model: ForwardModel,
    obs: ObservationSet,
    prior: AnyPrior,
    qoi: QuantityOfInterest,
    n_points: int = 32,
    half_width: float = DEFAULT_HALF_WIDTH,
) -> np.ndarray:
    """Posterior mean of ``qoi`` by quadrature over the prior.

    One forward solve per node; n_points^d solves in total.

    Returns:
        Posterior mean, one entry per QoI component
    """
    rule = prior_rule(prior, n_points, half_width)
    points = rule.points
    phi = np.array([potential(model, z, obs) for z in points])
    values = np.array([np.atleast_1d(qoi(z)) for z in points], dtype=float)
    result = np.atleast_1d(weighted_expectation(rule.weights, phi, values))
    logger.info(
        "Quadrature on %s with %d nodes: %s (Phi range %.4g..%.4g)",
        model.describe(), rule.size, result.tolist(), float(phi.min()), float(phi.max()),
    )
    return result


def prior_importance_expectation(
    phi_fn: Callable[[np.ndarray], np.ndarray],
    q_fn: Callable[[np.ndarray], np.ndarray],
    prior: AnyPrior,
    samples: int,
    seed: int,
    chunk: int = 1_000_000,
) -> Tuple[np.ndarray, np.ndarray]:
    """Self-normalized importance sampling with the prior as proposal.

    ``phi_fn`` and ``q_fn`` are vectorized: they take a (m, n) array of
    parameters and return (m,) potentials and (m,) or (m, d) QoI values.

    Returns:
        The estimate and its delta-method standard error

    Raises:
        HymcmcValidationError: If ``samples < 2``
    """
    if samples < 2:
        raise HymcmcValidationError("Importance sampling needs at least two samples", details={"samples": samples})
    rng = make_rng(seed)
    zs = draw_prior(prior, rng, samples)
    phi = np.concatenate([np.asarray(phi_fn(zs[i:i + chunk]), dtype=float) for i in range(0, samples, chunk)])
    q = np.concatenate([
        np.asarray(q_fn(zs[i:i + chunk]), dtype=float).reshape(min(chunk, samples - i), -1)
        for i in range(0, samples, chunk)
    ])
    w = _shifted_weights(np.ones(samples), phi)
    w = w / w.sum()
    mean = w @ q
    se = np.sqrt(w ** 2 @ (q - mean) ** 2)
    return mean, se


__all__ = [
    'MIN_QUADRATURE_POINTS',
    'weighted_expectation',
    'prior_rule',
    'posterior_expectation_quadrature',
    'prior_importance_expectation',
]
