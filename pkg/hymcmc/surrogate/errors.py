"""Surrogate gap epsilon and the error measurements feeding it."""

import logging
import math
from typing import Tuple

import numpy as np

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem.norms import l2_norm_difference
from hymcmc.forward.base import ForwardModel
from hymcmc.forward.numerical import NumericalForwardModel
from hymcmc.models.surrogate import SurrogateErrorEstimate
from hymcmc.prior.sampling import AnyPrior, draw_prior, make_rng
from hymcmc.surrogate.forward import SurrogateForwardModel
from hymcmc.types.model_types import TargetSpace

logger = logging.getLogger(__name__)


def estimate_epsilon(err_ml: float, err_num: float) -> SurrogateErrorEstimate:
    """epsilon = log2(err_ml / err_num).

    Example:
        >>> round(estimate_epsilon(3.132e-4, 5.576e-5).epsilon, 2)
        2.49

    Raises:
        HymcmcValidationError: If either error is not strictly positive
    """
    if not (err_ml > 0 and err_num > 0) or not (math.isfinite(err_ml) and math.isfinite(err_num)):
        raise HymcmcValidationError(
            "Errors must be finite and strictly positive",
            details={"err_ml": err_ml, "err_num": err_num}
        )
    return SurrogateErrorEstimate(err_ml=err_ml, err_num=err_num, epsilon=math.log2(err_ml / err_num))


def _field_of(model: ForwardModel, z: np.ndarray):
    if isinstance(model, NumericalForwardModel):
        return model.solve(z)
    if isinstance(model, SurrogateForwardModel) and model.target_space == TargetSpace.FIELD:
        return model.field(z)
    return None


def measure_surrogate_errors(
    surrogate: ForwardModel,
    numerical: NumericalForwardModel,
    reference_level: int,
    prior: AnyPrior,
    samples: int = 64,
    seed: int = 3,
) -> Tuple[float, float]:
    """Mean errors of the surrogate and of G^L against a finer reference.

    Both errors are averaged over ``samples`` prior draws. When the surrogate
    produces fields the norm is the L2 norm of the field difference on the
    reference mesh; otherwise it is the root-mean-square difference of the
    observation vectors, for both models alike.

    Returns:
        ``(err_ml, err_num)``

    Raises:
        HymcmcValidationError: If the reference level is not finer than the numerical level
    """
    if reference_level <= numerical.level:
        raise HymcmcValidationError(
            "The reference level must be finer than the numerical level",
            details={"numerical": numerical.level, "reference": reference_level}
        )
    reference = numerical.at_level(reference_level)
    zs = draw_prior(prior, make_rng(seed), samples)
    field_mode = _field_of(surrogate, zs[0]) is not None

    err_ml = np.empty(samples)
    err_num = np.empty(samples)
    for i, z in enumerate(zs):
        if field_mode:
            u_ref = reference.solve(z)
            err_num[i] = l2_norm_difference(numerical.solve(z), u_ref)
            err_ml[i] = l2_norm_difference(_field_of(surrogate, z), u_ref)
        else:
            g_ref = reference.evaluate(z)
            err_num[i] = float(np.sqrt(np.mean((numerical.evaluate(z) - g_ref) ** 2)))
            err_ml[i] = float(np.sqrt(np.mean((surrogate.evaluate(z) - g_ref) ** 2)))
    result = float(err_ml.mean()), float(err_num.mean())
    logger.info(
        "Measured errors against level %d over %d draws (%s norm): err_ml=%.4e err_num=%.4e",
        reference_level, samples, "field" if field_mode else "observation", *result,
    )
    return result


__all__ = ['estimate_epsilon', 'measure_surrogate_errors']
