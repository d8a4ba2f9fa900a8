"""Data-misfit potential Phi(z) = 1/2 |delta - G(z)|^2 / sigma^2."""

import numpy as np

from hymcmc.errors import HymcmcValidationError
from hymcmc.forward.base import ForwardModel
from hymcmc.models.observation import ObservationSet


def potential_from_output(output: np.ndarray, obs: ObservationSet) -> float:
    """Potential of an already computed model output.

    Raises:
        HymcmcValidationError: If the output length differs from the data length
    """
    output = np.asarray(output, dtype=float)
    delta = obs.delta_array
    if output.shape != delta.shape:
        raise HymcmcValidationError(
            "Model output does not match the observation count",
            details={"output": output.shape, "observations": delta.shape}
        )
    residual = delta - output
    return 0.5 * float(residual @ residual) / obs.sigma2


def potential(model: ForwardModel, z: np.ndarray, obs: ObservationSet) -> float:
    """Phi(z; delta) under ``model``; zero exactly when the model reproduces the data."""
    return potential_from_output(model.evaluate(np.asarray(z, dtype=float)), obs)


__all__ = ['potential', 'potential_from_output']
