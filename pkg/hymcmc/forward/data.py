"""Synthetic observation data and its JSON file."""

import json
import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np

from hymcmc.errors import HymcmcConfigurationError, HymcmcValidationError
from hymcmc.fem.observation import ObservationLayout
from hymcmc.forward.base import ForwardModel
from hymcmc.models.base import parse_model, points_to_list
from hymcmc.models.observation import ObservationSet
from hymcmc.prior.sampling import ParameterVector, make_rng

logger = logging.getLogger(__name__)


def generate_observations(
    model: ForwardModel,
    truth_z: Union[ParameterVector, np.ndarray],
    sigma2: float,
    seed: int,
    noise_free: bool = False,
    layout: Optional[ObservationLayout] = None,
    level: Optional[int] = None,
) -> ObservationSet:
    """delta = G(truth_z) + noise with i.i.d. N(0, sigma2) noise.

    Args:
        model: Generating model
        truth_z: Parameter the data is generated from
        sigma2: Noise variance, strictly positive
        seed: Seed of the noise draw
        noise_free: Skip the noise so delta equals the model output exactly
        layout: Observation points; defaults to the model's layout
        level: Level of the generating model, recorded in the file

    Raises:
        HymcmcValidationError: Non-positive variance or no known layout
    """
    if not sigma2 > 0:
        raise HymcmcValidationError("sigma2 must be positive", details={"sigma2": sigma2})
    layout = layout or model.layout
    if layout is None:
        raise HymcmcValidationError("An observation layout is required for this model")
    z = truth_z.z if isinstance(truth_z, ParameterVector) else np.atleast_1d(np.asarray(truth_z, dtype=float))

    clean = np.asarray(model.evaluate(z), dtype=float)
    if noise_free:
        delta = clean
    else:
        delta = clean + np.sqrt(sigma2) * make_rng(seed).standard_normal(clean.shape[0])
    logger.info("Generated %d observations (sigma2=%g, seed=%d, noise_free=%s)", delta.size, sigma2, seed, noise_free)
    return ObservationSet(
        sigma2=sigma2,
        layout=points_to_list(layout.points),
        delta=[float(v) for v in delta],
        truth_z=[float(v) for v in z],
        truth_seed=seed,
        noise_free=noise_free,
        level=level,
    )


def save_observations(obs: ObservationSet, path: Union[str, Path]) -> Path:
    """Write the observation file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(obs.to_json() + "\n", encoding="utf-8")
    return path


def load_observations(path: Union[str, Path]) -> ObservationSet:
    """Read an observation file.

    Raises:
        HymcmcConfigurationError: Missing file, invalid JSON or schema violation
    """
    path = Path(path)
    if not path.is_file():
        raise HymcmcConfigurationError(f"Observation file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise HymcmcConfigurationError(f"Observation file is not valid JSON: {path}", details=str(e))
    return parse_model(ObservationSet, data, "observation file")


def layout_of(obs: ObservationSet) -> ObservationLayout:
    """Observation layout stored in an observation file."""
    return ObservationLayout(points=obs.points)


__all__ = ['generate_observations', 'save_observations', 'load_observations', 'layout_of']
