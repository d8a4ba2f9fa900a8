"""Pytest configuration and shared fixtures for hymcmc tests."""

from pathlib import Path
from typing import Callable, Optional

import numpy as np
import pytest

from hymcmc.fem.observation import ObservationLayout
from hymcmc.forward.data import generate_observations
from hymcmc.forward.numerical import NumericalForwardModel, numerical_forward
from hymcmc.models import ChainConfig, ExperimentConfig, GaussianPriorSpec, ObservationSet, UniformPriorSpec
from hymcmc.prior.fields import UniformFieldBuilder
from hymcmc.sampler.chain import Chain


# Test configuration
TRUTH_Z = 0.3
SIGMA2 = 0.001
NOISE_SEED = 11


@pytest.fixture
def uniform_prior() -> UniformPriorSpec:
    """Scalar U[0, 1] prior."""
    return UniformPriorSpec()


@pytest.fixture
def gaussian_prior() -> GaussianPriorSpec:
    """Two-term standard normal prior."""
    return GaussianPriorSpec(n=2)


@pytest.fixture
def small_layout() -> ObservationLayout:
    """3 x 3 observation lattice."""
    return ObservationLayout.lattice(3)


@pytest.fixture
def coarse_model(small_layout: ObservationLayout) -> NumericalForwardModel:
    """Uniform-prior elliptic model on level 3."""
    return numerical_forward(3, UniformFieldBuilder(), small_layout, n=1)


@pytest.fixture
def coarse_observations(coarse_model: NumericalForwardModel) -> ObservationSet:
    """Noisy data generated by the level-3 model at z = 0.3."""
    return generate_observations(coarse_model, np.array([TRUTH_Z]), SIGMA2, NOISE_SEED, level=3)


def make_chain(
    states: np.ndarray,
    potentials: np.ndarray,
    qoi: Optional[np.ndarray] = None,
    companion: Optional[np.ndarray] = None,
    seed: int = 0,
) -> Chain:
    """Chain built directly from arrays, for estimator tests."""
    states = np.asarray(states, dtype=float).reshape(len(potentials), -1)
    qoi = states.copy() if qoi is None else np.asarray(qoi, dtype=float).reshape(len(potentials), -1)
    m = states.shape[0]
    return Chain(
        config=ChainConfig(length=m, seed=seed, burn_in=0),
        states=states,
        potentials=np.asarray(potentials, dtype=float),
        qoi=qoi,
        accepted=np.ones(m, dtype=bool),
        steps=np.arange(1, m + 1),
        companion_potentials=None if companion is None else np.asarray(companion, dtype=float),
        acceptance_rate=1.0,
        model_evaluations=m,
        companion_evaluations=0 if companion is None else m,
        labels=[f"qoi_{i + 1}" for i in range(qoi.shape[1])],
    )


@pytest.fixture
def chain_factory() -> Callable[..., Chain]:
    """Fixture exposing :func:`make_chain`."""
    return make_chain


@pytest.fixture
def smoke_config(tmp_path: Path) -> ExperimentConfig:
    """Tiny uniform experiment with a level-2 numerical surrogate."""
    return ExperimentConfig.model_validate({
        "problem": "elliptic_uniform",
        "level": 3,
        "observations": {"sigma2": SIGMA2, "truth_z": [TRUTH_Z], "seed": NOISE_SEED, "grid": 3},
        "surrogate": {"kind": "numerical", "level": 2},
        "chains": {"ml_length": 400, "num_length": 200, "step": 0.05, "seed": 5},
        "quadrature": {"n_points": 16, "level": 4},
        "output_dir": str(tmp_path / "run"),
    })


@pytest.fixture
def mlp_config(tmp_path: Path) -> ExperimentConfig:
    """Tiny uniform experiment with a small trained network."""
    return ExperimentConfig.model_validate({
        "problem": "elliptic_uniform",
        "level": 3,
        "observations": {"sigma2": SIGMA2, "truth_z": [TRUTH_Z], "seed": NOISE_SEED, "grid": 3},
        "surrogate": {
            "kind": "mlp",
            "hidden_layers": [16],
            "epochs": 30,
            "dataset_size": 40,
            "reference_level": 4,
            "reference_samples": 3,
            "log_every": 10,
        },
        "chains": {"ml_length": 200, "num_length": 100, "step": 0.05, "seed": 5},
        "output_dir": str(tmp_path / "mlp"),
    })
