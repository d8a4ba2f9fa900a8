"""Tests for the data-misfit potential."""

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.forward import generate_observations, potential, potential_from_output
from hymcmc.models import ObservationSet


def _obs(delta, sigma2=0.5):
    return ObservationSet(
        sigma2=sigma2,
        layout=[(0.5, 0.5)] * len(delta),
        delta=list(delta),
        truth_z=[0.0],
        seed=0,
    )


class TestPotential:
    """Test suite for the potential."""

    def test_closed_form(self):
        """Test 1/2 |delta - G|^2 / sigma2 on a hand-computed case."""
        obs = _obs([1.0, 2.0], sigma2=0.5)

        assert potential_from_output(np.array([0.0, 0.0]), obs) == pytest.approx(5.0)

    def test_zero_at_exact_data(self, coarse_model):
        """Test that noise-free data gives a zero potential at the truth."""
        obs = generate_observations(coarse_model, np.array([0.3]), 0.001, 0, noise_free=True)

        assert potential(coarse_model, np.array([0.3]), obs) == 0.0
        assert potential(coarse_model, np.array([0.7]), obs) > 0.0

    def test_non_negative(self, coarse_model, coarse_observations):
        """Test that the potential is never negative."""
        for z in np.linspace(0.0, 1.0, 5):
            assert potential(coarse_model, np.array([z]), coarse_observations) >= 0.0

    def test_length_mismatch(self):
        """Test that an output of the wrong length is rejected."""
        with pytest.raises(HymcmcValidationError):
            potential_from_output(np.zeros(3), _obs([1.0, 2.0]))
