"""Tests for the finite-element forward model."""

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem import ObservationLayout, l2_norm_difference
from hymcmc.forward import CountingForwardModel, numerical_forward
from hymcmc.prior import UniformFieldBuilder
from hymcmc.types import CostClass


class TestNumericalForwardModel:
    """Test suite for NumericalForwardModel."""

    def test_sizes(self, coarse_model):
        """Test the input and output dimensions."""
        assert coarse_model.input_size == 1
        assert coarse_model.output_size == 9
        assert coarse_model.cost_class == CostClass.NUMERICAL

    def test_affine_with_zero_source(self, small_layout):
        """Test that z = 0 with zero source observes u = x1."""
        model = numerical_forward(3, UniformFieldBuilder(), small_layout, source=0.0)

        assert np.allclose(model.evaluate(np.array([0.0])), small_layout.points[:, 0], atol=1e-10)

    def test_deterministic(self, coarse_model):
        """Test that repeated evaluations agree bit for bit."""
        z = np.array([0.42])

        assert np.array_equal(coarse_model.evaluate(z), coarse_model.evaluate(z))

    def test_depends_on_parameter(self, coarse_model):
        """Test that different parameters give different observations."""
        assert not np.allclose(coarse_model(np.array([0.1])), coarse_model(np.array([0.9])))

    def test_levels_converge(self, small_layout):
        """Test that solutions on successive levels get closer."""
        model = numerical_forward(3, UniformFieldBuilder(), small_layout)
        z = np.array([0.6])
        u3, u4, u5 = (model.at_level(level).solve(z) for level in (3, 4, 5))

        assert l2_norm_difference(u5, u4) < l2_norm_difference(u5, u3)

    def test_invalid_level(self, small_layout):
        """Test that level 11 is rejected."""
        with pytest.raises(HymcmcValidationError):
            numerical_forward(11, UniformFieldBuilder(), small_layout)

    def test_describe(self, coarse_model):
        """Test the one-line description."""
        assert "level=3" in coarse_model.describe()


class TestCountingForwardModel:
    """Test suite for CountingForwardModel."""

    def test_counts_evaluations(self, coarse_model):
        """Test that each evaluation is counted once."""
        counted = CountingForwardModel(coarse_model)

        counted.evaluate(np.array([0.3]))
        counted(np.array([0.4]))

        assert counted.evaluations == 2
        assert counted.layout is coarse_model.layout
        counted.reset()
        assert counted.evaluations == 0
