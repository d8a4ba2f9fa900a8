"""Tests for coefficient field construction."""

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem import build_mesh
from hymcmc.models import GaussianPriorSpec, UniformPriorSpec
from hymcmc.prior import (
    FieldBuilder,
    GaussianFieldSpec,
    LognormalFieldBuilder,
    SinDecayMode,
    UniformFieldBuilder,
    build_field_lognormal,
    build_field_uniform,
    field_builder_for,
)


class TestUniformField:
    """Test suite for build_field_uniform."""

    def test_zero_parameter_is_constant(self):
        """Test that z = 0 gives K = 2 everywhere."""
        field = build_field_uniform(np.array([0.0]), build_mesh(3))

        assert np.array_equal(field.values, np.full(81, 2.0))

    @pytest.mark.parametrize("z", [0.0, 0.3, 1.0])
    def test_bounded_below(self, z):
        """Test that K stays at or above 1 on [0, 1]."""
        field = build_field_uniform([z], build_mesh(4))

        assert field.values.min() >= 1.0 - 1e-12

    def test_value_at_node(self):
        """Test K at the node (1/4, 1/4)."""
        mesh = build_mesh(2)
        field = build_field_uniform([0.5], mesh)

        # cos(pi / 2) = 0
        assert field.values[mesh.node_index(1, 1)] == pytest.approx(2.0)
        assert field.values[mesh.node_index(0, 1)] == pytest.approx(2.5)

    @pytest.mark.parametrize("z", [[-0.1], [1.1], [0.2, 0.3]])
    def test_invalid_parameter(self, z):
        """Test that parameters outside [0, 1] or of length two are rejected."""
        with pytest.raises(HymcmcValidationError):
            build_field_uniform(z, build_mesh(1))


class TestLognormalField:
    """Test suite for the log-normal expansion."""

    def test_sin_decay_sup_norms(self):
        """Test the closed-form sup norms 0.5 / j^2."""
        spec = GaussianFieldSpec.sin_decay(4)

        assert spec.b == pytest.approx([0.5, 0.125, 0.5 / 9, 0.03125])

    def test_estimated_sup_norm(self):
        """Test that omitted sup norms are measured on a lattice."""
        spec = GaussianFieldSpec(k_star=0.0, k_bar=0.0, psi=[SinDecayMode(j=1)])

        assert spec.b[0] == pytest.approx(0.5)

    def test_zero_parameter(self):
        """Test that z = 0 gives K = K_star + exp(K_bar)."""
        spec = GaussianFieldSpec.sin_decay(3, k_star=0.5, k_bar=1.0)

        field = build_field_lognormal(np.zeros(3), spec, build_mesh(2))

        assert np.allclose(field.values, 0.5 + np.e)

    def test_strictly_positive_for_extreme_parameters(self):
        """Test positivity for very large parameters."""
        spec = GaussianFieldSpec.sin_decay(2)

        field = build_field_lognormal(np.array([-5000.0, 5000.0]), spec, build_mesh(3))

        assert np.all(field.values > 0.0)

    def test_dimension_mismatch(self):
        """Test that a parameter of the wrong length is rejected."""
        with pytest.raises(HymcmcValidationError):
            build_field_lognormal(np.zeros(2), GaussianFieldSpec.sin_decay(3), build_mesh(2))

    def test_negative_shift(self):
        """Test that a negative K_star is rejected."""
        with pytest.raises(HymcmcValidationError):
            GaussianFieldSpec(k_star=-1.0, k_bar=0.0, psi=[SinDecayMode(j=1)])


class TestFieldBuilderFor:
    """Test suite for field_builder_for."""

    def test_uniform(self):
        """Test the builder of a uniform prior."""
        assert isinstance(field_builder_for(UniformPriorSpec()), UniformFieldBuilder)
        assert isinstance(field_builder_for(UniformPriorSpec()), FieldBuilder)

    def test_base_is_abstract(self):
        """Test that the builder base cannot be instantiated."""
        with pytest.raises(TypeError):
            FieldBuilder()

    def test_gaussian(self):
        """Test the builder of a Gaussian prior."""
        builder = field_builder_for(GaussianPriorSpec(n=3))

        assert isinstance(builder, LognormalFieldBuilder)
        assert builder.spec.n == 3
        assert builder(np.zeros(3), build_mesh(1)).values.shape == (9,)
