"""Tests for the quadrature rules."""

import math

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.oracle import gauss_legendre, gaussian_rule, tensor_rule


class TestGaussLegendre:
    """Test suite for gauss_legendre."""

    def test_two_points(self):
        """Test the nodes and weights of the two-point rule."""
        rule = gauss_legendre(2)

        assert np.allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)])
        assert np.allclose(rule.weights, [1.0, 1.0])

    def test_exact_to_degree_2n_minus_1(self):
        """Test that x^7 on [0, 1] is exact with four points."""
        rule = gauss_legendre(4, 0.0, 1.0)

        assert rule.integrate(lambda x: x ** 7) == pytest.approx(0.125, abs=1e-14)
        assert rule.integrate(lambda x: x ** 8) != pytest.approx(1 / 9, abs=1e-8)

    def test_weights_sum_to_length(self):
        """Test that weights sum to b - a."""
        assert gauss_legendre(17, -2.0, 3.5).weights.sum() == pytest.approx(5.5)

    def test_nodes_inside_interval(self):
        """Test that mapped nodes lie strictly inside the interval."""
        rule = gauss_legendre(128, 0.0, 1.0)

        assert rule.nodes.min() > 0.0 and rule.nodes.max() < 1.0
        assert rule.domain == ((0.0, 1.0),)
        assert rule.points.shape == (128, 1)

    @pytest.mark.parametrize("n", [0, 129])
    def test_rejects_point_count(self, n):
        """Test that counts outside [1, 128] are rejected."""
        with pytest.raises(HymcmcValidationError):
            gauss_legendre(n)

    def test_rejects_empty_interval(self):
        """Test that b <= a is rejected."""
        with pytest.raises(HymcmcValidationError):
            gauss_legendre(4, 1.0, 1.0)


class TestGaussianRule:
    """Test suite for gaussian_rule."""

    def test_moments(self):
        """Test the first moments of the standard normal."""
        rule = gaussian_rule(64)

        assert rule.weights.sum() == pytest.approx(1.0, abs=1e-8)
        assert rule.integrate(lambda x: x) == pytest.approx(0.0, abs=1e-12)
        assert rule.integrate(lambda x: x ** 2) == pytest.approx(1.0, abs=1e-6)
        assert rule.integrate(lambda x: x ** 4) == pytest.approx(3.0, abs=1e-5)

    def test_truncation(self):
        """Test that the nodes stay inside the half-width."""
        rule = gaussian_rule(32, 3.0)

        assert np.all(np.abs(rule.nodes) < 3.0)
        assert rule.weights.sum() < 1.0


class TestTensorRule:
    """Test suite for tensor_rule."""

    def test_last_coordinate_fastest(self):
        """Test node ordering and product weights."""
        a = gauss_legendre(2, 0.0, 1.0)
        b = gauss_legendre(3, 0.0, 2.0)

        rule = tensor_rule([a, b])

        assert rule.points.shape == (6, 2)
        assert np.allclose(rule.points[:3, 0], a.nodes[0])
        assert np.allclose(rule.points[:3, 1], b.nodes)
        assert rule.weights[4] == pytest.approx(a.weights[1] * b.weights[1])
        assert rule.domain == ((0.0, 1.0), (0.0, 2.0))

    def test_integrates_products(self):
        """Test that a separable polynomial is integrated exactly."""
        rule = tensor_rule([gauss_legendre(4, 0.0, 1.0)] * 3)
        pts = rule.points

        total = float(rule.weights @ (pts[:, 0] * pts[:, 1] ** 2 * pts[:, 2] ** 3))

        assert total == pytest.approx(1 / 24, abs=1e-14)

    def test_rejects_four_factors(self):
        """Test that more than three factors are rejected."""
        with pytest.raises(HymcmcValidationError):
            tensor_rule([gauss_legendre(2)] * 4)

    def test_rejects_empty(self):
        """Test that an empty factor list is rejected."""
        with pytest.raises(HymcmcValidationError):
            tensor_rule([])

    def test_rejects_tensor_factor(self):
        """Test that factors must be one-dimensional."""
        square = tensor_rule([gauss_legendre(2)] * 2)

        with pytest.raises(HymcmcValidationError):
            tensor_rule([square, gauss_legendre(2)])
