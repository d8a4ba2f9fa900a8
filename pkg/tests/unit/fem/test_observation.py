"""Tests for point observations and prolongation."""

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem import (
    CoefficientField,
    FemSolution,
    ObservationLayout,
    assemble_and_solve,
    build_mesh,
    interpolation_matrix,
    observe,
    prolong,
)


def _nodal(level, fn):
    mesh = build_mesh(level)
    return FemSolution(level=level, values=fn(mesh.nodes[:, 0], mesh.nodes[:, 1]))


class TestObservationLayout:
    """Test suite for ObservationLayout."""

    def test_default_lattice(self):
        """Test the 6 x 6 lattice at multiples of 1/7."""
        layout = ObservationLayout.lattice()

        assert layout.size == 36
        assert np.allclose(layout.points[0], [1 / 7, 1 / 7])
        assert np.allclose(layout.points[1], [2 / 7, 1 / 7])
        assert np.allclose(layout.points[-1], [6 / 7, 6 / 7])

    @pytest.mark.parametrize("point", [[0.0, 0.5], [0.5, 1.0], [1.2, 0.3]])
    def test_points_must_be_interior(self, point):
        """Test that boundary or exterior points are rejected."""
        with pytest.raises(HymcmcValidationError):
            ObservationLayout(points=np.array([point]))

    def test_bad_lattice(self):
        """Test that an empty lattice is rejected."""
        with pytest.raises(HymcmcValidationError):
            ObservationLayout.lattice(0)


class TestObserve:
    """Test suite for observe."""

    def test_affine_field(self):
        """Test that interpolating u = x1 at (3/7, 1/7) gives 3/7."""
        u = _nodal(3, lambda x1, x2: x1.copy())
        layout = ObservationLayout(points=np.array([[3 / 7, 1 / 7]]))

        assert observe(u, layout)[0] == pytest.approx(3 / 7, abs=1e-14)

    def test_zero_field(self):
        """Test that a zero field observes to a zero vector."""
        u = _nodal(2, lambda x1, x2: np.zeros_like(x1))

        assert np.array_equal(observe(u, ObservationLayout.lattice()), np.zeros(36))

    def test_node_coincident_point(self):
        """Test that a point on a node returns the nodal value."""
        mesh = build_mesh(1)
        u = _nodal(1, lambda x1, x2: x1 ** 2)

        value = observe(u, ObservationLayout(points=np.array([[0.5, 0.5]])))[0]

        assert value == pytest.approx(u.values[mesh.node_index(1, 1)])

    def test_affine_in_both_coordinates(self):
        """Test exact interpolation of a general affine function."""
        u = _nodal(2, lambda x1, x2: 1.0 + 2.0 * x1 - 3.0 * x2)
        layout = ObservationLayout.lattice()
        expected = 1.0 + 2.0 * layout.points[:, 0] - 3.0 * layout.points[:, 1]

        assert np.allclose(observe(u, layout), expected, atol=1e-13)

    def test_rows_are_partitions_of_unity(self):
        """Test that every interpolation row sums to one."""
        M = interpolation_matrix(4, np.random.default_rng(0).uniform(size=(50, 2)))

        assert np.allclose(np.asarray(M.sum(axis=1)).ravel(), 1.0)

    def test_interpolation_outside_square(self):
        """Test that points outside the closed square are rejected."""
        with pytest.raises(HymcmcValidationError):
            interpolation_matrix(2, [[1.5, 0.5]])

    def test_solution_observed_in_layout_order(self):
        """Test that observations of the affine solution follow the layout order."""
        mesh = build_mesh(3)
        u = assemble_and_solve(mesh, CoefficientField.constant(mesh, 1.0), 0.0)
        layout = ObservationLayout.lattice(3)

        assert np.allclose(observe(u, layout), layout.points[:, 0], atol=1e-10)


class TestProlong:
    """Test suite for prolong."""

    def test_prolong_preserves_function(self):
        """Test that prolongation keeps the nodal values of the coarse mesh."""
        coarse = _nodal(2, lambda x1, x2: np.sin(x1) + x2 ** 2)
        fine = prolong(coarse, 4)
        fine_mesh = build_mesh(4)
        shared = [fine_mesh.node_index(4 * i, 4 * j) for j in range(5) for i in range(5)]

        assert fine.level == 4
        assert np.allclose(fine.values[shared], coarse.values)

    def test_prolong_same_level(self):
        """Test that prolonging onto the same level returns the field."""
        u = _nodal(3, lambda x1, x2: x1 * x2)

        assert prolong(u, 3) is u

    def test_prolong_to_coarser(self):
        """Test that prolonging onto a coarser level is rejected."""
        u = _nodal(3, lambda x1, x2: x1)

        with pytest.raises(HymcmcValidationError):
            prolong(u, 2)
