"""Tests for uniform meshes."""

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem import build_mesh, check_level


class TestBuildMesh:
    """Test suite for build_mesh."""

    def test_level_one_counts(self):
        """Test that level 1 has 9 nodes and 8 triangles."""
        mesh = build_mesh(1)

        assert mesh.node_count == 9
        assert mesh.element_count == 8

    def test_level_five_node_count(self):
        """Test the 33 x 33 node grid of level 5."""
        mesh = build_mesh(5)

        assert mesh.node_count == 33 * 33
        assert mesh.element_count == 2 * 4 ** 5

    @pytest.mark.parametrize("level", [1, 3, 6])
    def test_mesh_size(self, level):
        """Test that h * 2^l is exactly one."""
        mesh = build_mesh(level)

        assert mesh.h * 2 ** level == 1.0
        assert mesh.cells == 2 ** level

    def test_row_major_ordering(self):
        """Test that nodes are numbered row by row with x1 fastest."""
        mesh = build_mesh(2)

        assert np.allclose(mesh.nodes[mesh.node_index(3, 1)], [0.75, 0.25])
        assert np.allclose(mesh.nodes[:5, 1], 0.0)
        assert np.allclose(mesh.nodes[:5, 0], [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_boundary_nodes(self):
        """Test the Dirichlet node sets on x1 = 0 and x1 = 1."""
        mesh = build_mesh(3)

        assert np.all(mesh.nodes[mesh.left_nodes, 0] == 0.0)
        assert np.all(mesh.nodes[mesh.right_nodes, 0] == 1.0)
        assert mesh.left_nodes.size == 9

    def test_triangles_cover_square(self):
        """Test that triangle areas are positive and sum to one."""
        mesh = build_mesh(3)
        p = mesh.nodes[mesh.elements]
        area = 0.5 * (
            (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
            - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1])
        )

        assert np.all(area > 0.0)
        assert area.sum() == pytest.approx(1.0)

    def test_deterministic(self):
        """Test that repeated builds give identical tables."""
        a = build_mesh(4)
        b = build_mesh(4)

        assert np.array_equal(a.nodes, b.nodes)
        assert np.array_equal(a.elements, b.elements)

    def test_arrays_read_only(self):
        """Test that cached mesh arrays cannot be modified."""
        mesh = build_mesh(2)

        with pytest.raises(ValueError):
            mesh.nodes[0, 0] = 5.0

    @pytest.mark.parametrize("level", [0, 11, -1])
    def test_level_out_of_range(self, level):
        """Test that levels outside 1..10 are rejected."""
        with pytest.raises(HymcmcValidationError) as exc_info:
            build_mesh(level)

        assert "1..10" in exc_info.value.message

    @pytest.mark.parametrize("level", [2.0, True, "3"])
    def test_level_must_be_integer(self, level):
        """Test that non-integer levels are rejected."""
        with pytest.raises(HymcmcValidationError):
            check_level(level)
