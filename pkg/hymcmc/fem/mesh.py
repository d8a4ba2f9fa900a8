"""Uniform triangulations of the unit square.

Level ``l`` has mesh size h = 2^-l and (2^l + 1)^2 nodes numbered row-major,
``node = j * (n + 1) + i`` with ``n = 2^l`` and ``(i, j)`` the column and row
index. Every square cell is cut along its lower-left to upper-right diagonal,
so a level-l mesh has 2 * 4^l triangles and each mesh refines the previous
one exactly.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from hymcmc.errors import HymcmcValidationError

logger = logging.getLogger(__name__)

MIN_LEVEL = 1
MAX_LEVEL = 10


@dataclass(frozen=True, eq=False)
class Mesh:
    """Level-l triangulation of [0, 1]^2.

    Attributes:
        level: Refinement level l
        nodes: Node coordinates, shape (N, 2)
        elements: Counter-clockwise vertex indices, shape (2 * 4^l, 3)

    Example:
        >>> mesh = build_mesh(1)
        >>> mesh.node_count, mesh.element_count
        (9, 8)
    """

    level: int
    nodes: np.ndarray
    elements: np.ndarray

    @property
    def cells(self) -> int:
        """Cells per axis, 2^l."""
        return 1 << self.level

    @property
    def h(self) -> float:
        """Mesh size 2^-l."""
        return 1.0 / self.cells

    @property
    def node_count(self) -> int:
        return self.nodes.shape[0]

    @property
    def element_count(self) -> int:
        return self.elements.shape[0]

    def node_index(self, i: int, j: int) -> int:
        """Index of the node in column ``i`` and row ``j``."""
        return j * (self.cells + 1) + i

    @property
    def left_nodes(self) -> np.ndarray:
        """Nodes on x1 = 0."""
        return np.arange(0, self.node_count, self.cells + 1)

    @property
    def right_nodes(self) -> np.ndarray:
        """Nodes on x1 = 1."""
        return np.arange(self.cells, self.node_count, self.cells + 1)


def check_level(level: int) -> int:
    """Validate a mesh level.

    Raises:
        HymcmcValidationError: If the level lies outside 1..10
    """
    if isinstance(level, bool) or not isinstance(level, (int, np.integer)):
        raise HymcmcValidationError("Mesh level must be an integer", details={"level": level})
    if not MIN_LEVEL <= level <= MAX_LEVEL:
        raise HymcmcValidationError(
            f"Mesh level must lie in {MIN_LEVEL}..{MAX_LEVEL}",
            details={"level": int(level)}
        )
    return int(level)


def build_mesh(level: int) -> Mesh:
    """Build (or fetch the cached) level-l mesh.

    Args:
        level: Refinement level, 1 <= level <= 10

    Returns:
        The mesh; its arrays are read-only and shared between callers

    Raises:
        HymcmcValidationError: If the level is out of range
    """
    return _build_mesh(check_level(level))


@lru_cache(maxsize=None)
def _build_mesh(level: int) -> Mesh:
    n = 1 << level
    coords = np.linspace(0.0, 1.0, n + 1)
    xs, ys = np.meshgrid(coords, coords)
    nodes = np.column_stack([xs.ravel(), ys.ravel()])

    jj, ii = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    n00 = (jj * (n + 1) + ii).ravel()
    n10 = n00 + 1
    n01 = n00 + (n + 1)
    n11 = n01 + 1
    lower = np.column_stack([n00, n10, n11])
    upper = np.column_stack([n00, n11, n01])
    # both triangles of a cell are stored next to each other
    elements = np.empty((2 * n * n, 3), dtype=np.int64)
    elements[0::2] = lower
    elements[1::2] = upper

    nodes.setflags(write=False)
    elements.setflags(write=False)
    logger.debug("Built level-%d mesh: %d nodes, %d triangles", level, nodes.shape[0], elements.shape[0])
    return Mesh(level=level, nodes=nodes, elements=elements)


__all__ = ['Mesh', 'MIN_LEVEL', 'MAX_LEVEL', 'build_mesh', 'check_level']
