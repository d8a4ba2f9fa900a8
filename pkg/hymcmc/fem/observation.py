"""Point evaluation of P1 fields and prolongation between levels."""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
import scipy.sparse as sp

from hymcmc.errors import HymcmcValidationError
from hymcmc.fem.mesh import build_mesh, check_level
from hymcmc.fem.solver import FemSolution

DEFAULT_GRID = 6


@dataclass(eq=False)
class ObservationLayout:
    """Observation coordinates, all strictly inside the unit square.

    Attributes:
        points: Coordinates, shape (k, 2), in data order
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            raise HymcmcValidationError("Layout must be a non-empty (k, 2) array", details={"shape": pts.shape})
        outside = ~np.all((pts > 0.0) & (pts < 1.0), axis=1)
        if np.any(outside):
            raise HymcmcValidationError(
                "Observation points must lie strictly inside (0, 1)^2",
                details={"points": pts[outside].tolist()}
            )
        self.points = pts

    @property
    def size(self) -> int:
        """Number of observations k."""
        return self.points.shape[0]

    @classmethod
    def lattice(cls, grid: int = DEFAULT_GRID) -> "ObservationLayout":
        """``grid x grid`` lattice at (i / (grid + 1), j / (grid + 1)), row-major.

        The default 6 x 6 lattice gives the 36 observations of the elliptic
        experiments.
        """
        if grid < 1:
            raise HymcmcValidationError("Lattice size must be positive", details={"grid": grid})
        coords = np.arange(1, grid + 1) / (grid + 1)
        xs, ys = np.meshgrid(coords, coords)
        return cls(points=np.column_stack([xs.ravel(), ys.ravel()]))


def interpolation_matrix(level: int, points: Union[np.ndarray, Sequence]) -> sp.csr_matrix:
    """Sparse (k, N) matrix evaluating a level-l P1 field at ``points``.

    Points may lie on the boundary. Inside a cell with local coordinates
    (s, t) the lower triangle (s >= t) interpolates from u00, u10, u11 and the
    upper one from u00, u01, u11.

    Raises:
        HymcmcValidationError: If a point lies outside [0, 1]^2
    """
    level = check_level(level)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if np.any(pts < 0.0) or np.any(pts > 1.0):
        raise HymcmcValidationError("Interpolation points must lie in [0, 1]^2")
    n = 1 << level
    scaled = pts * n
    cell = np.minimum(np.floor(scaled).astype(np.int64), n - 1)
    s = scaled[:, 0] - cell[:, 0]
    t = scaled[:, 1] - cell[:, 1]
    n00 = cell[:, 1] * (n + 1) + cell[:, 0]
    n10 = n00 + 1
    n01 = n00 + (n + 1)
    n11 = n01 + 1

    lower = s >= t
    third = np.where(lower, n10, n01)
    w00 = np.where(lower, 1.0 - s, 1.0 - t)
    w_third = np.where(lower, s - t, t - s)
    w11 = np.where(lower, t, s)

    k = pts.shape[0]
    rows = np.repeat(np.arange(k), 3)
    cols = np.column_stack([n00, third, n11]).ravel()
    data = np.column_stack([w00, w_third, w11]).ravel()
    return sp.csr_matrix((data, (rows, cols)), shape=(k, (n + 1) ** 2))


def observe(u: FemSolution, layout: ObservationLayout) -> np.ndarray:
    """P1 interpolation of ``u`` at each layout point, in layout order."""
    return interpolation_matrix(u.level, layout.points) @ u.values


def prolong(u: FemSolution, level: int) -> FemSolution:
    """Interpolate ``u`` onto a finer (or equal) level.

    Meshes are nested, so the prolonged field is the same piecewise-linear
    function.

    Raises:
        HymcmcValidationError: If ``level`` is coarser than ``u``
    """
    level = check_level(level)
    if level < u.level:
        raise HymcmcValidationError(
            "Cannot prolong onto a coarser level",
            details={"from": u.level, "to": level}
        )
    if level == u.level:
        return u
    nodes = build_mesh(level).nodes
    return FemSolution(level=level, values=interpolation_matrix(u.level, nodes) @ u.values)


__all__ = ['DEFAULT_GRID', 'ObservationLayout', 'interpolation_matrix', 'observe', 'prolong']
