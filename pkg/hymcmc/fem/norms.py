"""L2 norms of P1 fields."""

from functools import lru_cache
from typing import Callable

import numpy as np
import scipy.sparse as sp

from hymcmc.fem.mesh import build_mesh
from hymcmc.fem.observation import prolong
from hymcmc.fem.solver import FemSolution, element_geometry

# Degree-5 seven-point rule on the reference triangle (barycentric, weights sum to 1)
_A1, _B1 = 0.059715871789770, 0.470142064105115
_A2, _B2 = 0.797426985353087, 0.101286507323456
_QUAD_BARY = np.array([
    [1 / 3, 1 / 3, 1 / 3],
    [_A1, _B1, _B1], [_B1, _A1, _B1], [_B1, _B1, _A1],
    [_A2, _B2, _B2], [_B2, _A2, _B2], [_B2, _B2, _A2],
])
_QUAD_WEIGHTS = np.array([
    0.225,
    0.132394152788506, 0.132394152788506, 0.132394152788506,
    0.125939180544827, 0.125939180544827, 0.125939180544827,
])


@lru_cache(maxsize=None)
def mass_matrix(level: int) -> sp.csr_matrix:
    """Consistent P1 mass matrix of a level."""
    mesh = build_mesh(level)
    areas, _ = element_geometry(level)
    ref = (np.ones((3, 3)) + np.eye(3)) / 12.0
    data = (areas[:, None, None] * ref[None, :, :]).ravel()
    rows = np.repeat(mesh.elements, 3, axis=1).ravel()
    cols = np.tile(mesh.elements, (1, 3)).ravel()
    n = mesh.node_count
    return sp.coo_matrix((data, (rows, cols)), shape=(n, n)).tocsr()


def l2_norm(u: FemSolution) -> float:
    """L2 norm of a P1 field, exact for the piecewise-linear function."""
    value = float(u.values @ (mass_matrix(u.level) @ u.values))
    return float(np.sqrt(max(value, 0.0)))


def l2_norm_difference(u_a: FemSolution, u_b: FemSolution) -> float:
    """L2 norm of ``u_a - u_b`` on the finer of the two meshes.

    The coarser field is prolonged by P1 interpolation first, which is exact
    on nested meshes, so the result is symmetric in its arguments.
    """
    level = max(u_a.level, u_b.level)
    diff = prolong(u_a, level).values - prolong(u_b, level).values
    return l2_norm(FemSolution(level=level, values=diff))


def l2_error(u: FemSolution, exact: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> float:
    """L2 distance between ``u`` and a closed-form function.

    Integrates with a degree-5 rule on every triangle.
    """
    mesh = build_mesh(u.level)
    areas, _ = element_geometry(u.level)
    verts = mesh.nodes[mesh.elements]                     # (E, 3, 2)
    qp = np.einsum("qv,evd->eqd", _QUAD_BARY, verts)      # (E, Q, 2)
    uh = np.einsum("qv,ev->eq", _QUAD_BARY, u.values[mesh.elements])
    err = uh - np.asarray(exact(qp[..., 0], qp[..., 1]), dtype=float)
    total = float(np.sum(areas * (err ** 2 @ _QUAD_WEIGHTS)))
    return float(np.sqrt(max(total, 0.0)))


__all__ = ['mass_matrix', 'l2_norm', 'l2_norm_difference', 'l2_error']
