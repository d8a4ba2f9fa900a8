"""P1 finite-element solve of div(K grad u) = f on the unit square.

Boundary conditions are Dirichlet on x1 = 0 and x1 = 1 and homogeneous
Neumann on x2 = 0 and x2 = 1. The equation is taken with the sign as
written, so the discrete system is ``A u = -F`` with the symmetric positive
definite stiffness matrix ``A``.

Example:
    >>> from hymcmc.fem import CoefficientField, assemble_and_solve, build_mesh
    >>> mesh = build_mesh(3)
    >>> u = assemble_and_solve(mesh, CoefficientField.constant(mesh, 1.0), 0.0)
    >>> abs(u.values - mesh.nodes[:, 0]).max() < 1e-10
    True
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import cg, splu

from hymcmc.errors import HymcmcNumericalError, HymcmcValidationError
from hymcmc.fem.mesh import Mesh, build_mesh

logger = logging.getLogger(__name__)

# Levels above this switch from sparse LU to Jacobi-preconditioned CG
DIRECT_SOLVE_MAX_LEVEL = 7
CG_RTOL = 1e-12

SourceFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]
Source = Union[float, SourceFunction]


def default_source(x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    """Right-hand side cos(2 pi x1) sin(2 pi x2) of the elliptic experiments."""
    return np.cos(2.0 * np.pi * x1) * np.sin(2.0 * np.pi * x2)


@dataclass(frozen=True)
class BoundarySpec:
    """Dirichlet values on the x1 faces; the x2 faces are zero-flux.

    Attributes:
        left: Value of u on x1 = 0
        right: Value of u on x1 = 1
    """

    left: float = 0.0
    right: float = 1.0


@dataclass(eq=False)
class CoefficientField:
    """Nodal values of the diffusion coefficient K.

    Attributes:
        level: Mesh level the values live on
        values: K at every node, row-major
        provenance: Short description of how the field was built
    """

    level: int
    values: np.ndarray
    provenance: str = ""

    @classmethod
    def constant(cls, mesh: Mesh, value: float) -> "CoefficientField":
        """Spatially constant field."""
        return cls(
            level=mesh.level,
            values=np.full(mesh.node_count, float(value)),
            provenance=f"constant {value!r}"
        )


@dataclass(eq=False)
class FemSolution:
    """Nodal finite-element solution u^l.

    Attributes:
        level: Mesh level
        values: u at every node, row-major
    """

    level: int
    values: np.ndarray
    solver: str = field(default="", compare=False)

    @property
    def dofs(self) -> int:
        """Number of nodal values."""
        return self.values.shape[0]

    @property
    def mesh(self) -> Mesh:
        return build_mesh(self.level)


@dataclass(frozen=True, eq=False)
class _Assembly:
    """Level-dependent pieces of the system that do not depend on K or f."""

    local: np.ndarray      # (E, 3, 3) stiffness of each element for K = 1
    areas: np.ndarray      # (E,)
    centroids: np.ndarray  # (E, 2)
    rows: np.ndarray       # (9E,)
    cols: np.ndarray       # (9E,)
    free: np.ndarray
    fixed: np.ndarray


@lru_cache(maxsize=None)
def _assembly(level: int) -> _Assembly:
    mesh = build_mesh(level)
    p = mesh.nodes[mesh.elements]  # (E, 3, 2)
    x, y = p[..., 0], p[..., 1]
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    det = b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0]
    areas = 0.5 * det
    local = (b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :]) / (4.0 * areas)[:, None, None]
    rows = np.repeat(mesh.elements, 3, axis=1).ravel()
    cols = np.tile(mesh.elements, (1, 3)).ravel()

    fixed = np.union1d(mesh.left_nodes, mesh.right_nodes)
    free = np.setdiff1d(np.arange(mesh.node_count), fixed)
    return _Assembly(
        local=local,
        areas=areas,
        centroids=p.mean(axis=1),
        rows=rows,
        cols=cols,
        free=free,
        fixed=fixed,
    )


def element_geometry(level: int) -> Tuple[np.ndarray, np.ndarray]:
    """Element areas and centroids of a level (cached)."""
    asm = _assembly(level)
    return asm.areas, asm.centroids


def stiffness_matrix(mesh: Mesh, K: CoefficientField) -> sp.csr_matrix:
    """Global stiffness matrix of -div(K grad .) before boundary elimination.

    K on each triangle is the mean of its three nodal values.

    Raises:
        HymcmcValidationError: If K does not live on the mesh or is not strictly positive
    """
    values = np.asarray(K.values, dtype=float)
    if K.level != mesh.level or values.shape != (mesh.node_count,):
        raise HymcmcValidationError(
            "Coefficient field does not match the mesh",
            details={"field_level": K.level, "mesh_level": mesh.level, "size": values.size}
        )
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise HymcmcValidationError(
            "Coefficient field must be finite and strictly positive",
            details={"min": float(np.nanmin(values)), "provenance": K.provenance}
        )
    asm = _assembly(mesh.level)
    k_elem = values[mesh.elements].mean(axis=1)
    data = (asm.local * k_elem[:, None, None]).ravel()
    n = mesh.node_count
    return sp.coo_matrix((data, (asm.rows, asm.cols)), shape=(n, n)).tocsr()


def load_vector(mesh: Mesh, f: Source) -> np.ndarray:
    """Load vector with f taken at each triangle's centroid."""
    asm = _assembly(mesh.level)
    if callable(f):
        f_elem = np.asarray(f(asm.centroids[:, 0], asm.centroids[:, 1]), dtype=float)
        f_elem = np.broadcast_to(f_elem, asm.areas.shape)
    else:
        f_elem = np.full(asm.areas.shape, float(f))
    contrib = np.repeat((f_elem * asm.areas / 3.0)[:, None], 3, axis=1)
    return np.bincount(mesh.elements.ravel(), weights=contrib.ravel(), minlength=mesh.node_count)


def reduced_system(
    mesh: Mesh,
    K: CoefficientField,
    f: Source = default_source,
    bc: BoundarySpec = BoundarySpec(),
) -> Tuple[sp.csc_matrix, np.ndarray, np.ndarray]:
    """Stiffness system with the Dirichlet nodes eliminated.

    Returns:
        The SPD matrix on the free nodes, its right-hand side and the full
        nodal vector pre-filled with the Dirichlet values
    """
    asm = _assembly(mesh.level)
    A = stiffness_matrix(mesh, K)
    rhs = -load_vector(mesh, f)
    u = np.zeros(mesh.node_count)
    u[mesh.left_nodes] = bc.left
    u[mesh.right_nodes] = bc.right
    rhs_free = rhs[asm.free] - A[asm.free][:, asm.fixed] @ u[asm.fixed]
    A_free = A[asm.free][:, asm.free].tocsc()
    return A_free, rhs_free, u


def assemble_and_solve(
    mesh: Mesh,
    K: CoefficientField,
    f: Source = default_source,
    bc: BoundarySpec = BoundarySpec(),
) -> FemSolution:
    """Solve div(K grad u) = f with the experiment's boundary conditions.

    Args:
        mesh: Level-l mesh
        K: Strictly positive nodal coefficient field on the same level
        f: Source as a constant or a vectorized function of (x1, x2)
        bc: Dirichlet values on the x1 faces

    Returns:
        Nodal solution with the Dirichlet values set exactly

    Raises:
        HymcmcValidationError: Non-positive K or a field on another level
        HymcmcNumericalError: Singular matrix, CG breakdown or non-finite output
    """
    asm = _assembly(mesh.level)
    A_free, rhs_free, u = reduced_system(mesh, K, f, bc)

    if mesh.level <= DIRECT_SOLVE_MAX_LEVEL:
        solver = "splu"
        try:
            u_free = splu(A_free).solve(rhs_free)
        except RuntimeError as e:
            raise HymcmcNumericalError("Sparse factorization failed", details=str(e))
    else:
        solver = "cg"
        diag = A_free.diagonal()
        M = sp.diags(1.0 / diag)
        u_free, info = cg(A_free, rhs_free, rtol=CG_RTOL, atol=0.0, M=M, maxiter=20 * A_free.shape[0])
        if info != 0:
            raise HymcmcNumericalError(
                "Conjugate gradient did not converge",
                details={"level": mesh.level, "info": int(info)}
            )

    if not np.all(np.isfinite(u_free)):
        raise HymcmcNumericalError("Linear solve produced non-finite values", details={"level": mesh.level})
    u[asm.free] = u_free
    logger.debug("Solved level-%d system with %s (%d unknowns)", mesh.level, solver, u_free.size)
    return FemSolution(level=mesh.level, values=u, solver=solver)


__all__ = [
    'BoundarySpec',
    'CoefficientField',
    'FemSolution',
    'DIRECT_SOLVE_MAX_LEVEL',
    'CG_RTOL',
    'default_source',
    'element_geometry',
    'stiffness_matrix',
    'load_vector',
    'reduced_system',
    'assemble_and_solve',
]
