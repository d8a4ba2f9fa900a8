"""Finite-element forward solver on uniform triangulations of the unit square."""

from hymcmc.fem.io import read_solution_csv, write_solution_csv
from hymcmc.fem.mesh import MAX_LEVEL, MIN_LEVEL, Mesh, build_mesh, check_level
from hymcmc.fem.norms import l2_error, l2_norm, l2_norm_difference, mass_matrix
from hymcmc.fem.observation import (
    DEFAULT_GRID,
    ObservationLayout,
    interpolation_matrix,
    observe,
    prolong,
)
from hymcmc.fem.solver import (
    BoundarySpec,
    CoefficientField,
    FemSolution,
    assemble_and_solve,
    default_source,
    element_geometry,
    load_vector,
    reduced_system,
    stiffness_matrix,
)

__all__ = [
    # Mesh
    "Mesh",
    "MIN_LEVEL",
    "MAX_LEVEL",
    "build_mesh",
    "check_level",
    # Solver
    "BoundarySpec",
    "CoefficientField",
    "FemSolution",
    "assemble_and_solve",
    "default_source",
    "element_geometry",
    "load_vector",
    "reduced_system",
    "stiffness_matrix",
    # Observation
    "DEFAULT_GRID",
    "ObservationLayout",
    "interpolation_matrix",
    "observe",
    "prolong",
    # Norms
    "mass_matrix",
    "l2_norm",
    "l2_norm_difference",
    "l2_error",
    # IO
    "write_solution_csv",
    "read_solution_csv",
]
