"""Forward models, potentials and observation data."""

from hymcmc.forward.base import CountingForwardModel, ForwardModel
from hymcmc.forward.data import (
    generate_observations,
    layout_of,
    load_observations,
    save_observations,
)
from hymcmc.forward.numerical import NumericalForwardModel, numerical_forward
from hymcmc.forward.potential import potential, potential_from_output

__all__ = [
    "ForwardModel",
    "CountingForwardModel",
    "NumericalForwardModel",
    "numerical_forward",
    "potential",
    "potential_from_output",
    "generate_observations",
    "save_observations",
    "load_observations",
    "layout_of",
]
