"""Forward-model interface.

Numerical solvers and surrogates implement the same small interface, so the
sampler and estimators run unchanged against either of them.
"""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from hymcmc.fem.observation import ObservationLayout
from hymcmc.types.model_types import CostClass


class ForwardModel(ABC):
    """Map G: z -> R^k from parameters to observations.

    Attributes:
        cost_class: ``numerical`` or ``surrogate``
        layout: Observation points the outputs refer to, when known

    Implementations must be deterministic per z and safe to evaluate from
    several processes at once.
    """

    cost_class: CostClass = CostClass.NUMERICAL
    layout: Optional[ObservationLayout] = None

    @property
    @abstractmethod
    def input_size(self) -> int:
        """Parameter dimension n."""

    @property
    @abstractmethod
    def output_size(self) -> int:
        """Observation count k."""

    @abstractmethod
    def evaluate(self, z: np.ndarray) -> np.ndarray:
        """Model output at ``z``, shape (k,)."""

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return self.evaluate(z)

    def describe(self) -> str:
        """One-line description for logs and reports."""
        return f"{type(self).__name__}({self.cost_class})"


class CountingForwardModel(ForwardModel):
    """Wraps a model and counts its evaluations.

    Attributes:
        model: Wrapped model
        evaluations: Number of calls to :meth:`evaluate` so far

    Example:
        >>> counted = CountingForwardModel(model)
        >>> _ = counted.evaluate(np.array([0.3]))
        >>> counted.evaluations
        1
    """

    def __init__(self, model: ForwardModel):
        self.model = model
        self.cost_class = model.cost_class
        self.layout = model.layout
        self.evaluations = 0

    @property
    def input_size(self) -> int:
        return self.model.input_size

    @property
    def output_size(self) -> int:
        return self.model.output_size

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        self.evaluations += 1
        return self.model.evaluate(z)

    def reset(self) -> None:
        self.evaluations = 0

    def describe(self) -> str:
        return f"Counting[{self.model.describe()}]"


__all__ = ['ForwardModel', 'CountingForwardModel']
