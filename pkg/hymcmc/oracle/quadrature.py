"""Gauss-Legendre rules on intervals and small tensor grids.

Example:
    ```python
    from hymcmc.oracle import gauss_legendre

    rule = gauss_legendre(4, 0.0, 1.0)
    rule.integrate(lambda x: x ** 7)  # 0.125
    ```
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from hymcmc.errors import HymcmcValidationError

MAX_POINTS = 128
MAX_TENSOR_DIMENSION = 3
DEFAULT_HALF_WIDTH = 6.0

Interval = Tuple[float, float]


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights of a quadrature rule.

    One-dimensional rules store nodes of shape (k,); tensor rules store
    (k, d). ``domain`` holds one interval per dimension.

    Attributes:
        nodes: Quadrature nodes
        weights: Quadrature weights, shape (k,)
        domain: Integration box
    """

    nodes: np.ndarray
    weights: np.ndarray
    domain: Tuple[Interval, ...]

    @property
    def dimension(self) -> int:
        return len(self.domain)

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @property
    def points(self) -> np.ndarray:
        """Nodes as a (k, d) array."""
        return self.nodes.reshape(self.size, self.dimension)

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Sum of weights times ``f`` evaluated on the node array."""
        return float(self.weights @ np.asarray(f(self.nodes), dtype=float))


@lru_cache(maxsize=None)
def _reference_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _check_points(n: int) -> None:
    if not 1 <= n <= MAX_POINTS:
        raise HymcmcValidationError(
            f"Quadrature point count must lie in [1, {MAX_POINTS}]",
            details={"n": n},
        )


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Legendre rule mapped from [-1, 1] to [a, b].

    The rule integrates polynomials up to degree 2n - 1 exactly and its
    weights sum to b - a.

    Raises:
        HymcmcValidationError: If n is outside [1, 128] or ``b <= a``
    """
    _check_points(n)
    if not b > a:
        raise HymcmcValidationError("Interval must have b > a", details={"a": a, "b": b})
    x, w = _reference_rule(n)
    half = 0.5 * (b - a)
    nodes = 0.5 * (a + b) + half * x
    return QuadratureRule(nodes=nodes, weights=half * w, domain=((float(a), float(b)),))


def gaussian_rule(n: int, half_width: float = DEFAULT_HALF_WIDTH) -> QuadratureRule:
    """Rule for expectations under N(0, 1), truncated to [-half_width, half_width].

    Gauss-Legendre weights are multiplied by the standard normal density, so
    the weights sum to the normal mass of the interval (1 - 2e-9 at width 6).
    """
    base = gauss_legendre(n, -half_width, half_width)
    density = np.exp(-0.5 * base.nodes ** 2) / math.sqrt(2.0 * math.pi)
    return QuadratureRule(nodes=base.nodes, weights=base.weights * density, domain=base.domain)


def tensor_rule(rules: Sequence[QuadratureRule]) -> QuadratureRule:
    """Tensor product of one-dimensional rules.

    Nodes are ordered with the last coordinate varying fastest.

    Raises:
        HymcmcValidationError: For more than three factors or a multi-dimensional factor
    """
    if not 1 <= len(rules) <= MAX_TENSOR_DIMENSION:
        raise HymcmcValidationError(
            f"Tensor rules support 1 to {MAX_TENSOR_DIMENSION} dimensions",
            details={"dimension": len(rules)},
        )
    if any(r.dimension != 1 for r in rules):
        raise HymcmcValidationError("Tensor factors must be one-dimensional rules")
    nodes = np.array(list(product(*(r.nodes for r in rules))), dtype=float)
    weights = np.array([float(np.prod(ws)) for ws in product(*(r.weights for r in rules))])
    domain = tuple(r.domain[0] for r in rules)
    return QuadratureRule(nodes=nodes, weights=weights, domain=domain)


__all__ = [
    'MAX_POINTS',
    'MAX_TENSOR_DIMENSION',
    'DEFAULT_HALF_WIDTH',
    'QuadratureRule',
    'gauss_legendre',
    'gaussian_rule',
    'tensor_rule',
]
