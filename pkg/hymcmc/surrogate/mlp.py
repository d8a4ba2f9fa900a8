"""Fully connected ReLU network stored as plain NumPy arrays.

Training happens in torch (see :mod:`hymcmc.surrogate.training`); the
trained weights are copied out so that evaluation is a NumPy forward pass
with no torch dependency at sampling time.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from hymcmc.errors import HymcmcValidationError


@dataclass(eq=False)
class MlpModel:
    """Weights and normalization constants of a trained network.

    Layer ``i`` computes ``W_i x + b_i`` with ``W_i`` of shape (out, in);
    hidden layers apply ReLU, the output layer is linear. Inputs are mapped
    affinely from [input_lo, input_hi] to [-1, 1] and outputs are
    de-standardized with ``out_mean + out_scale * y``.

    Attributes:
        weights: Weight matrices, input layer first
        biases: Bias vectors
        input_lo: Lower end of the input normalization range
        input_hi: Upper end of the input normalization range
        out_mean: Output shift
        out_scale: Output scale
        meta: Training metadata (epochs, seed, losses, target space)
    """

    weights: List[np.ndarray]
    biases: List[np.ndarray]
    input_lo: np.ndarray
    input_hi: np.ndarray
    out_mean: np.ndarray
    out_scale: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.weights = [np.asarray(w, dtype=np.float64) for w in self.weights]
        self.biases = [np.asarray(b, dtype=np.float64) for b in self.biases]
        self.input_lo = np.asarray(self.input_lo, dtype=np.float64)
        self.input_hi = np.asarray(self.input_hi, dtype=np.float64)
        self.out_mean = np.asarray(self.out_mean, dtype=np.float64)
        self.out_scale = np.asarray(self.out_scale, dtype=np.float64)
        self._check()

    def _check(self) -> None:
        if not self.weights or len(self.weights) != len(self.biases):
            raise HymcmcValidationError("A network needs matching weight and bias lists")
        for i, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.ndim != 2 or b.shape != (w.shape[0],):
                raise HymcmcValidationError("Malformed layer", details={"layer": i, "weights": w.shape, "bias": b.shape})
            if i and w.shape[1] != self.weights[i - 1].shape[0]:
                raise HymcmcValidationError("Layer shapes do not chain", details={"layer": i})
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise HymcmcValidationError("Network weights must be finite", details={"layer": i})
        n_in, n_out = self.layer_sizes[0], self.layer_sizes[-1]
        if self.input_lo.shape != (n_in,) or self.input_hi.shape != (n_in,):
            raise HymcmcValidationError("Input normalization does not match the input layer")
        if np.any(self.input_hi <= self.input_lo):
            raise HymcmcValidationError("Input normalization range must be non-empty")
        if self.out_mean.shape != (n_out,) or self.out_scale.shape != (n_out,):
            raise HymcmcValidationError("Output normalization does not match the output layer")

    @property
    def layer_sizes(self) -> List[int]:
        """Widths from input to output, e.g. [1, 512, 512, 36]."""
        return [self.weights[0].shape[1]] + [w.shape[0] for w in self.weights]

    def normalize_inputs(self, z: np.ndarray) -> np.ndarray:
        return 2.0 * (z - self.input_lo) / (self.input_hi - self.input_lo) - 1.0

    def arrays(self) -> List[np.ndarray]:
        """Weights, biases and normalization arrays."""
        return self.weights + self.biases + [self.input_lo, self.input_hi, self.out_mean, self.out_scale]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MlpModel):
            return NotImplemented
        mine, theirs = self.arrays(), other.arrays()
        return (
            len(mine) == len(theirs)
            and all(a.shape == b.shape and np.array_equal(a, b) for a, b in zip(mine, theirs))
            and self.meta == other.meta
        )


def predict(model: MlpModel, z: np.ndarray) -> np.ndarray:
    """Feed-forward evaluation.

    Args:
        model: Network
        z: One parameter, shape (n,), or a batch, shape (m, n)

    Returns:
        Shape (k,) or (m, k)

    Raises:
        HymcmcValidationError: If the input dimension does not match the network
    """
    z = np.asarray(z, dtype=np.float64)
    single = z.ndim == 1
    x = np.atleast_2d(z)
    if x.shape[1] != model.layer_sizes[0]:
        raise HymcmcValidationError(
            "Input dimension does not match the network",
            details={"expected": model.layer_sizes[0], "got": int(x.shape[1])}
        )
    x = model.normalize_inputs(x)
    last = len(model.weights) - 1
    for i, (w, b) in enumerate(zip(model.weights, model.biases)):
        x = x @ w.T + b
        if i < last:
            x = np.maximum(x, 0.0)
    y = model.out_mean + model.out_scale * x
    return y[0] if single else y


__all__ = ['MlpModel', 'predict']
