"""Monte Carlo standard errors for chain means."""

import logging
import math
from typing import Iterable

import numpy as np

from hymcmc.errors import HymcmcValidationError

logger = logging.getLogger(__name__)

DEFAULT_BATCHES = 20


def batch_means_standard_error(series: np.ndarray, batches: int = DEFAULT_BATCHES) -> np.ndarray:
    """Non-overlapping batch-means standard error of a chain mean.

    The series is cut into ``batches`` equal batches (trailing values that do
    not fill a batch are dropped); the error is the standard deviation of the
    batch means over sqrt(batches). With fewer values than batches, each value
    is its own batch. A single value has no defined error and gives NaN.

    Args:
        series: Shape (m,) or (m, d)
        batches: Number of batches

    Returns:
        One standard error per column

    Raises:
        HymcmcValidationError: Fewer than two batches or an empty series
    """
    x = np.asarray(series, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    m = x.shape[0]
    if batches < 2 or m == 0:
        raise HymcmcValidationError(
            "Batch means need a non-empty series and at least two batches",
            details={"length": m, "batches": batches},
        )
    if m == 1:
        logger.warning("Standard error of a single value is undefined; reporting NaN")
        return np.full(x.shape[1], np.nan)
    if m < batches:
        logger.warning("Series of %d values is shorter than %d batches; using one value per batch", m, batches)
        batches = m
    size = m // batches
    means = x[: size * batches].reshape(batches, size, -1).mean(axis=1)
    return means.std(axis=0, ddof=1) / math.sqrt(batches)


def combine_standard_errors(errors: Iterable[np.ndarray]) -> np.ndarray:
    """Root sum of squares of errors from independent chains."""
    stacked = np.array([np.asarray(e, dtype=float) for e in errors])
    return np.sqrt(np.sum(stacked ** 2, axis=0))


__all__ = ['DEFAULT_BATCHES', 'batch_means_standard_error', 'combine_standard_errors']
