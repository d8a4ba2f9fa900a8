"""Tests for batch-means standard errors."""

import numpy as np
import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.hybrid import batch_means_standard_error, combine_standard_errors
from hymcmc.prior import make_rng


class TestBatchMeans:
    """Test suite for batch_means_standard_error."""

    def test_hand_computed(self):
        """Test two batches of two values."""
        se = batch_means_standard_error(np.array([1.0, 3.0, 5.0, 7.0]), batches=2)

        # batch means 2 and 6
        assert se[0] == pytest.approx(np.std([2.0, 6.0], ddof=1) / np.sqrt(2.0))

    def test_iid_scaling(self):
        """Test that white noise gives roughly sigma / sqrt(m)."""
        x = make_rng(0).standard_normal(40_000)

        assert batch_means_standard_error(x, batches=200)[0] == pytest.approx(1.0 / 200.0, rel=0.2)

    def test_per_column(self):
        """Test one error per column, zero for a constant column."""
        x = np.column_stack([make_rng(1).standard_normal(100), np.ones(100)])

        se = batch_means_standard_error(x, batches=10)

        assert se.shape == (2,)
        assert se[1] == 0.0

    def test_trailing_values_dropped(self):
        """Test that values not filling a batch are ignored."""
        full = batch_means_standard_error(np.arange(20.0), batches=4)
        padded = batch_means_standard_error(np.append(np.arange(20.0), [1e9, -1e9]), batches=4)

        assert np.array_equal(full, padded)

    def test_short_series(self):
        """Test that a series shorter than the batch count uses single values."""
        x = np.array([1.0, 2.0, 4.0])

        assert batch_means_standard_error(x, batches=20)[0] == pytest.approx(np.std(x, ddof=1) / np.sqrt(3.0))

    def test_single_value_is_nan(self):
        """Test that a one-value series has an undefined error per column."""
        se = batch_means_standard_error(np.array([[0.4, 2.0]]))

        assert se.shape == (2,)
        assert np.all(np.isnan(se))

    def test_rejects_empty_or_one_batch(self):
        """Test that an empty series or a single batch is rejected."""
        with pytest.raises(HymcmcValidationError):
            batch_means_standard_error(np.ones(0))
        with pytest.raises(HymcmcValidationError):
            batch_means_standard_error(np.ones(10), batches=1)


class TestCombineStandardErrors:
    """Test suite for combine_standard_errors."""

    def test_root_sum_of_squares(self):
        """Test the combination of independent errors."""
        combined = combine_standard_errors([np.array([3.0, 0.0]), np.array([4.0, 1.0])])

        assert np.allclose(combined, [5.0, 1.0])
