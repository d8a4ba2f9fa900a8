"""Tests for sample budgets."""

import pytest

from hymcmc.errors import HymcmcValidationError
from hymcmc.hybrid import budget_for_numerical_solves, select_budget


class TestSelectBudget:
    """Test suite for select_budget."""

    def test_exact_surrogate(self):
        """Test epsilon = 0 at level 5."""
        budget = select_budget(5, 0.0, 1.0)

        assert (budget.m_ml, budget.m_num) == (1024, 4)

    def test_measured_gap(self):
        """Test the numerical chain length for epsilon = 2.49."""
        assert select_budget(5, 2.49, 1.0).m_num == 44

    def test_half_up_rounding(self):
        """Test that x.5 rounds up and counts are at least one."""
        assert select_budget(1, 0.0, 0.625).m_ml == 3
        assert select_budget(1, 0.0, 0.375).m_ml == 2
        assert select_budget(1, 0.0, 0.01).m_num == 1

    def test_monotone_in_gap(self):
        """Test that a worse surrogate needs more numerical samples."""
        assert select_budget(4, 3.0, 1.0).m_num > select_budget(4, 1.0, 1.0).m_num

    @pytest.mark.parametrize("L, C", [(0, 1.0), (3, 0.0), (3, -2.0)])
    def test_invalid(self, L, C):
        """Test that L < 1 and C <= 0 are rejected."""
        with pytest.raises(HymcmcValidationError):
            select_budget(L, 0.0, C)


class TestBudgetForNumericalSolves:
    """Test suite for budget_for_numerical_solves."""

    def test_hits_requested_count(self):
        """Test that the derived C reproduces the numerical chain length."""
        budget = budget_for_numerical_solves(5, 2.49, 4000)

        assert budget.m_num == 4000
        assert budget.m_ml == round(budget.C * 4 ** 5)

    def test_invalid_count(self):
        """Test that a non-positive count is rejected."""
        with pytest.raises(HymcmcValidationError):
            budget_for_numerical_solves(5, 0.0, 0)
