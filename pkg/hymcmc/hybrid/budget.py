"""Sample budgets balancing the surrogate chain against the correction chains.

    m_ml  = round(C 2^(2L))
    m_num = round(C (1 + 2^epsilon)^2)

Rounding is half-up and both counts are at least one.
"""

import math

from hymcmc.errors import HymcmcValidationError
from hymcmc.models.hybrid import SampleBudget


def _round_count(x: float) -> int:
    return max(1, int(math.floor(x + 0.5)))


def select_budget(L: int, epsilon: float, C: float) -> SampleBudget:
    """Chain lengths for target level ``L`` and surrogate gap ``epsilon``.

    Example:
        >>> b = select_budget(5, 0.0, 1.0)
        >>> b.m_ml, b.m_num
        (1024, 4)

    Raises:
        HymcmcValidationError: If ``L < 1`` or ``C <= 0``
    """
    if L < 1:
        raise HymcmcValidationError("Target level must be at least 1", details={"L": L})
    if not C > 0:
        raise HymcmcValidationError("Budget constant C must be positive", details={"C": C})
    m_ml = _round_count(C * 4.0 ** L)
    m_num = _round_count(C * (1.0 + 2.0 ** epsilon) ** 2)
    return SampleBudget(L=L, epsilon=epsilon, C=C, m_ml=m_ml, m_num=m_num)


def budget_for_numerical_solves(L: int, epsilon: float, numerical_solves: int) -> SampleBudget:
    """Budget whose C makes m_num equal a given number of numerical samples.

    Raises:
        HymcmcValidationError: If ``numerical_solves < 1``
    """
    if numerical_solves < 1:
        raise HymcmcValidationError(
            "Numerical solve budget must be positive",
            details={"numerical_solves": numerical_solves},
        )
    C = numerical_solves / (1.0 + 2.0 ** epsilon) ** 2
    return select_budget(L, epsilon, C)


__all__ = ['select_budget', 'budget_for_numerical_solves']
