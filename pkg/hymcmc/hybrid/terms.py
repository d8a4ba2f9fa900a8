"""Switching indicator and the six branch-split correction terms.

With Delta = Phi_num - Phi_ML and I = 1 exactly when Delta <= 0:

    A1 = (1 - e^Delta) Q I        A2 = (e^-Delta - 1) Q (1 - I)
    A3 = Q I                      A4 = Q (1 - I)
    A5 = (e^Delta - 1) I          A6 = (1 - e^-Delta) (1 - I)

Every exponential is taken of a non-positive argument on its active branch,
so each weight factor lies in (-1, 1].
"""

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, NamedTuple, Union

import numpy as np

from hymcmc.errors import HymcmcValidationError

logger = logging.getLogger(__name__)

A_TERM_NAMES = ("A1", "A2", "A3", "A4", "A5", "A6")


def switching_indicator(phi_num: float, phi_ml: float) -> int:
    """1 when ``phi_num <= phi_ml``, else 0."""
    return 1 if phi_num <= phi_ml else 0


@dataclass(frozen=True, eq=False)
class DualPotentialSample:
    """A parameter with both potentials and its QoI value.

    Raises:
        HymcmcValidationError: If either potential is not finite
    """

    z: np.ndarray
    phi_num: float
    phi_ml: float
    q: np.ndarray

    def __post_init__(self) -> None:
        if not (math.isfinite(self.phi_num) and math.isfinite(self.phi_ml)):
            raise HymcmcValidationError(
                "Dual-potential samples need finite potentials",
                details={"phi_num": self.phi_num, "phi_ml": self.phi_ml},
            )

    @property
    def delta(self) -> float:
        return self.phi_num - self.phi_ml


class WeightFactors(NamedTuple):
    """Per-sample weight factors multiplying Q (w1, w2) or standing alone (w5, w6)."""

    indicator: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    w5: np.ndarray
    w6: np.ndarray


def delta_of(phi_num: np.ndarray, phi_ml: np.ndarray) -> np.ndarray:
    """Phi_num - Phi_ML, elementwise.

    Raises:
        HymcmcValidationError: On a length mismatch or a non-finite potential
    """
    phi_num = np.asarray(phi_num, dtype=float)
    phi_ml = np.asarray(phi_ml, dtype=float)
    if phi_num.shape != phi_ml.shape:
        raise HymcmcValidationError(
            "Potential arrays differ in shape",
            details={"phi_num": phi_num.shape, "phi_ml": phi_ml.shape},
        )
    if not (np.all(np.isfinite(phi_num)) and np.all(np.isfinite(phi_ml))):
        raise HymcmcValidationError("Potentials must be finite")
    return phi_num - phi_ml


def weight_factors(phi_num: np.ndarray, phi_ml: np.ndarray) -> WeightFactors:
    """Indicator and weight factors for arrays of paired potentials."""
    delta = delta_of(phi_num, phi_ml)
    indicator = (delta <= 0.0).astype(float)
    # clip so the inactive branch never overflows; it is multiplied by zero
    below = np.minimum(delta, 0.0)
    above = np.maximum(delta, 0.0)
    w1 = -np.expm1(below) * indicator
    w2 = np.expm1(-above) * (1.0 - indicator)
    w5 = np.expm1(below) * indicator
    w6 = -np.expm1(-above) * (1.0 - indicator)
    return WeightFactors(indicator, w1, w2, w5, w6)


def a_term_arrays(phi_num: np.ndarray, phi_ml: np.ndarray, q: np.ndarray) -> List[np.ndarray]:
    """A1..A6 at every sample.

    Args:
        phi_num: Numerical potentials, shape (m,)
        phi_ml: Surrogate potentials, shape (m,)
        q: QoI values, shape (m,) or (m, d)

    Returns:
        Six arrays; A1..A4 have shape (m, d) and A5, A6 shape (m,)
    """
    q = np.asarray(q, dtype=float)
    if q.ndim == 1:
        q = q[:, None]
    factors = weight_factors(phi_num, phi_ml)
    if q.shape[0] != factors.indicator.shape[0]:
        raise HymcmcValidationError(
            "QoI rows do not match the potentials",
            details={"qoi": q.shape[0], "potentials": factors.indicator.shape[0]},
        )
    ind = factors.indicator[:, None]
    return [
        factors.w1[:, None] * q,
        factors.w2[:, None] * q,
        ind * q,
        (1.0 - ind) * q,
        factors.w5,
        factors.w6,
    ]


def a_terms(sample: DualPotentialSample) -> List[np.ndarray]:
    """A1..A6 at one sample; A1..A4 are QoI-shaped, A5 and A6 scalars."""
    terms = a_term_arrays(
        np.array([sample.phi_num]), np.array([sample.phi_ml]),
        np.atleast_1d(np.asarray(sample.q, dtype=float))[None, :],
    )
    return [t[0] for t in terms]


def write_a_terms_csv(
    path: Union[str, Path],
    phi_num: np.ndarray,
    phi_ml: np.ndarray,
    q: np.ndarray,
    chain: str,
) -> Path:
    """Audit dump of the per-sample terms of one chain.

    Columns: ``chain, index, phi_num, phi_ml, indicator, A1_*, A2_*, A3_*, A4_*, A5, A6``
    where ``*`` runs over QoI components.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    terms = a_term_arrays(phi_num, phi_ml, q)
    d = terms[0].shape[1]
    header = ["chain", "index", "phi_num", "phi_ml", "indicator"]
    for name in A_TERM_NAMES[:4]:
        header += [f"{name}_{j + 1}" for j in range(d)]
    header += ["A5", "A6"]
    indicator = weight_factors(phi_num, phi_ml).indicator
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for i in range(terms[0].shape[0]):
            row = [chain, str(i), repr(float(phi_num[i])), repr(float(phi_ml[i])), str(int(indicator[i]))]
            for t in terms[:4]:
                row += [repr(float(v)) for v in t[i]]
            row += [repr(float(terms[4][i])), repr(float(terms[5][i]))]
            writer.writerow(row)
    logger.debug("Wrote %d A-term rows for the %s chain to %s", terms[0].shape[0], chain, path)
    return path


__all__ = [
    'A_TERM_NAMES',
    'switching_indicator',
    'DualPotentialSample',
    'WeightFactors',
    'delta_of',
    'weight_factors',
    'a_term_arrays',
    'a_terms',
    'write_a_terms_csv',
]
