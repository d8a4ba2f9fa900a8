"""Two-level hybrid estimators.

A long chain on the surrogate posterior gives E_ML[Q]; short chains that see
both potentials correct it towards E_num[Q].

Uniform priors (Delta is bounded on the compact box)::

    E[Q] = E_num[(1 - e^Delta) Q] + E_num[e^Delta - 1] E_ML[Q] + E_ML[Q]

Gaussian priors split every weight by the sign of Delta (see
:mod:`hymcmc.hybrid.terms`) and assemble::

    E[Q] = E_num[A1] + c3 E_ML[A3] + E_ML[A2] + c4 E_num[A4] + E_ML[Q]

With a5 = E_num[A5] and a6 = E_ML[A6] the exact normalizer uses
c3 = (a5 + a6) / (1 - a6) and c4 = (a5 + a6) / (1 + a5); the switched form
uses c3 = a5 and c4 = a6.

Standard errors come from batch means, combined across chains with the
delta method on each chain's linearized per-sample contribution.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hymcmc.errors import HymcmcNumericalError, HymcmcValidationError
from hymcmc.hybrid.statistics import DEFAULT_BATCHES, batch_means_standard_error, combine_standard_errors
from hymcmc.hybrid.terms import A_TERM_NAMES, a_term_arrays, delta_of
from hymcmc.models.hybrid import HybridEstimate
from hymcmc.prior.qoi import QuantityOfInterest
from hymcmc.sampler.chain import Chain
from hymcmc.types.experiment_types import NormalizerForm
from hymcmc.types.prior_types import PriorType

logger = logging.getLogger(__name__)


def assemble_uniform(term_weighted: np.ndarray, term_ratio: float, base_ml_mean: np.ndarray) -> np.ndarray:
    """term_weighted + term_ratio * base_ml_mean + base_ml_mean."""
    base = np.asarray(base_ml_mean, dtype=float)
    return np.asarray(term_weighted, dtype=float) + term_ratio * base + base


def normalizing_constants(
    a5: float,
    a6: float,
    normalizer: NormalizerForm = NormalizerForm.EXACT,
) -> Tuple[float, float]:
    """Constants multiplying the A3 and A4 means.

    Raises:
        HymcmcNumericalError: If an exact-form denominator is not positive
    """
    if NormalizerForm(normalizer) == NormalizerForm.SWITCHED:
        return a5, a6
    if not (1.0 - a6 > 0.0 and 1.0 + a5 > 0.0):
        raise HymcmcNumericalError(
            "Normalizing constants are undefined for these branch means",
            details={"a5": a5, "a6": a6},
        )
    s = a5 + a6
    return s / (1.0 - a6), s / (1.0 + a5)


def assemble_gaussian(
    a_means: Sequence[np.ndarray],
    base_ml_mean: np.ndarray,
    normalizer: NormalizerForm = NormalizerForm.EXACT,
) -> np.ndarray:
    """Total of the Gaussian-prior estimator from the means of A1..A6.

    Args:
        a_means: Means of A1..A4 (QoI-shaped) and of A5, A6 (scalars)
        base_ml_mean: Long surrogate-chain mean of Q
        normalizer: Normalizer form
    """
    a1, a2, a3, a4 = (np.asarray(a, dtype=float) for a in a_means[:4])
    c3, c4 = normalizing_constants(float(a_means[4]), float(a_means[5]), normalizer)
    return a1 + c3 * a3 + a2 + c4 * a4 + np.asarray(base_ml_mean, dtype=float)


def _gaussian_gradients(
    a3: np.ndarray,
    a4: np.ndarray,
    a5: float,
    a6: float,
    normalizer: NormalizerForm,
) -> Tuple[float, float, np.ndarray, np.ndarray]:
    if NormalizerForm(normalizer) == NormalizerForm.SWITCHED:
        return a5, a6, a3, a4
    s = a5 + a6
    g3 = s / (1.0 - a6)
    g4 = s / (1.0 + a5)
    g5 = a3 / (1.0 - a6) + a4 * (1.0 - a6) / (1.0 + a5) ** 2
    g6 = a3 * (1.0 + a5) / (1.0 - a6) ** 2 + a4 / (1.0 + a5)
    return g3, g4, g5, g6


def _qoi_values(chain: Chain, qoi: Optional[QuantityOfInterest]) -> np.ndarray:
    if qoi is None:
        return chain.qoi
    return np.array([np.atleast_1d(qoi(z)) for z in chain.states], dtype=float)


def _check_chain(chain: Chain, role: str, companion: bool) -> None:
    if len(chain) == 0:
        raise HymcmcValidationError(f"The {role} chain is empty")
    if companion and not chain.has_companion:
        raise HymcmcValidationError(
            f"The {role} chain must record the companion potential at each state",
            details={"role": role},
        )


def _check_dims(qs: Dict[str, np.ndarray]) -> None:
    dims = {role: q.shape[1] for role, q in qs.items()}
    if len(set(dims.values())) != 1:
        raise HymcmcValidationError("Chains record QoIs of different dimension", details=dims)


def _floats(x: np.ndarray) -> List[float]:
    return [float(v) for v in np.atleast_1d(x)]


def hybrid_estimate_uniform(
    chain_num: Chain,
    chain_ml: Chain,
    qoi: Optional[QuantityOfInterest] = None,
    batches: int = DEFAULT_BATCHES,
) -> HybridEstimate:
    """Hybrid estimate for a uniform prior.

    Args:
        chain_num: Chain on the numerical posterior with Phi_ML recorded per state
        chain_ml: Long chain on the surrogate posterior
        qoi: Recompute Q at the stored states; the recorded values are used when omitted
        batches: Batch count for standard errors

    Raises:
        HymcmcValidationError: Empty chains, a missing companion or mismatched QoIs
        HymcmcNumericalError: If exp(Delta) overflows
    """
    _check_chain(chain_num, "numerical", companion=True)
    _check_chain(chain_ml, "surrogate", companion=False)
    q_num = _qoi_values(chain_num, qoi)
    q_ml = _qoi_values(chain_ml, qoi)
    _check_dims({"numerical": q_num, "surrogate": q_ml})

    delta = delta_of(chain_num.potentials, chain_num.companion_potentials)
    ratio = np.expm1(delta)
    if not np.all(np.isfinite(ratio)):
        logger.warning("exp(Phi_num - Phi_ML) overflowed at %d states", int(np.sum(~np.isfinite(ratio))))
        raise HymcmcNumericalError(
            "Weight exp(Phi_num - Phi_ML) overflowed",
            details={"max_delta": float(np.max(delta))},
        )
    weighted = -ratio[:, None] * q_num

    term_weighted = weighted.mean(axis=0)
    term_ratio = float(ratio.mean())
    base = q_ml.mean(axis=0)
    total = assemble_uniform(term_weighted, term_ratio, base)

    se_weighted = batch_means_standard_error(weighted, batches)
    se_ratio = batch_means_standard_error(ratio, batches)
    se_base = batch_means_standard_error(q_ml, batches)
    se_total = combine_standard_errors([
        batch_means_standard_error(weighted + ratio[:, None] * base[None, :], batches),
        (1.0 + term_ratio) * se_base,
    ])

    estimate = HybridEstimate(
        prior_type=PriorType.UNIFORM,
        base_ml_mean=_floats(base),
        term_weighted=_floats(term_weighted),
        term_ratio=term_ratio,
        total=_floats(total),
        standard_errors={
            "term_weighted": _floats(se_weighted),
            "term_ratio": _floats(se_ratio),
            "base_ml_mean": _floats(se_base),
            "total": _floats(se_total),
        },
        chain_lengths={"numerical": len(chain_num), "ml": len(chain_ml)},
        numerical_solves=chain_num.model_evaluations,
    )
    logger.info(
        "Uniform hybrid estimate %s (surrogate mean %s, correction %s)",
        estimate.total, estimate.base_ml_mean, _floats(total - base),
    )
    return estimate


def hybrid_estimate_gaussian(
    chain_num: Chain,
    chain_ml_short: Chain,
    chain_ml_long: Chain,
    qoi: Optional[QuantityOfInterest] = None,
    normalizer: NormalizerForm = NormalizerForm.EXACT,
    batches: int = DEFAULT_BATCHES,
) -> HybridEstimate:
    """Hybrid estimate for a Gaussian prior with switched weights.

    A1, A4 and A5 are averaged over ``chain_num``; A2, A3 and A6 over
    ``chain_ml_short``; Q over ``chain_ml_long``.

    Args:
        chain_num: Chain on the numerical posterior with Phi_ML recorded per state
        chain_ml_short: Short chain on the surrogate posterior with Phi_num recorded per state
        chain_ml_long: Long chain on the surrogate posterior
        qoi: Recompute Q at the stored states; the recorded values are used when omitted
        normalizer: Exact or switched normalizing constants
        batches: Batch count for standard errors

    Raises:
        HymcmcValidationError: Empty chains, a missing companion or mismatched QoIs
    """
    _check_chain(chain_num, "numerical", companion=True)
    _check_chain(chain_ml_short, "short surrogate", companion=True)
    _check_chain(chain_ml_long, "long surrogate", companion=False)
    q_num = _qoi_values(chain_num, qoi)
    q_short = _qoi_values(chain_ml_short, qoi)
    q_long = _qoi_values(chain_ml_long, qoi)
    _check_dims({"numerical": q_num, "short surrogate": q_short, "long surrogate": q_long})

    on_num = a_term_arrays(chain_num.potentials, chain_num.companion_potentials, q_num)
    on_ml = a_term_arrays(chain_ml_short.companion_potentials, chain_ml_short.potentials, q_short)
    samples = [on_num[0], on_ml[1], on_ml[2], on_num[3], on_num[4], on_ml[5]]
    means = [s.mean(axis=0) for s in samples]
    base = q_long.mean(axis=0)
    a5, a6 = float(means[4]), float(means[5])
    c3, c4 = normalizing_constants(a5, a6, normalizer)
    total = assemble_gaussian(means, base, normalizer)

    g3, g4, g5, g6 = _gaussian_gradients(means[2], means[3], a5, a6, normalizer)
    num_series = samples[0] + g4 * samples[3] + samples[4][:, None] * np.asarray(g5)[None, :]
    short_series = samples[1] + g3 * samples[2] + samples[5][:, None] * np.asarray(g6)[None, :]
    se_base = batch_means_standard_error(q_long, batches)
    se_total = combine_standard_errors([
        batch_means_standard_error(num_series, batches),
        batch_means_standard_error(short_series, batches),
        se_base,
    ])

    d = base.shape[0]
    standard_errors = {
        name: _floats(np.broadcast_to(batch_means_standard_error(s, batches), (d,)))
        for name, s in zip(A_TERM_NAMES, samples)
    }
    standard_errors["base_ml_mean"] = _floats(se_base)
    standard_errors["total"] = _floats(se_total)

    estimate = HybridEstimate(
        prior_type=PriorType.GAUSSIAN,
        base_ml_mean=_floats(base),
        a_terms=[_floats(np.broadcast_to(m, (d,))) for m in means],
        ratio_constants=[c3, c4],
        normalizer=NormalizerForm(normalizer),
        total=_floats(total),
        standard_errors=standard_errors,
        chain_lengths={
            "numerical": len(chain_num),
            "ml_short": len(chain_ml_short),
            "ml_long": len(chain_ml_long),
        },
        numerical_solves=chain_num.model_evaluations + chain_ml_short.companion_evaluations,
    )
    logger.info(
        "Gaussian hybrid estimate (%s normalizer): a5=%.4g a6=%.4g, %d numerical solves",
        NormalizerForm(normalizer).value, a5, a6, estimate.numerical_solves,
    )
    return estimate


__all__ = [
    'assemble_uniform',
    'normalizing_constants',
    'assemble_gaussian',
    'hybrid_estimate_uniform',
    'hybrid_estimate_gaussian',
]
