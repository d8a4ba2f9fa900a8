"""Metropolis-Hastings chains targeting exp(-Phi) times the prior.

A chain can carry a companion model: at every stored state the companion's
potential is evaluated as well, which gives the dual-potential samples the
hybrid estimators consume.

Example:
    ```python
    from hymcmc.sampler import run_chain

    chain = run_chain(model, obs, prior, ChainConfig(length=4000, seed=5), qoi)
    chain.acceptance_rate, chain_mean(chain)
    ```
"""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, NamedTuple, Optional, Sequence

import numpy as np
from tqdm import tqdm

from hymcmc.errors import HymcmcNumericalError, HymcmcValidationError
from hymcmc.forward.base import CountingForwardModel, ForwardModel
from hymcmc.forward.potential import potential
from hymcmc.models.chain import ChainConfig
from hymcmc.models.observation import ObservationSet
from hymcmc.prior.qoi import QuantityOfInterest
from hymcmc.prior.sampling import AnyPrior, draw_prior, in_support, make_rng
from hymcmc.sampler.kernels import ProposalKernel, acceptance_probability, make_kernel

logger = logging.getLogger(__name__)

WORKERS_ENV = "HYMCMC_WORKERS"


@dataclass(eq=False)
class Chain:
    """Stored states of a finished chain.

    Arrays are aligned: row ``i`` of every array describes stored state ``i``.

    Attributes:
        config: Configuration the chain ran with
        states: Parameters, shape (m, n)
        potentials: Phi of the target model at each state
        qoi: QoI values, shape (m, q)
        accepted: Whether the step producing each stored state was accepted
        steps: Global step index of each stored state
        companion_potentials: Phi of the companion model, when one was given
        acceptance_rate: Accepted proposals over all steps, burn-in included
        nonfinite_rejections: Proposals rejected for a non-finite potential
        model_evaluations: Target-model evaluations
        companion_evaluations: Companion-model evaluations
        cost_class: Cost class of the target model
        labels: QoI column names
    """

    config: ChainConfig
    states: np.ndarray
    potentials: np.ndarray
    qoi: np.ndarray
    accepted: np.ndarray
    steps: np.ndarray
    companion_potentials: Optional[np.ndarray] = None
    acceptance_rate: float = 0.0
    nonfinite_rejections: int = 0
    model_evaluations: int = 0
    companion_evaluations: int = 0
    cost_class: str = "numerical"
    labels: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return self.states.shape[0]

    @property
    def has_companion(self) -> bool:
        return self.companion_potentials is not None

    @property
    def burn_in(self) -> int:
        return self.config.resolved_burn_in


class StepResult(NamedTuple):
    """Outcome of one Metropolis-Hastings step."""

    z: np.ndarray
    phi: float
    accepted: bool
    nonfinite: bool


def mh_step(
    z: np.ndarray,
    phi: float,
    kernel: ProposalKernel,
    target: Callable[[np.ndarray], float],
    rng: np.random.Generator,
) -> StepResult:
    """One Metropolis-Hastings step with a prior-reversible proposal.

    The proposal is drawn first, then one uniform variate decides; both draws
    happen on every step. A rejected step repeats the current state.

    Raises:
        HymcmcValidationError: If the current potential is not finite
    """
    if not math.isfinite(phi):
        raise HymcmcValidationError("The current potential must be finite", details={"phi": phi})
    proposal = kernel.propose(z, rng)
    phi_prop = float(target(proposal))
    u = rng.random()
    if not math.isfinite(phi_prop):
        return StepResult(z, phi, False, True)
    if u < acceptance_probability(phi, phi_prop):
        return StepResult(proposal, phi_prop, True, False)
    return StepResult(z, phi, False, False)


class PotentialTarget:
    """Phi(z) of a model and a data set, with an evaluation counter."""

    def __init__(self, model: ForwardModel, obs: ObservationSet):
        self.model = CountingForwardModel(model)
        self.obs = obs

    @property
    def evaluations(self) -> int:
        return self.model.evaluations

    def __call__(self, z: np.ndarray) -> float:
        return potential(self.model, z, self.obs)


def run_chain(
    model: ForwardModel,
    obs: ObservationSet,
    prior: AnyPrior,
    config: ChainConfig,
    qoi: QuantityOfInterest,
    companion: Optional[ForwardModel] = None,
    initial: Optional[np.ndarray] = None,
    progress: bool = False,
) -> Chain:
    """Run one chain.

    The chain starts from ``initial`` or a prior draw, discards
    ``config.resolved_burn_in`` steps and then stores every ``thin``-th state
    until ``config.length`` states are stored.

    Args:
        model: Target model, Phi is evaluated with it at every proposal
        obs: Observation data
        prior: Prior the kernel is reversible for
        config: Chain settings
        qoi: Quantity of interest recorded at each stored state
        companion: Second model whose Phi is recorded at each stored state
        initial: Starting parameter
        progress: Show a progress bar

    Returns:
        The finished chain

    Raises:
        HymcmcValidationError: Kernel and prior do not match, or a bad initial state
        HymcmcNumericalError: The initial potential is not finite, or the model fails
    """
    kernel = make_kernel(config, prior)
    rng = make_rng(config.seed)
    target = PotentialTarget(model, obs)
    companion_target = PotentialTarget(companion, obs) if companion is not None else None

    z = draw_prior(prior, rng) if initial is None else np.atleast_1d(np.asarray(initial, dtype=float)).copy()
    if z.shape != (prior.dimension,) or not in_support(prior, z):
        raise HymcmcValidationError("Initial state is outside the prior support", details={"z": z.tolist()})
    phi = float(target(z))
    if not math.isfinite(phi):
        raise HymcmcNumericalError("Initial potential is not finite", details={"z": z.tolist()})

    burn_in = config.resolved_burn_in
    total = config.total_steps
    m = config.length
    states = np.empty((m, prior.dimension))
    potentials = np.empty(m)
    qois = np.empty((m, qoi.dimension))
    accepted_flags = np.zeros(m, dtype=bool)
    steps = np.empty(m, dtype=np.int64)
    companions = np.empty(m) if companion_target is not None else None

    current_q = qoi(z)
    current_companion: Optional[float] = None
    n_accepted = 0
    n_nonfinite = 0
    stored = 0

    bar = tqdm(range(1, total + 1), desc=f"chain {config.seed}", disable=not progress, leave=False)
    for step in bar:
        try:
            result = mh_step(z, phi, kernel, target, rng)
        except HymcmcNumericalError as e:
            raise HymcmcNumericalError(
                f"Chain aborted at step {step}: {e.message}",
                details={"seed": config.seed, "step": step, "cause": e.details}
            )
        if result.accepted:
            n_accepted += 1
            z, phi = result.z, result.phi
            current_q = qoi(z)
            current_companion = None
        elif result.nonfinite:
            n_nonfinite += 1

        if step > burn_in and (step - burn_in) % config.thin == 0:
            states[stored] = z
            potentials[stored] = phi
            qois[stored] = current_q
            accepted_flags[stored] = result.accepted
            steps[stored] = step
            if companion_target is not None:
                if current_companion is None:
                    current_companion = float(companion_target(z))
                companions[stored] = current_companion
            stored += 1

    if n_nonfinite:
        logger.warning("Chain %d rejected %d proposals with a non-finite potential", config.seed, n_nonfinite)
    chain = Chain(
        config=config,
        states=states,
        potentials=potentials,
        qoi=qois,
        accepted=accepted_flags,
        steps=steps,
        companion_potentials=companions,
        acceptance_rate=n_accepted / total,
        nonfinite_rejections=n_nonfinite,
        model_evaluations=target.evaluations,
        companion_evaluations=companion_target.evaluations if companion_target is not None else 0,
        cost_class=str(getattr(model.cost_class, "value", model.cost_class)),
        labels=qoi.labels(),
    )
    logger.info(
        "Chain %d on %s: %d states, acceptance %.3f, %d evaluations (+%d companion)",
        config.seed, model.describe(), m, chain.acceptance_rate,
        chain.model_evaluations, chain.companion_evaluations,
    )
    return chain


def chain_mean(chain: Chain, f: Optional[Callable[[np.ndarray], np.ndarray]] = None) -> np.ndarray:
    """Mean of ``f`` over the stored states; the QoI mean when ``f`` is omitted.

    Raises:
        HymcmcValidationError: If the chain is empty
    """
    if len(chain) == 0:
        raise HymcmcValidationError("Cannot average an empty chain")
    if f is None:
        return chain.qoi.mean(axis=0)
    values = np.array([np.atleast_1d(f(z)) for z in chain.states], dtype=float)
    return values.mean(axis=0)


@dataclass
class ChainTask:
    """Arguments of one :func:`run_chain` call, for :func:`run_chains`."""

    model: ForwardModel
    obs: ObservationSet
    prior: AnyPrior
    config: ChainConfig
    qoi: QuantityOfInterest
    companion: Optional[ForwardModel] = None
    progress: bool = False


def _run_task(task: ChainTask) -> Chain:
    return run_chain(task.model, task.obs, task.prior, task.config, task.qoi, task.companion, progress=task.progress)


def resolve_workers(workers: Optional[int] = None) -> int:
    """Worker count: the argument, else ``HYMCMC_WORKERS``, else 1.

    Raises:
        HymcmcValidationError: If the resolved count is not a positive integer
    """
    if workers is None:
        raw = os.environ.get(WORKERS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            raise HymcmcValidationError(f"{WORKERS_ENV} must be an integer", details={"value": raw})
    if workers < 1:
        raise HymcmcValidationError("Worker count must be positive", details={"workers": workers})
    return workers


def run_chains(tasks: Sequence[ChainTask], workers: Optional[int] = None) -> List[Chain]:
    """Run independent chains, in parallel when more than one worker is available.

    Results come back in task order and do not depend on the worker count.
    """
    workers = min(resolve_workers(workers), max(len(tasks), 1))
    if workers == 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks))


__all__ = [
    'WORKERS_ENV',
    'Chain',
    'StepResult',
    'mh_step',
    'PotentialTarget',
    'run_chain',
    'chain_mean',
    'ChainTask',
    'resolve_workers',
    'run_chains',
]
