"""Metropolis-Hastings sampling: kernels, chains, diagnostics and dumps."""

from hymcmc.sampler.chain import (
    WORKERS_ENV,
    Chain,
    ChainTask,
    PotentialTarget,
    StepResult,
    chain_mean,
    mh_step,
    resolve_workers,
    run_chain,
    run_chains,
)
from hymcmc.sampler.diagnostics import autocorrelation, effective_sample_size, ess_per_component
from hymcmc.sampler.io import chain_header, read_chain, summarize_chain, summary_path, write_chain
from hymcmc.sampler.kernels import (
    PreconditionedCrankNicolson,
    ProposalKernel,
    ReflectedRandomWalk,
    acceptance_probability,
    make_kernel,
    reflect_into_box,
    reflected_proposal_density,
)

__all__ = [
    # Kernels
    "ProposalKernel",
    "ReflectedRandomWalk",
    "PreconditionedCrankNicolson",
    "acceptance_probability",
    "make_kernel",
    "reflect_into_box",
    "reflected_proposal_density",
    # Chains
    "WORKERS_ENV",
    "Chain",
    "ChainTask",
    "PotentialTarget",
    "StepResult",
    "chain_mean",
    "mh_step",
    "resolve_workers",
    "run_chain",
    "run_chains",
    # Diagnostics
    "autocorrelation",
    "effective_sample_size",
    "ess_per_component",
    # Dumps
    "chain_header",
    "summarize_chain",
    "summary_path",
    "write_chain",
    "read_chain",
]
