"""hymcmc experiment client module."""

from hymcmc.client.runner import CHAIN_SEED_OFFSETS, LOG_LEVELS, ExperimentRunner
from hymcmc.client.types import RuntimeSettings

__all__ = [
    'ExperimentRunner',
    'RuntimeSettings',
    'CHAIN_SEED_OFFSETS',
    'LOG_LEVELS',
]
