"""Process-level settings of an experiment run.

Example:
    >>> from hymcmc.client.types import RuntimeSettings
    >>> settings = RuntimeSettings(workers=4, log_level="DEBUG")
"""

from dataclasses import dataclass
from typing import Optional


@dataclass
class RuntimeSettings:
    """Settings that do not change results, only how a run executes.

    Attributes:
        workers: Worker processes for chains and dataset generation.
            Read from ``HYMCMC_WORKERS`` when None, defaulting to 1.
        log_level: Name of the logging level the CLI installs.
        progress: Show chain progress bars.
    """

    workers: Optional[int] = None
    log_level: str = "INFO"
    progress: bool = False


__all__ = ['RuntimeSettings']
