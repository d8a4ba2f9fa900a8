"""Run report schemas shared by every estimation mode."""

from typing import Any, Dict, List, Optional

from pydantic import Field

from hymcmc.models.base import BaseModel
from hymcmc.types.experiment_types import RunMode


class Provenance(BaseModel):
    """Everything needed to reproduce a report.

    Attributes:
        config: Resolved experiment config as a JSON object
        seeds: Every seed used, by role
        version: Package version that produced the report
        observation_file: Observation file the run read
        repeat: Repeat index within a ``--repeats`` run
    """

    config: Dict[str, Any]
    seeds: Dict[str, int] = Field(default_factory=dict)
    version: str
    observation_file: Optional[str] = None
    repeat: int = Field(0, ge=0)


class RunReport(BaseModel):
    """Result of one ``run`` invocation.

    Attributes:
        mode: Estimation mode
        qoi_estimate: Estimated posterior expectation of every QoI component
        standard_error: Monte Carlo standard error per component (zeros for quadrature)
        details: Mode-specific payload (chain summaries, hybrid breakdown, rule info)
        provenance: Reproduction block
    """

    mode: RunMode
    qoi_estimate: List[float]
    standard_error: List[float]
    details: Dict[str, Any] = Field(default_factory=dict)
    provenance: Provenance


class AggregateReport(BaseModel):
    """Spread of ``qoi_estimate`` across repeated runs.

    Attributes:
        mode: Estimation mode of the aggregated runs
        repeats: Number of runs
        mean: Component-wise mean of the estimates
        std: Component-wise sample standard deviation (zero for a single run)
        estimates: Every run's estimate
        reports: Files the estimates were read from
    """

    mode: RunMode
    repeats: int = Field(..., ge=1)
    mean: List[float]
    std: List[float]
    estimates: List[List[float]]
    reports: List[str] = Field(default_factory=list)


__all__ = ['Provenance', 'RunReport', 'AggregateReport']
