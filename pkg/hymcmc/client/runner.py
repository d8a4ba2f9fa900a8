"""Experiment runner, the entry point behind every CLI subcommand.

Example:
    >>> from hymcmc.client import ExperimentRunner
    >>> from hymcmc.models import load_config
    >>> runner = ExperimentRunner(load_config("uniform.json"), workers=4)
    >>> runner.generate_data()
    >>> runner.train()
    >>> report = runner.run("hybrid")[0]
    >>> print(report.qoi_estimate, report.standard_error)
"""

import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from hymcmc.client.types import RuntimeSettings
from hymcmc.errors import HymcmcConfigurationError, HymcmcValidationError
from hymcmc.fem.observation import ObservationLayout
from hymcmc.forward.base import ForwardModel
from hymcmc.forward.data import generate_observations, layout_of, load_observations, save_observations
from hymcmc.forward.numerical import NumericalForwardModel, numerical_forward
from hymcmc.hybrid.budget import budget_for_numerical_solves, select_budget
from hymcmc.hybrid.estimators import hybrid_estimate_gaussian, hybrid_estimate_uniform
from hymcmc.hybrid.statistics import batch_means_standard_error
from hymcmc.hybrid.terms import write_a_terms_csv
from hymcmc.models.base import parse_model
from hymcmc.models.experiment import REPEAT_SEED_STRIDE, ExperimentConfig
from hymcmc.models.hybrid import HybridEstimate, SampleBudget
from hymcmc.models.observation import ObservationSet
from hymcmc.models.report import AggregateReport, Provenance, RunReport
from hymcmc.models.surrogate import SurrogateErrorEstimate, TrainingReport
from hymcmc.oracle.expectation import posterior_expectation_quadrature
from hymcmc.prior.fields import field_builder_for
from hymcmc.prior.qoi import QuantityOfInterest, make_qoi
from hymcmc.prior.sampling import ParameterVector, draw_prior, make_rng
from hymcmc.sampler.chain import Chain, ChainTask, resolve_workers, run_chains
from hymcmc.sampler.io import summarize_chain, write_chain
from hymcmc.surrogate.dataset import generate_dataset, load_dataset, save_dataset
from hymcmc.surrogate.errors import estimate_epsilon, measure_surrogate_errors
from hymcmc.surrogate.forward import SurrogateForwardModel, coarse_surrogate
from hymcmc.surrogate.persistence import load_model, save_model
from hymcmc.surrogate.training import train_mlp
from hymcmc.types.experiment_types import NormalizerForm, RunMode
from hymcmc.types.model_types import SurrogateKind
from hymcmc.types.prior_types import PriorType
from hymcmc.version import __version__

logger = logging.getLogger(__name__)

T = TypeVar("T")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Seed offsets of the chain roles within one repeat
CHAIN_SEED_OFFSETS = {"ml_long": 0, "numerical": 1, "ml_short": 2}


class ExperimentRunner:
    """Runs the steps of one experiment and writes their artifacts.

    Every artifact lands under ``config.output_dir``::

        observations.json        observation data
        dataset.csv/.json        surrogate training data
        surrogate.hmlp           trained network
        training_report.json     loss histories and test metrics
        epsilon.json             surrogate gap estimate
        chains/<mode>-r<k>-<role>.csv/.json
        reports/<mode>-r<k>.json, reports/<mode>-aggregate.json

    Attributes:
        config: Experiment config
        settings: Runtime settings with the worker count resolved
        builder: Coefficient-field builder of the prior

    Example:
        >>> runner = ExperimentRunner(ExperimentConfig(output_dir="runs/u"))
        >>> runner.run("quadrature")[0].qoi_estimate
    """

    def __init__(
        self,
        config: ExperimentConfig,
        workers: Optional[int] = None,
        log_level: str = "INFO",
        progress: bool = False,
    ):
        """Initialize the runner.

        Args:
            config: Validated experiment config
            workers: Worker processes; ``HYMCMC_WORKERS`` or 1 when None
            log_level: Logging level name recorded in the settings
            progress: Show chain progress bars

        Raises:
            HymcmcConfigurationError: If a runtime setting is invalid
        """
        resolved = self._validate_settings(workers, log_level)
        self.config = config
        self.settings = RuntimeSettings(workers=resolved, log_level=log_level.upper(), progress=progress)
        self.builder = field_builder_for(config.prior)

    def _validate_settings(self, workers: Optional[int], log_level: str) -> int:
        """Validate runtime settings and resolve the worker count.

        Raises:
            HymcmcConfigurationError: Non-positive or malformed worker count, unknown log level
        """
        if log_level.upper() not in LOG_LEVELS:
            raise HymcmcConfigurationError(
                f"Unknown log level: {log_level}",
                details={"allowed": list(LOG_LEVELS)},
            )
        try:
            return resolve_workers(workers)
        except HymcmcValidationError as e:
            raise HymcmcConfigurationError(e.message, details=e.details)

    @classmethod
    def from_report(cls, path: Union[str, Path], **settings: Any) -> "ExperimentRunner":
        """Runner for the config embedded in a report."""
        report = cls.read_report(path)
        config = parse_model(ExperimentConfig, report.provenance.config, "embedded config")
        return cls(config, **settings)

    # Paths

    @property
    def output_path(self) -> Path:
        return self.config.output_path

    @property
    def dataset_path(self) -> Path:
        return self.output_path / "dataset.csv"

    @property
    def training_report_path(self) -> Path:
        return self.output_path / "training_report.json"

    @property
    def epsilon_path(self) -> Path:
        return self.output_path / "epsilon.json"

    @property
    def reports_dir(self) -> Path:
        return self.output_path / "reports"

    @property
    def chains_dir(self) -> Path:
        return self.output_path / "chains"

    def report_path(self, mode: RunMode, repeat: int) -> Path:
        return self.reports_dir / f"{RunMode(mode).value}-r{repeat}.json"

    def _write(self, fn: Callable[..., T], *args: Any) -> T:
        try:
            return fn(*args)
        except OSError as e:
            raise HymcmcConfigurationError(
                f"Cannot write to the output directory {self.output_path}",
                details=str(e),
            )

    def _write_json(self, path: Path, text: str) -> Path:
        def write() -> Path:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text + "\n", encoding="utf-8")
            return path

        return self._write(write)

    # Building blocks

    @property
    def prior_type(self) -> PriorType:
        return self.config.prior_type

    def qoi(self) -> QuantityOfInterest:
        return make_qoi(self.config.qoi, self.config.prior.dimension, self.builder)

    def truth_parameter(self) -> ParameterVector:
        """Generating parameter: ``truth_z`` or a prior draw with ``truth_seed``."""
        obs_cfg = self.config.observations
        if obs_cfg.truth_z is not None:
            z = np.asarray(obs_cfg.truth_z, dtype=float)
        else:
            z = draw_prior(self.config.prior, make_rng(obs_cfg.truth_seed))
        return ParameterVector(z, self.config.prior)

    def observations(self) -> ObservationSet:
        return load_observations(self.config.observation_path)

    def numerical_model(self, obs: ObservationSet, level: Optional[int] = None) -> NumericalForwardModel:
        """Numerical model on ``level`` (the target level by default) at the data's points."""
        return numerical_forward(
            level or self.config.level, self.builder, layout_of(obs), n=self.config.prior.dimension
        )

    def surrogate(self, numerical: NumericalForwardModel) -> ForwardModel:
        """The configured surrogate.

        Raises:
            HymcmcConfigurationError: If an mlp surrogate has not been trained yet
        """
        s = self.config.surrogate
        if SurrogateKind(s.kind) == SurrogateKind.NUMERICAL:
            return coarse_surrogate(numerical, s.level)
        path = self.config.model_path
        if not path.is_file():
            raise HymcmcConfigurationError(
                f"No trained surrogate at {path}; run train first",
                details={"model_path": str(path)},
            )
        return SurrogateForwardModel(load_model(path), numerical.layout, s.target_space, level=self.config.level)

    def chain_lengths(self) -> Tuple[int, int, Optional[SampleBudget]]:
        """``(m_ml, m_num, budget)``; the budget rule overrides the configured lengths."""
        budget_cfg = self.config.budget
        if not budget_cfg.active:
            return self.config.chains.ml_length, self.config.chains.num_length, None
        if budget_cfg.C is not None:
            budget = select_budget(self.config.level, budget_cfg.epsilon, budget_cfg.C)
        else:
            budget = budget_for_numerical_solves(
                self.config.level, budget_cfg.epsilon, budget_cfg.numerical_solves
            )
        logger.info("Budget rule: C=%.6g gives %d surrogate and %d numerical samples", budget.C, budget.m_ml, budget.m_num)
        return budget.m_ml, budget.m_num, budget

    def _seeds(self) -> Dict[str, int]:
        cfg = self.config
        return {
            "truth": cfg.observations.truth_seed,
            "noise": cfg.observations.seed,
            "dataset": cfg.surrogate.dataset_seed,
            "training": cfg.surrogate.seed,
        }

    def _provenance(self, seeds: Dict[str, int], repeat: int = 0) -> Provenance:
        return Provenance(
            config=self.config.model_dump(mode="json"),
            seeds={**self._seeds(), **seeds},
            version=__version__,
            observation_file=str(self.config.observation_path),
            repeat=repeat,
        )

    # Steps

    def generate_data(self, dataset: bool = True) -> Dict[str, Path]:
        """Write the observation file and, for mlp surrogates, the training dataset.

        An existing ``observations.data_path`` is used as is. Both files are
        identical across reruns with the same seeds.

        Returns:
            Written files by kind

        Raises:
            HymcmcConfigurationError: Unwritable output directory
        """
        cfg = self.config
        written: Dict[str, Path] = {}
        if cfg.observations.data_path is None:
            level = cfg.observations.level or cfg.level
            layout = ObservationLayout.lattice(cfg.observations.grid)
            model = numerical_forward(level, self.builder, layout, n=cfg.prior.dimension)
            obs = generate_observations(
                model,
                self.truth_parameter(),
                cfg.observations.sigma2,
                cfg.observations.seed,
                noise_free=cfg.observations.noise_free,
                level=level,
            )
            written["observations"] = self._write(save_observations, obs, cfg.observation_path)
        else:
            obs = self.observations()

        if dataset and SurrogateKind(cfg.surrogate.kind) == SurrogateKind.MLP:
            s = cfg.surrogate
            data = generate_dataset(
                self.numerical_model(obs), cfg.prior, s.dataset_size, s.split,
                s.dataset_seed, s.target_space, self.settings.workers,
            )
            written["dataset"] = self._write(save_dataset, data, self.dataset_path)
        logger.info("Generated data: %s", {k: str(v) for k, v in written.items()})
        return written

    def train(self, measure_errors: bool = True) -> TrainingReport:
        """Train the network, save it and write the training report.

        When ``measure_errors`` is set and the reference level is finer than
        the target level, the report carries an epsilon estimate.

        Raises:
            HymcmcConfigurationError: Not an mlp surrogate, or no dataset yet
            HymcmcTrainingError: The training loss became non-finite
        """
        cfg = self.config
        s = cfg.surrogate
        if SurrogateKind(s.kind) != SurrogateKind.MLP:
            raise HymcmcConfigurationError("Only mlp surrogates are trained", details={"kind": s.kind})
        if not self.dataset_path.is_file():
            raise HymcmcConfigurationError(
                f"Dataset not found: {self.dataset_path}; run generate-data first",
            )
        data = load_dataset(self.dataset_path)
        bounds = None
        if self.prior_type == PriorType.UNIFORM:
            bounds = (cfg.prior.lower, cfg.prior.upper)
        mlp, report = train_mlp(
            data, s.hidden_layers, s.adam, s.epochs, s.seed, s.batch_size, bounds, s.log_every
        )
        self._write(save_model, mlp, cfg.model_path)

        if measure_errors:
            if cfg.reference_level > cfg.level:
                numerical = self.numerical_model(self.observations())
                surrogate = SurrogateForwardModel(mlp, numerical.layout, s.target_space, level=cfg.level)
                report = report.model_copy(update={"error_estimate": self._measure(surrogate, numerical)})
            else:
                logger.warning("Reference level %d is not finer than level %d; skipping epsilon", cfg.reference_level, cfg.level)
        self._write_json(self.training_report_path, report.to_json())
        return report

    def _measure(self, surrogate: ForwardModel, numerical: NumericalForwardModel) -> SurrogateErrorEstimate:
        s = self.config.surrogate
        err_ml, err_num = measure_surrogate_errors(
            surrogate, numerical, self.config.reference_level, self.config.prior,
            s.reference_samples, s.reference_seed,
        )
        return estimate_epsilon(err_ml, err_num)

    def estimate_epsilon(
        self,
        err_ml: Optional[float] = None,
        err_num: Optional[float] = None,
    ) -> SurrogateErrorEstimate:
        """Surrogate gap from given errors, or measured against the reference level.

        Raises:
            HymcmcConfigurationError: If only one of the two errors is given
        """
        if (err_ml is None) != (err_num is None):
            raise HymcmcConfigurationError("Give both errors or neither")
        if err_ml is None:
            numerical = self.numerical_model(self.observations())
            estimate = self._measure(self.surrogate(numerical), numerical)
        else:
            estimate = estimate_epsilon(err_ml, err_num)
        self._write_json(self.epsilon_path, estimate.to_json())
        logger.info("Surrogate gap epsilon = %.4f", estimate.epsilon)
        return estimate

    def run(self, mode: Union[RunMode, str], repeats: int = 1) -> List[RunReport]:
        """Estimate the posterior QoI mean ``repeats`` times with independent seeds.

        Chains of all repeats run together across the worker pool. With more
        than one repeat an aggregate report is written as well.

        Raises:
            HymcmcConfigurationError: Missing observations, or a surrogate mode without a surrogate
            HymcmcNumericalError: A chain or the quadrature failed
        """
        mode = RunMode(mode)
        if repeats < 1:
            raise HymcmcConfigurationError("repeats must be at least 1", details={"repeats": repeats})
        obs = self.observations()
        if mode == RunMode.QUADRATURE:
            reports = self._run_quadrature(obs, repeats)
        else:
            reports = self._run_chains(mode, obs, repeats)
        paths = [self._write_json(self.report_path(mode, r.provenance.repeat), r.to_json()) for r in reports]
        if repeats > 1:
            self.aggregate(mode, paths)
        return reports

    def _run_quadrature(self, obs: ObservationSet, repeats: int) -> List[RunReport]:
        q = self.config.quadrature
        model = self.numerical_model(obs, level=q.level)
        value = posterior_expectation_quadrature(
            model, obs, self.config.prior, self.qoi(), q.n_points, q.gaussian_half_width
        )
        details = {"n_points": q.n_points, "level": q.level, "nodes": q.n_points ** self.config.prior.dimension}
        return [
            RunReport(
                mode=RunMode.QUADRATURE,
                qoi_estimate=[float(v) for v in value],
                standard_error=[0.0] * value.shape[0],
                details=details,
                provenance=self._provenance({}, repeat=r),
            )
            for r in range(repeats)
        ]

    def _chain_plan(
        self,
        mode: RunMode,
        obs: ObservationSet,
        numerical: NumericalForwardModel,
        surrogate: Optional[ForwardModel],
        qoi: QuantityOfInterest,
        base_seed: int,
        m_ml: int,
        m_num: int,
    ) -> Dict[str, ChainTask]:
        cfg = self.config
        progress = self.settings.progress

        def task(role: str, model: ForwardModel, length: int, companion: Optional[ForwardModel] = None) -> ChainTask:
            config = cfg.chain_config(length, base_seed + CHAIN_SEED_OFFSETS[role])
            return ChainTask(model, obs, cfg.prior, config, qoi, companion, progress)

        if mode == RunMode.NUMERICAL:
            return {"numerical": task("numerical", numerical, m_ml)}
        if mode == RunMode.ML:
            return {"ml_long": task("ml_long", surrogate, m_ml)}
        plan = {
            "ml_long": task("ml_long", surrogate, m_ml),
            "numerical": task("numerical", numerical, m_num, companion=surrogate),
        }
        if self.prior_type == PriorType.GAUSSIAN:
            plan["ml_short"] = task("ml_short", surrogate, m_num, companion=numerical)
        return plan

    def _run_chains(self, mode: RunMode, obs: ObservationSet, repeats: int) -> List[RunReport]:
        numerical = self.numerical_model(obs)
        surrogate = self.surrogate(numerical) if mode != RunMode.NUMERICAL else None
        qoi = self.qoi()
        m_ml, m_num, budget = self.chain_lengths()

        plans = [
            self._chain_plan(
                mode, obs, numerical, surrogate, qoi,
                self.config.chains.seed + r * REPEAT_SEED_STRIDE, m_ml, m_num,
            )
            for r in range(repeats)
        ]
        tasks = [t for plan in plans for t in plan.values()]
        logger.info("Running %d chains for %d %s repeat(s) on %d worker(s)", len(tasks), repeats, mode.value, self.settings.workers)
        results = iter(run_chains(tasks, self.settings.workers))

        reports = []
        for r, plan in enumerate(plans):
            chains = {role: next(results) for role in plan}
            seeds = {f"chain_{role}": t.config.seed for role, t in plan.items()}
            reports.append(self._chain_report(mode, r, chains, seeds, budget))
        return reports

    def _chain_report(
        self,
        mode: RunMode,
        repeat: int,
        chains: Dict[str, Chain],
        seeds: Dict[str, int],
        budget: Optional[SampleBudget],
    ) -> RunReport:
        summaries = {}
        for role, chain in chains.items():
            path = self.chains_dir / f"{mode.value}-r{repeat}-{role}.csv"
            self._write(write_chain, chain, path, seeds)
            summaries[role] = summarize_chain(chain, seeds).model_dump(mode="json")

        details: Dict[str, Any] = {"chains": summaries}
        if budget is not None:
            details["budget"] = budget.model_dump(mode="json")

        if mode != RunMode.HYBRID:
            (chain,) = chains.values()
            estimate = chain.qoi.mean(axis=0)
            se = batch_means_standard_error(chain.qoi)
        else:
            hybrid = self._hybrid_estimate(chains, details)
            self._write_audit(mode, repeat, chains)
            details["hybrid"] = hybrid.model_dump(mode="json")
            estimate = np.asarray(hybrid.total)
            se = np.asarray(hybrid.standard_errors["total"])

        return RunReport(
            mode=mode,
            qoi_estimate=[float(v) for v in estimate],
            standard_error=[float(v) for v in se],
            details=details,
            provenance=self._provenance(seeds, repeat=repeat),
        )

    def _hybrid_estimate(self, chains: Dict[str, Chain], details: Dict[str, Any]) -> HybridEstimate:
        if self.prior_type == PriorType.UNIFORM:
            return hybrid_estimate_uniform(chains["numerical"], chains["ml_long"])
        normalizer = NormalizerForm(self.config.normalizer)
        estimate = hybrid_estimate_gaussian(
            chains["numerical"], chains["ml_short"], chains["ml_long"], normalizer=normalizer
        )
        other = NormalizerForm.SWITCHED if normalizer == NormalizerForm.EXACT else NormalizerForm.EXACT
        alternative = hybrid_estimate_gaussian(
            chains["numerical"], chains["ml_short"], chains["ml_long"], normalizer=other
        )
        details["alternative_normalizer"] = {"normalizer": other.value, "total": alternative.total}
        return estimate

    def _write_audit(self, mode: RunMode, repeat: int, chains: Dict[str, Chain]) -> None:
        num = chains["numerical"]
        self._write(
            write_a_terms_csv, self.chains_dir / f"{mode.value}-r{repeat}-a_terms-numerical.csv",
            num.potentials, num.companion_potentials, num.qoi, "numerical",
        )
        if "ml_short" in chains:
            short = chains["ml_short"]
            self._write(
                write_a_terms_csv, self.chains_dir / f"{mode.value}-r{repeat}-a_terms-ml_short.csv",
                short.companion_potentials, short.potentials, short.qoi, "ml_short",
            )

    # Reports

    @staticmethod
    def read_report(path: Union[str, Path]) -> RunReport:
        """Read a run report.

        Raises:
            HymcmcConfigurationError: Missing or invalid report file
        """
        path = Path(path)
        if not path.is_file():
            raise HymcmcConfigurationError(f"Report not found: {path}")
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise HymcmcConfigurationError(f"Report is not valid JSON: {path}", details=str(e))
        return parse_model(RunReport, data, "run report")

    def _repeat_reports(self, mode: RunMode) -> List[Path]:
        prefix = f"{mode.value}-r"
        found = [p for p in self.reports_dir.glob(f"{prefix}*.json") if p.stem[len(prefix):].isdigit()]
        return sorted(found, key=lambda p: int(p.stem[len(prefix):]))

    def aggregate(
        self,
        mode: Union[RunMode, str],
        paths: Optional[Sequence[Union[str, Path]]] = None,
    ) -> AggregateReport:
        """Mean and spread of ``qoi_estimate`` over repeated reports.

        Args:
            mode: Mode whose reports are aggregated
            paths: Report files; every ``reports/<mode>-r<k>.json`` when None

        Raises:
            HymcmcConfigurationError: No reports, or a report of another mode
        """
        mode = RunMode(mode)
        files = [Path(p) for p in paths] if paths is not None else self._repeat_reports(mode)
        if not files:
            raise HymcmcConfigurationError(f"No {mode.value} reports to aggregate in {self.reports_dir}")
        reports = [self.read_report(p) for p in files]
        if any(RunMode(r.mode) != mode for r in reports):
            raise HymcmcConfigurationError("Reports of different modes cannot be aggregated")
        estimates = np.array([r.qoi_estimate for r in reports], dtype=float)
        std = estimates.std(axis=0, ddof=1) if len(reports) > 1 else np.zeros(estimates.shape[1])
        aggregate = AggregateReport(
            mode=mode,
            repeats=len(reports),
            mean=[float(v) for v in estimates.mean(axis=0)],
            std=[float(v) for v in std],
            estimates=estimates.tolist(),
            reports=[str(p) for p in files],
        )
        self._write_json(self.reports_dir / f"{mode.value}-aggregate.json", aggregate.to_json())
        logger.info("Aggregated %d %s reports: mean %s, std %s", aggregate.repeats, mode.value, aggregate.mean, aggregate.std)
        return aggregate


__all__ = ['ExperimentRunner', 'CHAIN_SEED_OFFSETS', 'LOG_LEVELS']
