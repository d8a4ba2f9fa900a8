"""``hymcmc`` command line.

Subcommands::

    hymcmc generate-data CONFIG
    hymcmc train CONFIG [--skip-epsilon]
    hymcmc run CONFIG --mode {numerical,ml,hybrid,quadrature} [--repeats N]
    hymcmc estimate-epsilon CONFIG [--err-ml E --err-num E]
    hymcmc report CONFIG --aggregate --mode MODE [REPORT ...]

Exit codes: 0 success, 2 configuration or validation error, 3 numerical
failure, 4 training failure.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from hymcmc.client import ExperimentRunner
from hymcmc.errors import HymcmcError
from hymcmc.models.experiment import load_config
from hymcmc.models.report import AggregateReport, RunReport
from hymcmc.types.experiment_types import RunMode
from hymcmc.version import __version__

logger = logging.getLogger("hymcmc")

EXIT_OK = 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hymcmc",
        description="Hybrid two-level MCMC for PDE-constrained Bayesian inverse problems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More log output (repeatable)")
    parser.add_argument("-q", "--quiet", action="store_true", help="Only warnings and errors")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes (default: $HYMCMC_WORKERS or 1)")
    parser.add_argument("--progress", action="store_true", help="Show chain progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate-data", help="Write observations and the surrogate training dataset")
    gen.add_argument("config", help="Experiment config JSON")
    gen.add_argument("--no-dataset", action="store_true", help="Only write the observation file")

    train = sub.add_parser("train", help="Train the surrogate network")
    train.add_argument("config")
    train.add_argument("--skip-epsilon", action="store_true", help="Do not measure the surrogate gap")

    run = sub.add_parser("run", help="Estimate the posterior mean of the QoI")
    run.add_argument("config")
    run.add_argument("--mode", required=True, choices=[m.value for m in RunMode])
    run.add_argument("--repeats", type=int, default=1, help="Independent seeded runs")

    eps = sub.add_parser("estimate-epsilon", help="Surrogate gap from errors against a reference level")
    eps.add_argument("config")
    eps.add_argument("--err-ml", type=float, default=None, help="Surrogate error (skips measurement)")
    eps.add_argument("--err-num", type=float, default=None, help="Level-L numerical error (skips measurement)")

    report = sub.add_parser("report", help="Summarize run reports")
    report.add_argument("config")
    report.add_argument("--aggregate", action="store_true", required=True, help="Aggregate repeated runs")
    report.add_argument("--mode", required=True, choices=[m.value for m in RunMode])
    report.add_argument("reports", nargs="*", help="Report files; every repeat of MODE when omitted")
    return parser


def log_level(verbose: int, quiet: bool) -> str:
    if quiet:
        return "WARNING"
    return "DEBUG" if verbose > 0 else "INFO"


def configure_logging(level: str) -> None:
    """Install a RichHandler on the package logger."""
    handler = RichHandler(show_path=False, rich_tracebacks=False)
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))
    logger.handlers[:] = [handler]
    logger.setLevel(level)
    logger.propagate = False


def _print_reports(console: Console, reports: Sequence[RunReport]) -> None:
    table = Table(title="Posterior QoI estimates")
    table.add_column("mode")
    table.add_column("repeat", justify="right")
    table.add_column("estimate")
    table.add_column("std. error")
    for r in reports:
        table.add_row(
            str(r.mode),
            str(r.provenance.repeat),
            ", ".join(f"{v:.6g}" for v in r.qoi_estimate),
            ", ".join(f"{v:.3g}" for v in r.standard_error),
        )
    console.print(table)


def _print_aggregate(console: Console, aggregate: AggregateReport) -> None:
    table = Table(title=f"{aggregate.mode} over {aggregate.repeats} run(s)")
    table.add_column("component", justify="right")
    table.add_column("mean")
    table.add_column("std")
    for i, (m, s) in enumerate(zip(aggregate.mean, aggregate.std)):
        table.add_row(str(i + 1), f"{m:.6g}", f"{s:.3g}")
    console.print(table)


def dispatch(args: argparse.Namespace, console: Console) -> int:
    config = load_config(args.config)
    runner = ExperimentRunner(
        config,
        workers=args.workers,
        log_level=log_level(args.verbose, args.quiet),
        progress=args.progress,
    )
    if args.command == "generate-data":
        for kind, path in runner.generate_data(dataset=not args.no_dataset).items():
            console.print(f"{kind}: {path}")
    elif args.command == "train":
        report = runner.train(measure_errors=not args.skip_epsilon)
        console.print(f"best epoch {report.best_epoch}, test MSE {report.test_mse}, test R2 {report.test_r2}")
        if report.error_estimate is not None:
            console.print(f"epsilon = {report.error_estimate.epsilon:.4f}")
    elif args.command == "run":
        reports = runner.run(args.mode, repeats=args.repeats)
        _print_reports(console, reports)
        if args.repeats > 1:
            _print_aggregate(console, runner.aggregate(args.mode))
    elif args.command == "estimate-epsilon":
        estimate = runner.estimate_epsilon(args.err_ml, args.err_num)
        console.print(f"epsilon = {estimate.epsilon:.4f} (err_ml={estimate.err_ml:.4e}, err_num={estimate.err_num:.4e})")
    elif args.command == "report":
        _print_aggregate(console, runner.aggregate(args.mode, args.reports or None))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``hymcmc`` script; returns the exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(log_level(args.verbose, args.quiet))
    console = Console(stderr=False)
    try:
        return dispatch(args, console)
    except HymcmcError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code


__all__ = ['build_parser', 'configure_logging', 'dispatch', 'log_level', 'main']


if __name__ == "__main__":
    sys.exit(main())
