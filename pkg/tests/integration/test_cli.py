"""End-to-end tests of the hymcmc command line."""

import json
import logging

import pytest
from rich.logging import RichHandler

from hymcmc.cli.main import build_parser, configure_logging, log_level, main
from hymcmc.models import ExperimentConfig


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.delenv("HYMCMC_WORKERS", raising=False)


def write_config(config: ExperimentConfig, tmp_path) -> str:
    path = tmp_path / "config.json"
    path.write_text(config.to_json())
    return str(path)


class TestParser:
    """Test suite for argument parsing."""

    def test_run_requires_mode(self):
        """Test that run without --mode is a usage error."""
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args(["run", "config.json"])

        assert exc_info.value.code == 2

    def test_log_level(self):
        """Test verbosity flags."""
        assert log_level(0, False) == "INFO"
        assert log_level(2, False) == "DEBUG"
        assert log_level(1, True) == "WARNING"


class TestConfigureLogging:
    """Test suite for configure_logging."""

    @pytest.fixture(autouse=True)
    def restore_package_logger(self):
        package = logging.getLogger("hymcmc")
        saved = (package.handlers[:], package.level, package.propagate)
        yield
        package.handlers[:], package.level, package.propagate = saved

    def test_package_logger_only(self):
        """Test that the handler goes on the hymcmc logger and the root logger is untouched."""
        root_handlers = logging.getLogger().handlers[:]

        configure_logging("DEBUG")

        package = logging.getLogger("hymcmc")
        assert len(package.handlers) == 1
        assert isinstance(package.handlers[0], RichHandler)
        assert package.level == logging.DEBUG
        assert package.propagate is False
        assert logging.getLogger().handlers == root_handlers

    def test_module_loggers_inherit(self):
        """Test that module loggers take the package level."""
        configure_logging("WARNING")

        assert logging.getLogger("hymcmc.hybrid.estimators").getEffectiveLevel() == logging.WARNING


class TestMain:
    """Test suite for main."""

    def test_hybrid_workflow(self, smoke_config, tmp_path, capsys):
        """Test generate-data, run and report on a small problem."""
        config = write_config(smoke_config, tmp_path)

        assert main(["-q", "generate-data", config]) == 0
        assert main(["-q", "run", config, "--mode", "hybrid", "--repeats", "2"]) == 0
        assert main(["-q", "report", config, "--aggregate", "--mode", "hybrid"]) == 0

        out = capsys.readouterr().out
        assert "observations:" in out
        assert "Posterior QoI estimates" in out
        aggregate = json.loads((smoke_config.output_path / "reports" / "hybrid-aggregate.json").read_text())
        assert aggregate["repeats"] == 2

    def test_single_state_chains(self, smoke_config, tmp_path, capsys):
        """Test that one-state chains run and print a nan standard error."""
        smoke_config.chains.ml_length = 1
        smoke_config.chains.num_length = 1
        config = write_config(smoke_config, tmp_path)

        assert main(["-q", "generate-data", config]) == 0
        assert main(["-q", "run", config, "--mode", "ml"]) == 0
        assert main(["-q", "run", config, "--mode", "hybrid"]) == 0

        assert "nan" in capsys.readouterr().out

    def test_estimate_epsilon_from_errors(self, smoke_config, tmp_path, capsys):
        """Test epsilon from explicit errors."""
        config = write_config(smoke_config, tmp_path)

        assert main(["-q", "estimate-epsilon", config, "--err-ml", "0.8", "--err-num", "0.1"]) == 0

        assert "epsilon = 3.0000" in capsys.readouterr().out

    def test_missing_config(self, tmp_path):
        """Test that a missing config exits with code 2."""
        assert main(["-q", "run", str(tmp_path / "absent.json"), "--mode", "ml"]) == 2

    def test_invalid_config(self, tmp_path):
        """Test that a schema violation exits with code 2."""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"level": 99}))

        assert main(["-q", "generate-data", str(path)]) == 2

    def test_run_before_generate(self, smoke_config, tmp_path):
        """Test that a missing observation file exits with code 2."""
        assert main(["-q", "run", write_config(smoke_config, tmp_path), "--mode", "numerical"]) == 2

    def test_untrained_surrogate(self, mlp_config, tmp_path):
        """Test that an mlp run without a model exits with code 2."""
        config = write_config(mlp_config, tmp_path)

        assert main(["-q", "generate-data", config, "--no-dataset"]) == 0
        assert main(["-q", "run", config, "--mode", "ml"]) == 2

    def test_invalid_workers(self, smoke_config, tmp_path):
        """Test that a non-positive worker count exits with code 2."""
        assert main(["-q", "--workers", "0", "generate-data", write_config(smoke_config, tmp_path)]) == 2


def within(estimate: float, reference: float, se: float, floor: float) -> bool:
    return abs(estimate - reference) <= max(3.0 * se, floor)


@pytest.mark.slow
class TestReproduction:
    """Test suite for hybrid estimates against the quadrature reference."""

    def test_uniform(self, tmp_path):
        """Test the uniform-prior hybrid estimate on a level-3 problem."""
        config = ExperimentConfig.model_validate({
            "problem": "elliptic_uniform",
            "level": 3,
            "observations": {"sigma2": 0.001, "truth_z": [0.3], "seed": 11, "grid": 3},
            "surrogate": {"kind": "numerical", "level": 2},
            "chains": {"ml_length": 20000, "num_length": 2000, "step": 0.05, "seed": 5},
            "quadrature": {"n_points": 64, "level": 3},
            "output_dir": str(tmp_path / "uniform"),
        })
        path = write_config(config, tmp_path)

        assert main(["-q", "generate-data", path]) == 0
        assert main(["-q", "run", path, "--mode", "quadrature"]) == 0
        assert main(["-q", "run", path, "--mode", "hybrid"]) == 0

        reports = config.output_path / "reports"
        reference = json.loads((reports / "quadrature-r0.json").read_text())["qoi_estimate"][0]
        hybrid = json.loads((reports / "hybrid-r0.json").read_text())
        assert within(hybrid["qoi_estimate"][0], reference, hybrid["standard_error"][0], 0.01)

    def test_lognormal(self, tmp_path):
        """Test the Gaussian-prior hybrid estimate on a level-3 problem."""
        config = ExperimentConfig.for_problem(
            "elliptic_lognormal",
            level=3,
            prior={"type": "gaussian", "n": 1},
            observations={"sigma2": 0.2, "truth_z": [0.5], "seed": 11, "grid": 3},
            surrogate={"kind": "numerical", "level": 2},
            chains={"kernel": "pcn", "beta": 0.5, "ml_length": 20000, "num_length": 4000, "seed": 5},
            quadrature={"n_points": 64, "level": 3},
            output_dir=str(tmp_path / "lognormal"),
        )
        path = write_config(config, tmp_path)

        assert main(["-q", "generate-data", path]) == 0
        assert main(["-q", "run", path, "--mode", "quadrature"]) == 0
        assert main(["-q", "run", path, "--mode", "hybrid"]) == 0

        reports = config.output_path / "reports"
        reference = json.loads((reports / "quadrature-r0.json").read_text())["qoi_estimate"][0]
        hybrid = json.loads((reports / "hybrid-r0.json").read_text())
        assert within(hybrid["qoi_estimate"][0], reference, hybrid["standard_error"][0], 0.02)
        assert "alternative_normalizer" in hybrid["details"]
        assert (config.output_path / "chains" / "hybrid-r0-a_terms-ml_short.csv").is_file()

    def test_coarse_surrogate_repeats(self, tmp_path):
        """Test that the level-3 surrogate bias is corrected in at least four of five repeats."""
        config = ExperimentConfig.model_validate({
            "problem": "elliptic_uniform",
            "level": 5,
            "observations": {"sigma2": 0.001, "truth_z": [0.3], "seed": 11},
            "surrogate": {"kind": "numerical", "level": 3},
            "chains": {"ml_length": 50000, "num_length": 2000, "step": 0.05, "seed": 5},
            "quadrature": {"n_points": 32, "level": 5},
            "output_dir": str(tmp_path / "coarse"),
        })
        path = write_config(config, tmp_path)

        assert main(["-q", "generate-data", path]) == 0
        assert main(["-q", "run", path, "--mode", "quadrature"]) == 0
        assert main(["-q", "run", path, "--mode", "hybrid", "--repeats", "5"]) == 0

        reports = config.output_path / "reports"
        reference = json.loads((reports / "quadrature-r0.json").read_text())["qoi_estimate"][0]
        hits = misses = 0
        for r in range(5):
            report = json.loads((reports / f"hybrid-r{r}.json").read_text())
            hybrid = report["details"]["hybrid"]
            hits += abs(report["qoi_estimate"][0] - reference) <= 3 * report["standard_error"][0]
            coarse = hybrid["base_ml_mean"][0]
            misses += abs(coarse - reference) > 3 * hybrid["standard_errors"]["base_ml_mean"][0]
        assert hits >= 4
        assert misses >= 4

    def test_network_surrogate_against_fine_quadrature(self, tmp_path):
        """Test that the hybrid estimate removes the network's bias against a level-10 reference."""
        config = ExperimentConfig.model_validate({
            "problem": "elliptic_uniform",
            "level": 5,
            "observations": {"sigma2": 0.001, "truth_z": [0.3], "seed": 11},
            "surrogate": {
                "kind": "mlp",
                "hidden_layers": [32, 32],
                "epochs": 2000,
                "dataset_size": 500,
                "reference_level": 7,
                "reference_samples": 8,
            },
            "chains": {"ml_length": 100000, "num_length": 4000, "step": 0.05, "seed": 5},
            "quadrature": {"n_points": 32, "level": 10},
            "output_dir": str(tmp_path / "network"),
        })
        path = write_config(config, tmp_path)

        assert main(["-q", "generate-data", path]) == 0
        assert main(["-q", "train", path]) == 0
        assert main(["-q", "run", path, "--mode", "quadrature"]) == 0
        assert main(["-q", "run", path, "--mode", "hybrid"]) == 0

        reports = config.output_path / "reports"
        reference = json.loads((reports / "quadrature-r0.json").read_text())["qoi_estimate"][0]
        report = json.loads((reports / "hybrid-r0.json").read_text())
        hybrid = report["details"]["hybrid"]
        ml_error = abs(hybrid["base_ml_mean"][0] - reference)
        numerical_mean = report["details"]["chains"]["numerical"]["qoi_mean"][0]

        assert ml_error > hybrid["standard_errors"]["base_ml_mean"][0]
        assert abs(report["qoi_estimate"][0] - reference) <= max(3 * report["standard_error"][0], ml_error)
        assert abs(numerical_mean - reference) <= 5e-3
