"""Tests for Metropolis-Hastings chains."""

import math

import numpy as np
import pytest

from hymcmc.errors import HymcmcNumericalError, HymcmcValidationError
from hymcmc.forward import ForwardModel
from hymcmc.models import ChainConfig, GaussianPriorSpec, ObservationSet, UniformPriorSpec
from hymcmc.prior import ParameterQoI, make_rng
from hymcmc.sampler import (
    WORKERS_ENV,
    ChainTask,
    ReflectedRandomWalk,
    chain_mean,
    mh_step,
    resolve_workers,
    run_chain,
    run_chains,
)


class IdentityModel(ForwardModel):
    """G(z) = (scale * z_1,), a one-observation toy model."""

    def __init__(self, scale: float = 1.0):
        self.scale = scale

    @property
    def input_size(self) -> int:
        return 1

    @property
    def output_size(self) -> int:
        return 1

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        return np.array([self.scale * float(z[0])])


def one_point_data(delta: float, sigma2: float) -> ObservationSet:
    return ObservationSet(sigma2=sigma2, layout=[(0.5, 0.5)], delta=[delta], truth_z=[delta], seed=0)


class TestMhStep:
    """Test suite for mh_step."""

    def test_non_finite_proposal_rejected(self):
        """Test that an infinite proposal potential keeps the state."""
        kernel = ReflectedRandomWalk(0.1, np.zeros(1), np.ones(1))
        z = np.array([0.5])

        result = mh_step(z, 1.0, kernel, lambda _: math.inf, make_rng(0))

        assert not result.accepted and result.nonfinite
        assert result.z is z and result.phi == 1.0

    def test_downhill_accepted(self):
        """Test that a proposal with lower potential is accepted."""
        kernel = ReflectedRandomWalk(0.1, np.zeros(1), np.ones(1))

        result = mh_step(np.array([0.5]), 10.0, kernel, lambda _: 0.0, make_rng(0))

        assert result.accepted and result.phi == 0.0

    def test_two_draws_per_step(self):
        """Test that the generator advances equally for accepted and rejected steps."""
        kernel = ReflectedRandomWalk(0.1, np.zeros(1), np.ones(1))
        rng_a, rng_b = make_rng(3), make_rng(3)

        mh_step(np.array([0.5]), 0.0, kernel, lambda _: 0.0, rng_a)
        mh_step(np.array([0.5]), 0.0, kernel, lambda _: math.inf, rng_b)

        assert rng_a.random() == rng_b.random()

    def test_current_potential_must_be_finite(self):
        """Test that a non-finite current potential is rejected."""
        kernel = ReflectedRandomWalk(0.1, np.zeros(1), np.ones(1))

        with pytest.raises(HymcmcValidationError):
            mh_step(np.array([0.5]), math.nan, kernel, lambda _: 0.0, make_rng(0))


class TestRunChain:
    """Test suite for run_chain."""

    def test_uniform_posterior_moments(self):
        """Test the mean and variance of a nearly Gaussian posterior on [0, 1]."""
        config = ChainConfig(kernel="rw_reflect", step=0.15, length=40_000, seed=1)

        chain = run_chain(IdentityModel(), one_point_data(0.5, 0.01), UniformPriorSpec(), config, ParameterQoI(1))

        assert chain_mean(chain)[0] == pytest.approx(0.5, abs=0.01)
        assert chain.states[:, 0].var() == pytest.approx(0.01, rel=0.1)
        assert 0.2 < chain.acceptance_rate < 0.9

    def test_gaussian_posterior_moments(self):
        """Test pCN against the conjugate posterior N(1/2, 1/2)."""
        config = ChainConfig(kernel="pcn", beta=0.6, length=40_000, seed=2)

        chain = run_chain(IdentityModel(), one_point_data(1.0, 1.0), GaussianPriorSpec(n=1), config, ParameterQoI(1))

        assert chain_mean(chain)[0] == pytest.approx(0.5, abs=0.03)
        assert chain.states[:, 0].var() == pytest.approx(0.5, rel=0.1)

    def test_deterministic(self):
        """Test that the same seed reproduces the chain bit for bit."""
        config = ChainConfig(length=300, seed=9)
        runs = [
            run_chain(IdentityModel(), one_point_data(0.3, 0.05), UniformPriorSpec(), config, ParameterQoI(1))
            for _ in range(2)
        ]

        assert np.array_equal(runs[0].states, runs[1].states)
        assert np.array_equal(runs[0].potentials, runs[1].potentials)

    def test_burn_in_and_thinning(self):
        """Test stored step indices and the total evaluation count."""
        config = ChainConfig(length=50, burn_in=20, thin=3, seed=4)

        chain = run_chain(IdentityModel(), one_point_data(0.3, 0.05), UniformPriorSpec(), config, ParameterQoI(1))

        assert len(chain) == 50
        assert np.array_equal(chain.steps, 20 + 3 * np.arange(1, 51))
        # one evaluation for the start and one per step
        assert chain.model_evaluations == 1 + 20 + 150

    def test_potentials_match_states(self):
        """Test that stored potentials belong to the stored states."""
        obs = one_point_data(0.3, 0.05)
        chain = run_chain(IdentityModel(), obs, UniformPriorSpec(), ChainConfig(length=100, seed=5), ParameterQoI(1))

        expected = 0.5 * (0.3 - chain.states[:, 0]) ** 2 / 0.05

        assert np.allclose(chain.potentials, expected, rtol=1e-12, atol=1e-15)
        assert np.array_equal(chain.qoi, chain.states)

    def test_companion_potentials(self):
        """Test that the companion potential is recorded at every stored state."""
        obs = one_point_data(0.3, 0.05)
        chain = run_chain(
            IdentityModel(), obs, UniformPriorSpec(), ChainConfig(length=200, seed=6), ParameterQoI(1),
            companion=IdentityModel(1.1),
        )

        expected = 0.5 * (0.3 - 1.1 * chain.states[:, 0]) ** 2 / 0.05

        assert chain.has_companion
        assert np.allclose(chain.companion_potentials, expected)
        # evaluated once per distinct stored state
        assert 0 < chain.companion_evaluations <= len(chain)

    def test_companion_does_not_change_chain(self):
        """Test that the companion leaves the states untouched."""
        obs = one_point_data(0.3, 0.05)
        config = ChainConfig(length=200, seed=6)
        plain = run_chain(IdentityModel(), obs, UniformPriorSpec(), config, ParameterQoI(1))
        paired = run_chain(IdentityModel(), obs, UniformPriorSpec(), config, ParameterQoI(1), companion=IdentityModel(2.0))

        assert np.array_equal(plain.states, paired.states)

    def test_initial_state_outside_support(self):
        """Test that a starting point outside the box is rejected."""
        with pytest.raises(HymcmcValidationError):
            run_chain(
                IdentityModel(), one_point_data(0.3, 0.05), UniformPriorSpec(),
                ChainConfig(length=10, seed=0), ParameterQoI(1), initial=np.array([1.5]),
            )

    def test_non_finite_initial_potential(self):
        """Test that a non-finite potential at the start aborts the chain."""
        with pytest.raises(HymcmcNumericalError):
            run_chain(
                IdentityModel(math.inf), one_point_data(0.3, 0.05), UniformPriorSpec(),
                ChainConfig(length=10, seed=0), ParameterQoI(1), initial=np.array([0.5]),
            )


class TestRunChains:
    """Test suite for run_chains and worker resolution."""

    def test_results_independent_of_workers(self):
        """Test that parallel runs equal sequential ones, in task order."""
        obs = one_point_data(0.3, 0.05)
        tasks = [
            ChainTask(IdentityModel(), obs, UniformPriorSpec(), ChainConfig(length=100, seed=s), ParameterQoI(1))
            for s in (1, 2, 3)
        ]

        serial = run_chains(tasks, workers=1)
        parallel = run_chains(tasks, workers=2)

        assert [c.config.seed for c in parallel] == [1, 2, 3]
        assert all(np.array_equal(a.states, b.states) for a, b in zip(serial, parallel))

    def test_workers_from_environment(self, monkeypatch):
        """Test that the worker count falls back to the environment."""
        monkeypatch.setenv(WORKERS_ENV, "3")

        assert resolve_workers() == 3
        assert resolve_workers(2) == 2

    def test_default_single_worker(self, monkeypatch):
        """Test the default of one worker."""
        monkeypatch.delenv(WORKERS_ENV, raising=False)

        assert resolve_workers() == 1

    @pytest.mark.parametrize("raw", ["0", "many"])
    def test_invalid_worker_count(self, monkeypatch, raw):
        """Test that a zero or non-numeric worker count is rejected."""
        monkeypatch.setenv(WORKERS_ENV, raw)

        with pytest.raises(HymcmcValidationError):
            resolve_workers()


class TestChainMean:
    """Test suite for chain_mean."""

    def test_custom_function(self, chain_factory):
        """Test the mean of a function of the states."""
        chain = chain_factory(np.array([1.0, 2.0, 3.0]), np.zeros(3))

        assert chain_mean(chain, lambda z: z ** 2)[0] == pytest.approx(14 / 3)
        assert chain_mean(chain)[0] == pytest.approx(2.0)
