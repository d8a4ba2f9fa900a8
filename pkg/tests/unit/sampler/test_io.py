"""Tests for chain dumps."""

import json

import numpy as np
import pytest

from hymcmc.errors import HymcmcPersistenceError
from hymcmc.sampler import chain_header, read_chain, summarize_chain, summary_path, write_chain


@pytest.fixture
def paired_chain(chain_factory):
    rng = np.random.default_rng(0)
    states = rng.uniform(size=(30, 2))
    return chain_factory(
        states,
        rng.exponential(size=30),
        qoi=states[:, :1] * 3.0,
        companion=rng.exponential(size=30) / 3.0,
        seed=12,
    )


class TestChainDump:
    """Test suite for write_chain and read_chain."""

    def test_header(self, paired_chain):
        """Test the column layout with a companion potential."""
        assert chain_header(paired_chain) == ["step", "z_1", "z_2", "phi", "phi_companion", "qoi_1", "accepted"]

    def test_header_without_companion(self, chain_factory):
        """Test that the companion column is omitted for plain chains."""
        chain = chain_factory(np.zeros(12), np.zeros(12))

        assert "phi_companion" not in chain_header(chain)

    def test_reload_bit_exact(self, paired_chain, tmp_path):
        """Test that a dumped chain reloads with identical arrays."""
        path = write_chain(paired_chain, tmp_path / "chains" / "c.csv")

        back = read_chain(path)

        assert np.array_equal(back.states, paired_chain.states)
        assert np.array_equal(back.potentials, paired_chain.potentials)
        assert np.array_equal(back.companion_potentials, paired_chain.companion_potentials)
        assert np.array_equal(back.qoi, paired_chain.qoi)
        assert np.array_equal(back.steps, paired_chain.steps)
        assert np.array_equal(back.accepted, paired_chain.accepted)
        assert back.config == paired_chain.config
        assert back.labels == ["qoi_1"]

    def test_summary_next_to_dump(self, paired_chain, tmp_path):
        """Test the JSON summary written beside the CSV."""
        path = write_chain(paired_chain, tmp_path / "c.csv", seeds={"chain_numerical": 12})

        summary = json.loads(summary_path(path).read_text())

        assert summary["seeds"] == {"chain_numerical": 12}
        assert summary["model_evaluations"] == 30
        assert summary["qoi_mean"] == pytest.approx([float(paired_chain.qoi.mean())])
        assert len(summary["ess"]) == 1

    def test_short_chain_ess(self, chain_factory):
        """Test that chains shorter than ten states report their length as ESS."""
        summary = summarize_chain(chain_factory(np.arange(5.0), np.zeros(5)))

        assert summary.ess == [5.0]

    def test_missing_summary(self, paired_chain, tmp_path):
        """Test that a dump without its summary is rejected."""
        path = write_chain(paired_chain, tmp_path / "c.csv")
        summary_path(path).unlink()

        with pytest.raises(HymcmcPersistenceError):
            read_chain(path)

    def test_malformed_row(self, paired_chain, tmp_path):
        """Test that a non-numeric value is rejected."""
        path = write_chain(paired_chain, tmp_path / "c.csv")
        lines = path.read_text().splitlines()
        lines[3] = lines[3].replace(lines[3].split(",")[1], "oops", 1)
        path.write_text("\n".join(lines) + "\n")

        with pytest.raises(HymcmcPersistenceError):
            read_chain(path)

    def test_bad_header(self, paired_chain, tmp_path):
        """Test that a CSV without the step column is rejected."""
        path = write_chain(paired_chain, tmp_path / "c.csv")
        text = path.read_text().replace("step,", "index,", 1)
        path.write_text(text)

        with pytest.raises(HymcmcPersistenceError):
            read_chain(path)
