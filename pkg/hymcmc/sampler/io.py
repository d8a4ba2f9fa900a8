"""Chain CSV dumps and their JSON summaries.

CSV columns: ``step, z_1..z_n, phi, [phi_companion,] qoi_1..qoi_q, accepted``.
Floats are written with ``repr`` so a dumped chain reloads bit-exactly.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from hymcmc.errors import HymcmcPersistenceError
from hymcmc.models.base import parse_model
from hymcmc.models.chain import ChainSummary
from hymcmc.sampler.chain import Chain
from hymcmc.sampler.diagnostics import MIN_SERIES_LENGTH, ess_per_component

logger = logging.getLogger(__name__)


def chain_header(chain: Chain) -> List[str]:
    n = chain.states.shape[1]
    header = ["step"] + [f"z_{i + 1}" for i in range(n)] + ["phi"]
    if chain.has_companion:
        header.append("phi_companion")
    labels = chain.labels or [f"qoi_{i + 1}" for i in range(chain.qoi.shape[1])]
    return header + labels + ["accepted"]


def summarize_chain(chain: Chain, seeds: Optional[Dict[str, int]] = None) -> ChainSummary:
    """JSON summary of a chain; ESS is reported per QoI component."""
    if len(chain) >= MIN_SERIES_LENGTH:
        ess = [float(v) for v in ess_per_component(chain.qoi)]
    else:
        ess = [float(len(chain))] * chain.qoi.shape[1]
    return ChainSummary(
        config=chain.config,
        cost_class=chain.cost_class,
        acceptance_rate=chain.acceptance_rate,
        nonfinite_rejections=chain.nonfinite_rejections,
        ess=ess,
        qoi_mean=[float(v) for v in chain.qoi.mean(axis=0)],
        model_evaluations=chain.model_evaluations,
        companion_evaluations=chain.companion_evaluations,
        burn_in=chain.burn_in,
        seeds=seeds or {"chain": chain.config.seed},
    )


def summary_path(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix(".json")


def write_chain(chain: Chain, path: Union[str, Path], seeds: Optional[Dict[str, int]] = None) -> Path:
    """Write the chain CSV and its JSON summary next to it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(chain_header(chain))
        for i in range(len(chain)):
            row = [str(int(chain.steps[i]))]
            row += [repr(float(v)) for v in chain.states[i]]
            row.append(repr(float(chain.potentials[i])))
            if chain.has_companion:
                row.append(repr(float(chain.companion_potentials[i])))
            row += [repr(float(v)) for v in chain.qoi[i]]
            row.append("1" if chain.accepted[i] else "0")
            writer.writerow(row)
    summary_path(path).write_text(summarize_chain(chain, seeds).to_json() + "\n", encoding="utf-8")
    logger.debug("Wrote %d chain states to %s", len(chain), path)
    return path


def _columns(header: List[str]) -> Tuple[List[int], bool, List[int]]:
    z_cols = [i for i, h in enumerate(header) if h.startswith("z_")]
    has_companion = "phi_companion" in header
    first_q = header.index("phi") + (2 if has_companion else 1)
    q_cols = list(range(first_q, len(header) - 1))
    return z_cols, has_companion, q_cols


def read_chain(path: Union[str, Path]) -> Chain:
    """Reload a chain written by :func:`write_chain`.

    Raises:
        HymcmcPersistenceError: Missing files or a malformed CSV
    """
    path = Path(path)
    meta_file = summary_path(path)
    if not path.is_file() or not meta_file.is_file():
        raise HymcmcPersistenceError(f"Chain dump not found: {path}", details={"summary": str(meta_file)})
    summary = parse_model(ChainSummary, json.loads(meta_file.read_text(encoding="utf-8")), "chain summary")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][0] != "step" or "phi" not in rows[0] or rows[0][-1] != "accepted":
        raise HymcmcPersistenceError("Chain CSV has an unexpected header", details={"path": str(path)})
    header, body = rows[0], rows[1:]
    z_cols, has_companion, q_cols = _columns(header)
    phi_col = header.index("phi")
    try:
        table = [[float(v) for v in row[1:-1]] for row in body]
        steps = np.array([int(row[0]) for row in body], dtype=np.int64)
        accepted = np.array([row[-1] == "1" for row in body], dtype=bool)
        data = np.array(table, dtype=float).reshape(len(body), len(header) - 2)
    except (ValueError, IndexError) as e:
        raise HymcmcPersistenceError("Chain CSV contains a malformed row", details=str(e))
    # column j of the CSV is column j - 1 of ``data``
    return Chain(
        config=summary.config,
        states=data[:, [c - 1 for c in z_cols]],
        potentials=data[:, phi_col - 1].copy(),
        qoi=data[:, [c - 1 for c in q_cols]],
        accepted=accepted,
        steps=steps,
        companion_potentials=data[:, phi_col].copy() if has_companion else None,
        acceptance_rate=summary.acceptance_rate,
        nonfinite_rejections=summary.nonfinite_rejections,
        model_evaluations=summary.model_evaluations,
        companion_evaluations=summary.companion_evaluations,
        cost_class=summary.cost_class,
        labels=[header[c] for c in q_cols],
    )


__all__ = ['chain_header', 'summarize_chain', 'summary_path', 'write_chain', 'read_chain']
