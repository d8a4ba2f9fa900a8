"""Training datasets generated with the numerical model.

A dataset CSV has the header ``z_1..z_n,t_1..t_k`` and one row per record;
the JSON sidecar next to it (same stem, ``.json``) holds the seed, level,
target space and split indices.
"""

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from hymcmc.errors import HymcmcNumericalError, HymcmcPersistenceError, HymcmcValidationError
from hymcmc.forward.numerical import NumericalForwardModel
from hymcmc.models.base import parse_model
from hymcmc.models.dataset import DatasetMeta
from hymcmc.prior.sampling import AnyPrior, draw_prior, make_rng
from hymcmc.types.model_types import TargetSpace

logger = logging.getLogger(__name__)

MIN_DATASET_SIZE = 10


@dataclass(eq=False)
class Dataset:
    """Parameter/target pairs with a train/validation/test split.

    Attributes:
        inputs: Parameters, shape (m, n)
        targets: Observation vectors or nodal fields, shape (m, k)
        train: Training indices
        validation: Validation indices
        test: Test indices
        gen_seed: Seed of the prior draws and the split
        target_space: What the targets are
        level: Level of the generating model
    """

    inputs: np.ndarray
    targets: np.ndarray
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray
    gen_seed: int
    target_space: TargetSpace = TargetSpace.OBSERVATIONS
    level: Optional[int] = None

    @property
    def size(self) -> int:
        return self.inputs.shape[0]

    @property
    def n_in(self) -> int:
        return self.inputs.shape[1]

    @property
    def n_out(self) -> int:
        return self.targets.shape[1]

    def split(self, part: str) -> Tuple[np.ndarray, np.ndarray]:
        """Inputs and targets of ``train``, ``validation`` or ``test``."""
        idx = getattr(self, part)
        return self.inputs[idx], self.targets[idx]

    def meta(self) -> DatasetMeta:
        return DatasetMeta(
            count=self.size,
            n_in=self.n_in,
            n_out=self.n_out,
            target_space=self.target_space,
            level=self.level,
            seed=self.gen_seed,
            train=[int(i) for i in self.train],
            validation=[int(i) for i in self.validation],
            test=[int(i) for i in self.test],
        )


def split_indices(count: int, fracs: Sequence[float], rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Random disjoint train/validation/test index sets covering ``range(count)``."""
    if len(fracs) != 3 or any(f < 0 for f in fracs) or abs(sum(fracs) - 1.0) > 1e-9:
        raise HymcmcValidationError("Split fractions must be three non-negative numbers summing to 1", details=list(fracs))
    perm = rng.permutation(count)
    n_train = int(round(fracs[0] * count))
    n_val = min(int(round(fracs[1] * count)), count - n_train)
    return (
        np.sort(perm[:n_train]),
        np.sort(perm[n_train:n_train + n_val]),
        np.sort(perm[n_train + n_val:]),
    )


def _evaluate_records(model: NumericalForwardModel, target_space: str, zs: np.ndarray) -> np.ndarray:
    if TargetSpace(target_space) == TargetSpace.FIELD:
        return np.stack([model.solve(z).values for z in zs])
    return np.stack([model.evaluate(z) for z in zs])


def generate_dataset(
    model: NumericalForwardModel,
    prior: AnyPrior,
    count: int,
    split_fracs: Sequence[float] = (0.5, 0.25, 0.25),
    seed: int = 0,
    target_space: TargetSpace = TargetSpace.OBSERVATIONS,
    workers: int = 1,
) -> Dataset:
    """Draw ``count`` prior samples and evaluate the numerical model on each.

    Records are evaluated in ``workers`` processes; the result does not depend
    on the worker count.

    Raises:
        HymcmcValidationError: count below 10 or invalid split fractions
        HymcmcNumericalError: A target contains non-finite values
    """
    if count < MIN_DATASET_SIZE:
        raise HymcmcValidationError(f"A dataset needs at least {MIN_DATASET_SIZE} records", details={"count": count})
    rng = make_rng(seed)
    inputs = draw_prior(prior, rng, count)
    train, validation, test = split_indices(count, split_fracs, rng)
    space = TargetSpace(target_space).value

    if workers > 1:
        chunks = [c for c in np.array_split(inputs, workers) if len(c)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_evaluate_records, [model] * len(chunks), [space] * len(chunks), chunks))
        targets = np.concatenate(parts, axis=0)
    else:
        targets = _evaluate_records(model, space, inputs)

    if not np.all(np.isfinite(targets)):
        raise HymcmcNumericalError("Dataset targets contain non-finite values")
    logger.info(
        "Generated dataset: %d records (%d/%d/%d), %d targets each, level %d",
        count, train.size, validation.size, test.size, targets.shape[1], model.level,
    )
    return Dataset(
        inputs=inputs,
        targets=targets,
        train=train,
        validation=validation,
        test=test,
        gen_seed=seed,
        target_space=TargetSpace(space),
        level=model.level,
    )


def sidecar_path(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix(".json")


def save_dataset(data: Dataset, path: Union[str, Path]) -> Path:
    """Write the dataset CSV and its JSON sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = [f"z_{i + 1}" for i in range(data.n_in)] + [f"t_{i + 1}" for i in range(data.n_out)]
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for z, t in zip(data.inputs, data.targets):
            writer.writerow([repr(float(v)) for v in z] + [repr(float(v)) for v in t])
    sidecar_path(path).write_text(data.meta().to_json() + "\n", encoding="utf-8")
    return path


def load_dataset(path: Union[str, Path]) -> Dataset:
    """Read a dataset written by :func:`save_dataset`.

    Raises:
        HymcmcPersistenceError: Missing files or a CSV that disagrees with its sidecar
    """
    path = Path(path)
    meta_file = sidecar_path(path)
    if not path.is_file() or not meta_file.is_file():
        raise HymcmcPersistenceError(f"Dataset not found: {path}", details={"sidecar": str(meta_file)})
    meta = parse_model(DatasetMeta, json.loads(meta_file.read_text(encoding="utf-8")), "dataset sidecar")
    with path.open(newline="", encoding="utf-8") as fh:
        rows: List[List[str]] = list(csv.reader(fh))
    if len(rows) != meta.count + 1 or len(rows[0]) != meta.n_in + meta.n_out:
        raise HymcmcPersistenceError(
            "Dataset CSV does not match its sidecar",
            details={"rows": len(rows) - 1, "columns": len(rows[0]) if rows else 0}
        )
    try:
        table = np.array([[float(v) for v in row] for row in rows[1:]], dtype=float)
    except ValueError as e:
        raise HymcmcPersistenceError("Dataset CSV contains a malformed value", details=str(e))
    return Dataset(
        inputs=table[:, :meta.n_in],
        targets=table[:, meta.n_in:],
        train=np.asarray(meta.train, dtype=np.int64),
        validation=np.asarray(meta.validation, dtype=np.int64),
        test=np.asarray(meta.test, dtype=np.int64),
        gen_seed=meta.seed,
        target_space=TargetSpace(meta.target_space),
        level=meta.level,
    )


__all__ = [
    'MIN_DATASET_SIZE',
    'Dataset',
    'split_indices',
    'generate_dataset',
    'save_dataset',
    'load_dataset',
    'sidecar_path',
]
