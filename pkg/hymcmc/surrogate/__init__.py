"""Neural-network surrogates: datasets, training, persistence and error estimates."""

from hymcmc.surrogate.dataset import (
    MIN_DATASET_SIZE,
    Dataset,
    generate_dataset,
    load_dataset,
    save_dataset,
    sidecar_path,
    split_indices,
)
from hymcmc.surrogate.errors import estimate_epsilon, measure_surrogate_errors
from hymcmc.surrogate.forward import CoarseSurrogate, SurrogateForwardModel, coarse_surrogate
from hymcmc.surrogate.mlp import MlpModel, predict
from hymcmc.surrogate.persistence import (
    FORMAT_VERSION,
    MAGIC,
    decode_model,
    encode_model,
    load_model,
    save_model,
)
from hymcmc.surrogate.training import build_network, r2_score, train_mlp

__all__ = [
    # Dataset
    "MIN_DATASET_SIZE",
    "Dataset",
    "generate_dataset",
    "load_dataset",
    "save_dataset",
    "sidecar_path",
    "split_indices",
    # Network
    "MlpModel",
    "predict",
    "build_network",
    "train_mlp",
    "r2_score",
    # Persistence
    "MAGIC",
    "FORMAT_VERSION",
    "encode_model",
    "decode_model",
    "save_model",
    "load_model",
    # Forward models
    "SurrogateForwardModel",
    "CoarseSurrogate",
    "coarse_surrogate",
    # Errors
    "estimate_epsilon",
    "measure_surrogate_errors",
]
