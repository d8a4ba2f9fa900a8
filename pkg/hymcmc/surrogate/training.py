"""Surrogate training with torch and Adam.

Training runs in float64 on the CPU. Targets are standardized per column on
the training split; the output layer starts at zero so the untrained network
predicts the training mean. The weights with the lowest validation loss are
kept (training loss when there is no validation split).
"""

import copy
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import torch
from torch import nn

from hymcmc.errors import HymcmcTrainingError, HymcmcValidationError
from hymcmc.models.surrogate import AdamParams, TrainingReport
from hymcmc.surrogate.dataset import Dataset
from hymcmc.surrogate.mlp import MlpModel, predict

logger = logging.getLogger(__name__)


def build_network(layer_sizes: Sequence[int]) -> nn.Sequential:
    """Linear layers with ReLU between them and a zero-initialized output layer."""
    layers: List[nn.Module] = []
    for i in range(len(layer_sizes) - 1):
        layers.append(nn.Linear(layer_sizes[i], layer_sizes[i + 1]))
        if i < len(layer_sizes) - 2:
            layers.append(nn.ReLU())
    net = nn.Sequential(*layers).to(torch.float64)
    out = net[-1]
    with torch.no_grad():
        out.weight.zero_()
        out.bias.zero_()
    return net


def _to_mlp(
    net: nn.Sequential,
    input_lo: np.ndarray,
    input_hi: np.ndarray,
    out_mean: np.ndarray,
    out_scale: np.ndarray,
    meta: dict,
) -> MlpModel:
    linears = [m for m in net if isinstance(m, nn.Linear)]
    return MlpModel(
        weights=[m.weight.detach().cpu().numpy().copy() for m in linears],
        biases=[m.bias.detach().cpu().numpy().copy() for m in linears],
        input_lo=input_lo,
        input_hi=input_hi,
        out_mean=out_mean,
        out_scale=out_scale,
        meta=meta,
    )


def input_range(inputs: np.ndarray, bounds: Optional[Tuple[np.ndarray, np.ndarray]] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Normalization range: the prior box when given, else the data range."""
    if bounds is not None:
        return np.asarray(bounds[0], dtype=float), np.asarray(bounds[1], dtype=float)
    lo, hi = inputs.min(axis=0), inputs.max(axis=0)
    hi = np.where(hi > lo, hi, lo + 1.0)
    return lo, hi


def output_scaling(targets: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Per-column mean and standard deviation; constant columns get scale 1."""
    mean = targets.mean(axis=0)
    scale = targets.std(axis=0)
    scale = np.where(scale > 0.0, scale, 1.0)
    return mean, scale


def r2_score(y_true: np.ndarray, y_pred: np.ndarray) -> Optional[float]:
    """Coefficient of determination over all components; None for constant targets."""
    ss_res = float(np.sum((y_true - y_pred) ** 2))
    ss_tot = float(np.sum((y_true - y_true.mean(axis=0)) ** 2))
    if ss_tot == 0.0:
        return None
    return 1.0 - ss_res / ss_tot


def train_mlp(
    data: Dataset,
    hidden_layers: Sequence[int] = (512, 512),
    adam: AdamParams = AdamParams(),
    epochs: int = 10000,
    seed: int = 0,
    batch_size: Optional[int] = None,
    input_bounds: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    log_every: int = 500,
) -> Tuple[MlpModel, TrainingReport]:
    """Train a ReLU network on the dataset's training split.

    Args:
        data: Dataset with a non-empty training split
        hidden_layers: Hidden-layer widths
        adam: Optimizer constants
        epochs: Number of passes over the training split, at least 1
        seed: Seed of the initialization and the batch order
        batch_size: Mini-batch size; full batch when None
        input_bounds: Input normalization box; the data range when None
        log_every: Epoch interval of progress logs

    Returns:
        The selected network and a training report with loss histories and
        test metrics

    Raises:
        HymcmcValidationError: Empty training split or epochs < 1
        HymcmcTrainingError: The training loss became non-finite
    """
    if epochs < 1:
        raise HymcmcValidationError("epochs must be at least 1", details={"epochs": epochs})
    x_train, y_train = data.split("train")
    if x_train.shape[0] == 0:
        raise HymcmcValidationError("The training split is empty")
    x_val, y_val = data.split("validation")

    layer_sizes = [data.n_in] + list(hidden_layers) + [data.n_out]
    input_lo, input_hi = input_range(data.inputs, input_bounds)
    out_mean, out_scale = output_scaling(y_train)

    torch.manual_seed(seed)
    batch_gen = torch.Generator().manual_seed(seed)
    net = build_network(layer_sizes)
    optimizer = torch.optim.Adam(
        net.parameters(), lr=adam.lr, betas=(adam.beta1, adam.beta2), eps=adam.eps
    )
    loss_fn = nn.MSELoss()

    def tensors(x: np.ndarray, y: np.ndarray) -> Tuple[torch.Tensor, torch.Tensor]:
        xn = 2.0 * (x - input_lo) / (input_hi - input_lo) - 1.0
        yn = (y - out_mean) / out_scale
        return torch.from_numpy(np.ascontiguousarray(xn)), torch.from_numpy(np.ascontiguousarray(yn))

    xt, yt = tensors(x_train, y_train)
    xv, yv = tensors(x_val, y_val) if x_val.shape[0] else (None, None)
    m = xt.shape[0]
    bs = m if batch_size is None else min(batch_size, m)

    loss_history: List[float] = []
    validation_history: List[float] = []
    best_loss = math.inf
    best_epoch = 0
    best_state = copy.deepcopy(net.state_dict())

    for epoch in range(epochs):
        net.train()
        order = torch.randperm(m, generator=batch_gen) if bs < m else torch.arange(m)
        total = 0.0
        for start in range(0, m, bs):
            idx = order[start:start + bs]
            optimizer.zero_grad()
            loss = loss_fn(net(xt[idx]), yt[idx])
            loss.backward()
            optimizer.step()
            total += float(loss.item()) * idx.shape[0]
        epoch_loss = total / m
        if not math.isfinite(epoch_loss):
            raise HymcmcTrainingError("Training loss is not finite", epoch=epoch, details={"loss": epoch_loss})
        loss_history.append(epoch_loss)

        if xv is not None:
            net.eval()
            with torch.no_grad():
                score = float(loss_fn(net(xv), yv).item())
            validation_history.append(score)
        else:
            score = epoch_loss
        if score < best_loss:
            best_loss = score
            best_epoch = epoch
            best_state = copy.deepcopy(net.state_dict())

        if (epoch + 1) % log_every == 0 or epoch == epochs - 1:
            logger.info("epoch %d/%d: train %.3e, selection %.3e", epoch + 1, epochs, epoch_loss, score)

    net.load_state_dict(best_state)
    meta = {
        "epochs": epochs,
        "seed": seed,
        "best_epoch": best_epoch,
        "final_train_loss": loss_history[-1],
        "target_space": str(getattr(data.target_space, "value", data.target_space)),
        "level": data.level,
    }
    model = _to_mlp(net, input_lo, input_hi, out_mean, out_scale, meta)

    x_test, y_test = data.split("test")
    test_mse: Optional[float] = None
    test_r2: Optional[float] = None
    if x_test.shape[0]:
        y_pred = predict(model, x_test)
        test_mse = float(np.mean((y_pred - y_test) ** 2))
        test_r2 = r2_score(y_test, y_pred)
        logger.info("Test MSE %.3e, R2 %s", test_mse, "n/a" if test_r2 is None else f"{test_r2:.6f}")

    report = TrainingReport(
        layer_sizes=layer_sizes,
        epochs=epochs,
        seed=seed,
        adam=adam,
        loss_history=loss_history,
        validation_history=validation_history,
        best_epoch=best_epoch,
        test_mse=test_mse,
        test_r2=test_r2,
    )
    return model, report


__all__ = ['build_network', 'train_mlp', 'input_range', 'output_scaling', 'r2_score']
