"""Movement-model training and export.

The model maps the 9-vector scene description to the blocker's relative
position one cycle ahead. Hidden layers are relu, the output is linear,
the loss is MSE; everything runs in float64 on the CPU so that a fixed
seed reproduces the run exactly and the exported decimals carry the full
result.

Features span three very different scales (meters, meters/cycle, degrees),
so training standardizes inputs and targets per feature and the export
folds both maps into the boundary layers: the first dense layer absorbs
(x - mu) / sigma, the output layer absorbs y * sigma + mu. The shipped
file therefore consumes raw features and emits meters while the optimizer
only ever saw unit-scale values.

Alongside the weights file the trainer emits a golden file: 32 inputs drawn
uniformly from the dataset's per-feature ranges, paired with this trainer's
own forward outputs computed from the exported text, so any other loader
can be checked against the file actually shipped. The reported val_mae is
likewise measured with the exported network on raw held-out inputs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import torch

from .dataset import N_INPUTS, load_dataset
from .weights_io import DenseLayer, forward, load_weights, save_weights

N_OUTPUTS = 2
MIN_ROWS = 1000
VAL_FRACTION = 0.2
BATCH_SIZE = 128
LEARNING_RATE = 3e-3  # decayed exponentially to FINAL_LEARNING_RATE
FINAL_LEARNING_RATE = 1e-4
N_GOLDEN = 32
_SPLIT_STREAM = 55313


@dataclass(frozen=True)
class TrainingConfig:
    dataset_path: str
    output_weights_path: str
    golden_path: str
    architecture: tuple[int, ...] = (128, 64, 32, 16)  # hidden widths
    epochs: int = 400
    seed: int = 0

    def __post_init__(self):
        if not self.architecture or any(w < 1 for w in self.architecture):
            raise ValueError(f"bad hidden widths {self.architecture}")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")


@dataclass(frozen=True)
class TrainResult:
    weights_path: str
    golden_path: str
    val_mae: float  # mean distance (m) between predicted and true position
    n_train: int
    n_val: int


def build_model(hidden: tuple[int, ...], seed: int) -> torch.nn.Sequential:
    torch.manual_seed(seed)
    dims = (N_INPUTS, *hidden, N_OUTPUTS)
    modules: list[torch.nn.Module] = []
    for i in range(len(dims) - 1):
        modules.append(torch.nn.Linear(dims[i], dims[i + 1], dtype=torch.float64))
        if i < len(dims) - 2:
            modules.append(torch.nn.ReLU())
    return torch.nn.Sequential(*modules)


def export_layers(model: torch.nn.Sequential, x_mean: np.ndarray,
                  x_std: np.ndarray, y_mean: np.ndarray,
                  y_std: np.ndarray) -> list[DenseLayer]:
    """Linear modules as input-major weight blocks, standardization folded.

    The model was trained on (x - x_mean) / x_std against
    (y - y_mean) / y_std; scaling the first weight matrix's input rows by
    1 / x_std and the output layer's columns by y_std (with matching bias
    shifts) makes the exported network map raw features to meters.
    """
    linears = [m for m in model if isinstance(m, torch.nn.Linear)]
    layers = []
    for i, m in enumerate(linears):
        act = "relu" if i < len(linears) - 1 else "linear"
        weights = m.weight.detach().numpy().T.copy()
        bias = m.bias.detach().numpy().copy()
        if i == 0:
            bias = bias - (x_mean / x_std) @ weights
            weights = weights / x_std[:, None]
        if i == len(linears) - 1:
            weights = weights * y_std
            bias = bias * y_std + y_mean
        layers.append(DenseLayer(weights=weights, bias=bias, activation=act))
    return layers


def train_and_export(config: TrainingConfig) -> TrainResult:
    inputs, targets = load_dataset(config.dataset_path)
    n = len(inputs)
    if n < MIN_ROWS:
        raise ValueError(f"dataset has {n} rows, need at least {MIN_ROWS}")

    rng = np.random.default_rng([abs(int(config.seed)), _SPLIT_STREAM])
    order = rng.permutation(n)
    n_val = max(1, int(n * VAL_FRACTION))
    val_idx, train_idx = order[:n_val], order[n_val:]
    def moments(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mean, std = a.mean(axis=0), a.std(axis=0)
        std[std < 1e-9] = 1.0  # constant column: leave it unscaled
        return mean, std

    x_mean, x_std = moments(inputs[train_idx])
    y_mean, y_std = moments(targets[train_idx])
    x_train = torch.from_numpy((inputs[train_idx] - x_mean) / x_std)
    y_train = torch.from_numpy((targets[train_idx] - y_mean) / y_std)

    model = build_model(config.architecture, config.seed)
    optimizer = torch.optim.Adam(model.parameters(), lr=LEARNING_RATE)
    shuffle = torch.Generator().manual_seed(config.seed)
    decay = (FINAL_LEARNING_RATE / LEARNING_RATE) ** (1.0 / max(1, config.epochs - 1))
    for epoch in range(config.epochs):
        optimizer.param_groups[0]["lr"] = LEARNING_RATE * decay**epoch
        for batch in torch.randperm(len(x_train), generator=shuffle).split(BATCH_SIZE):
            optimizer.zero_grad()
            loss = torch.nn.functional.mse_loss(model(x_train[batch]), y_train[batch])
            loss.backward()
            optimizer.step()

    with open(config.output_weights_path, "w") as f:
        save_weights(export_layers(model, x_mean, x_std, y_mean, y_std), f,
                     comment=f"movement model, seed {config.seed}")
    with open(config.output_weights_path) as f:
        shipped = load_weights(f.read())

    err = forward(shipped, inputs[val_idx]) - targets[val_idx]
    val_mae = float(np.linalg.norm(err, axis=1).mean())

    golden_inputs = _golden_inputs(inputs, rng)
    golden_outputs = forward(shipped, golden_inputs)
    with open(config.golden_path, "w") as f:
        json.dump({"inputs": golden_inputs.tolist(),
                   "outputs": golden_outputs.tolist()}, f, indent=1)
        f.write("\n")

    return TrainResult(weights_path=config.output_weights_path,
                       golden_path=config.golden_path, val_mae=val_mae,
                       n_train=len(train_idx), n_val=len(val_idx))


def _golden_inputs(inputs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """32 vectors uniform in the dataset's per-feature [min, max] box."""
    lo, hi = inputs.min(axis=0), inputs.max(axis=0)
    return rng.uniform(lo, hi, size=(N_GOLDEN, N_INPUTS))
