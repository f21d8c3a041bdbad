"""Plain-text weight files, trainer side.

Format (shared with the inference engine, which owns the validating parser):

    CYRUS-DNN 1
    layers <L>
    layer <i> dense <in> <out> <activation>   # one block per layer
    <in> rows of <out> weights                # input-major, y = x @ W + b
    <out> bias values

Values are written with 12 significant digits; '#' starts a comment. The
reader here is deliberately minimal; it exists so golden outputs can be
computed from the decimals on disk rather than the floats in memory.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

MAGIC = "CYRUS-DNN 1"
ACTIVATIONS = ("relu", "linear", "tanh", "sigmoid")


@dataclass(frozen=True)
class DenseLayer:
    weights: np.ndarray  # (in_dim, out_dim)
    bias: np.ndarray  # (out_dim,)
    activation: str


def save_weights(layers: list[DenseLayer], stream: IO[str], comment: str = "") -> None:
    if comment:
        stream.write(f"# {comment}\n")
    stream.write(MAGIC + "\n")
    stream.write(f"layers {len(layers)}\n")
    for i, layer in enumerate(layers):
        n_in, n_out = layer.weights.shape
        stream.write(f"layer {i} dense {n_in} {n_out} {layer.activation}\n")
        for row in layer.weights:
            stream.write(" ".join(f"{v:.12g}" for v in row) + "\n")
        stream.write(" ".join(f"{v:.12g}" for v in layer.bias) + "\n")


def load_weights(text: str) -> list[DenseLayer]:
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [toks for toks in lines if toks]
    it = iter(lines)

    def take(what: str) -> list[str]:
        toks = next(it, None)
        if toks is None:
            raise ValueError(f"weights text ends before {what}")
        return toks

    if " ".join(take("magic")) != MAGIC:
        raise ValueError(f"missing {MAGIC!r} header")
    head = take("layer count")
    if head[0] != "layers" or len(head) != 2:
        raise ValueError("expected 'layers <L>'")
    layers = []
    for i in range(int(head[1])):
        toks = take(f"layer {i} header")
        if toks[:3] != ["layer", str(i), "dense"] or len(toks) != 6:
            raise ValueError(f"bad layer {i} header: {' '.join(toks)!r}")
        n_in, n_out, act = int(toks[3]), int(toks[4]), toks[5]
        if act not in ACTIVATIONS:
            raise ValueError(f"unknown activation {act!r}")
        rows = [take(f"layer {i} row {r}") for r in range(n_in + 1)]
        if any(len(row) != n_out for row in rows):
            raise ValueError(f"layer {i}: expected rows of {n_out} values")
        values = np.array([[float(v) for v in row] for row in rows], dtype=np.float64)
        layers.append(DenseLayer(weights=values[:n_in], bias=values[n_in],
                                 activation=act))
    if next(it, None) is not None:
        raise ValueError("trailing content after last layer")
    return layers


def forward(layers: list[DenseLayer], x) -> np.ndarray:
    """Reference forward pass; accepts a single 9-vector or an (n, 9) batch."""
    x = np.asarray(x, dtype=np.float64)
    for layer in layers:
        x = x @ layer.weights + layer.bias
        if layer.activation == "relu":
            x = np.maximum(x, 0.0)
        elif layer.activation == "tanh":
            x = np.tanh(x)
        elif layer.activation == "sigmoid":
            x = 1.0 / (1.0 + np.exp(-x))
    return x
