"""Produce the checked-in weights + golden fixture for the loader tests.

Writes a random network in the text weight format, then computes reference
outputs for 32 random inputs with a deliberately naive pure-Python forward
pass (the point is independence from the library's implementation). The
golden file pins the loader + forward behavior until a trained network
replaces it.

Run once from the repo root:  python3 scripts/make_golden_fixture.py
"""
from __future__ import annotations

import json
import math
import pathlib
import random

DIMS = [9, 128, 64, 32, 16, 2]
ACTIVATIONS = ["relu", "relu", "relu", "relu", "linear"]
FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def write_weights(path: pathlib.Path, rng: random.Random) -> None:
    lines = ["# reference movement network, randomly initialized", "CYRUS-DNN 1",
             f"layers {len(ACTIVATIONS)}"]
    for i, act in enumerate(ACTIVATIONS):
        n_in, n_out = DIMS[i], DIMS[i + 1]
        lines.append(f"layer {i} dense {n_in} {n_out} {act}")
        scale = 1.0 / math.sqrt(n_in)
        for _ in range(n_in):
            lines.append(" ".join(f"{rng.uniform(-scale, scale):.12g}" for _ in range(n_out)))
        lines.append(" ".join(f"{rng.uniform(-0.1, 0.1):.12g}" for _ in range(n_out)))
    path.write_text("\n".join(lines) + "\n")


def parse_weights(path: pathlib.Path):
    """Naive re-parse of the written file; the golden outputs must come from
    the decimals on disk, not the floats in memory."""
    toks_lines = [
        ln.split() for ln in path.read_text().splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    it = iter(toks_lines)
    assert next(it) == ["CYRUS-DNN", "1"]
    n_layers = int(next(it)[1])
    layers = []
    for _ in range(n_layers):
        header = next(it)
        n_in, n_out, act = int(header[3]), int(header[4]), header[5]
        weights = [[float(v) for v in next(it)] for _ in range(n_in)]
        bias = [float(v) for v in next(it)]
        layers.append((weights, bias, act))
    return layers


def forward(layers, x: list[float]) -> list[float]:
    for weights, bias, act in layers:
        y = list(bias)
        for i, xi in enumerate(x):
            row = weights[i]
            for j in range(len(y)):
                y[j] += xi * row[j]
        if act == "relu":
            y = [v if v > 0.0 else 0.0 for v in y]
        elif act == "tanh":
            y = [math.tanh(v) for v in y]
        elif act == "sigmoid":
            y = [1.0 / (1.0 + math.exp(-v)) for v in y]
        x = y
    return x


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20210622)
    weights_path = FIXTURES / "golden_weights.txt"
    write_weights(weights_path, rng)
    layers = parse_weights(weights_path)

    inputs = [
        [rng.uniform(-10.0, 10.0) for _ in range(4)]
        + [rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)]
        + [rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)]
        + [rng.uniform(-180.0, 180.0)]
        for _ in range(32)
    ]
    outputs = [forward(layers, x) for x in inputs]
    golden = {"inputs": inputs, "outputs": outputs}
    (FIXTURES / "golden.json").write_text(json.dumps(golden, indent=1) + "\n")
    print(f"wrote {weights_path} and golden.json ({len(inputs)} vectors)")


if __name__ == "__main__":
    main()
