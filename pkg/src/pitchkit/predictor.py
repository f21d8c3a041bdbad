"""Opponent-movement prediction.

A plain-text MLP (see `load_network` for the format) predicts where a
blocking opponent will be one cycle from now, working entirely in the
actor-centric frame: translate so the actor sits at the origin, rotate so
its body points along +x. A constant-velocity fallback implements the same
contract without a network.

Input layout (9 floats, order is normative and mirrored by the trainer):
ball rel x, y; ball vel x, y; blocker rel x, y; blocker vel x, y;
blocker body direction relative to actor body (degrees).
Output: the blocker's relative position next cycle (2 floats).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .world import BallState, ObservedPlayer, PlayerState, Vec2, normalize_angle

MAGIC = "CYRUS-DNN 1"
NEAR_BALL_RADIUS = 10.0

ACTIVATIONS = {
    "relu": lambda x: np.maximum(x, 0.0),
    "linear": lambda x: x,
    "tanh": np.tanh,
    "sigmoid": lambda x: 1.0 / (1.0 + np.exp(-x)),
}


class WeightsParseError(ValueError):
    """Malformed weights file; `line` is the 1-based offending line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadMagic(WeightsParseError):
    pass


class DimensionMismatch(WeightsParseError):
    pass


class NonNumericToken(WeightsParseError):
    pass


class TruncatedFile(WeightsParseError):
    pass


@dataclass(frozen=True)
class Layer:
    in_dim: int
    out_dim: int
    activation: str
    weights: np.ndarray  # (in_dim, out_dim), input-major
    bias: np.ndarray  # (out_dim,)


@dataclass(frozen=True)
class Network:
    layers: tuple[Layer, ...]

    @property
    def in_dim(self) -> int:
        return self.layers[0].in_dim

    @property
    def out_dim(self) -> int:
        return self.layers[-1].out_dim


def _significant_lines(text: str):
    """(1-based line number, token list) per line, comments and blanks gone."""
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line.split()


def load_network(text: str | bytes) -> Network:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = list(_significant_lines(text))
    pos = 0
    last_line = lines[-1][0] if lines else 1

    def next_line(what: str) -> tuple[int, list[str]]:
        nonlocal pos
        if pos >= len(lines):
            raise TruncatedFile(last_line, f"file ends before {what}")
        entry = lines[pos]
        pos += 1
        return entry

    lineno, toks = next_line("magic header")
    if " ".join(toks) != MAGIC:
        raise BadMagic(lineno, f"expected {MAGIC!r}, got {' '.join(toks)!r}")

    lineno, toks = next_line("layer count")
    if len(toks) != 2 or toks[0] != "layers":
        raise WeightsParseError(lineno, f"expected 'layers <L>', got {' '.join(toks)!r}")
    try:
        n_layers = int(toks[1])
    except ValueError:
        raise NonNumericToken(lineno, f"layer count {toks[1]!r} is not an integer")
    if n_layers < 1:
        raise WeightsParseError(lineno, f"layer count must be >= 1, got {n_layers}")

    def parse_floats(lineno: int, toks: list[str], expect: int, what: str) -> np.ndarray:
        if len(toks) != expect:
            raise DimensionMismatch(
                lineno, f"{what}: expected {expect} values, got {len(toks)}"
            )
        try:
            return np.array([float(t) for t in toks], dtype=np.float64)
        except ValueError:
            bad = next(t for t in toks if not _is_float(t))
            raise NonNumericToken(lineno, f"{what}: bad token {bad!r}")

    layers = []
    prev_out = None
    for idx in range(n_layers):
        lineno, toks = next_line(f"layer {idx} header")
        if len(toks) != 6 or toks[0] != "layer" or toks[2] != "dense":
            raise WeightsParseError(
                lineno, f"expected 'layer <i> dense <in> <out> <activation>', got {' '.join(toks)!r}"
            )
        try:
            declared, in_dim, out_dim = int(toks[1]), int(toks[3]), int(toks[4])
        except ValueError:
            raise NonNumericToken(lineno, f"non-integer dimension in {' '.join(toks)!r}")
        if declared != idx:
            raise WeightsParseError(lineno, f"layer index {declared}, expected {idx}")
        if in_dim < 1 or out_dim < 1:
            raise DimensionMismatch(lineno, f"dims must be positive, got {in_dim}x{out_dim}")
        if prev_out is not None and in_dim != prev_out:
            raise DimensionMismatch(
                lineno, f"layer {idx} in_dim {in_dim} != layer {idx - 1} out_dim {prev_out}"
            )
        activation = toks[5]
        if activation not in ACTIVATIONS:
            raise WeightsParseError(
                lineno, f"unknown activation {activation!r} (want one of {sorted(ACTIVATIONS)})"
            )
        rows = []
        for r in range(in_dim):
            rl, rt = next_line(f"layer {idx} weight row {r}")
            rows.append(parse_floats(rl, rt, out_dim, f"layer {idx} weight row {r}"))
        bl, bt = next_line(f"layer {idx} bias row")
        bias = parse_floats(bl, bt, out_dim, f"layer {idx} bias row")
        weights = np.stack(rows)
        if not (np.all(np.isfinite(weights)) and np.all(np.isfinite(bias))):
            raise WeightsParseError(lineno, f"layer {idx} contains non-finite values")
        layers.append(
            Layer(in_dim=in_dim, out_dim=out_dim, activation=activation,
                  weights=weights, bias=bias)
        )
        prev_out = out_dim

    if pos != len(lines):
        extra_line = lines[pos][0]
        raise WeightsParseError(extra_line, "trailing content after last layer")
    return Network(layers=tuple(layers))


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def forward(net: Network, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (net.in_dim,):
        raise ValueError(f"input shape {x.shape} != ({net.in_dim},)")
    for layer in net.layers:
        x = ACTIVATIONS[layer.activation](x @ layer.weights + layer.bias)
    return x


@dataclass(frozen=True)
class ConstantVelocityPredictor:
    """Next position = current position + current velocity."""


@dataclass(frozen=True)
class NetworkPredictor:
    net: Network


def to_actor_frame(
    actor: PlayerState, ball: BallState, blocker: PlayerState
) -> np.ndarray:
    """The 9-vector network input for one (actor, ball, blocker) scene."""
    rot = -actor.body
    ball_rel = (ball.pos - actor.pos).rotated(rot)
    ball_vel = ball.vel.rotated(rot)
    blk_rel = (blocker.pos - actor.pos).rotated(rot)
    blk_vel = blocker.vel.rotated(rot)
    body_rel = normalize_angle(blocker.body - actor.body)
    return np.array(
        [ball_rel.x, ball_rel.y, ball_vel.x, ball_vel.y,
         blk_rel.x, blk_rel.y, blk_vel.x, blk_vel.y, body_rel],
        dtype=np.float64,
    )


def predict_opponent(
    predictor,
    actor: PlayerState,
    ball: BallState,
    blocker: ObservedPlayer,
) -> Vec2:
    """Blocker position one cycle ahead, in the global frame.

    Only defined for blockers near the ball (the regime the network ever saw
    in training); callers handle far opponents with the pos-count path.
    """
    if blocker.base.pos.dist(ball.pos) > NEAR_BALL_RADIUS:
        raise ValueError("blocker beyond the 10 m near-ball radius")
    if isinstance(predictor, ConstantVelocityPredictor):
        return blocker.base.pos + blocker.base.vel
    if isinstance(predictor, NetworkPredictor):
        x = to_actor_frame(actor, ball, blocker.base)
        rel = forward(predictor.net, x)
        return Vec2(float(rel[0]), float(rel[1])).rotated(actor.body) + actor.pos
    raise ValueError(f"unknown predictor {predictor!r}")
