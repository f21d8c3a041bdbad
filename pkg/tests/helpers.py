"""Builders and independent oracles shared across the test suite.

The oracles here deliberately re-derive results with the dumbest possible
code (pure loops, itertools enumeration) so they cannot share a bug with
the library implementations they check.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from pitchkit.config import DEFAULT_CONFIG
from pitchkit.world import (
    OURS,
    THEIRS,
    BallState,
    PlayerState,
    PlayerType,
    Vec2,
    WorldSnapshot,
)


def park_line(side: str, positions: dict[int, Vec2], default_x: float,
              body: float = 0.0, vels: dict[int, Vec2] | None = None,
              types: dict[int, PlayerType] | None = None) -> list[PlayerState]:
    """Full 11-player side; unums not given explicit spots sit on a far line."""
    vels = vels or {}
    types = types or {}
    out = []
    for unum in range(1, 12):
        pos = positions.get(unum, Vec2(default_x, -18.0 + 3.0 * unum))
        out.append(PlayerState(
            side=side, unum=unum, pos=pos, body=body,
            vel=vels.get(unum, Vec2(0.0, 0.0)),
            type_params=types.get(unum, PlayerType()),
        ))
    return out


def build_world(our: dict[int, Vec2], their: dict[int, Vec2], ball: Vec2,
                cycle: int = 0, ball_vel: Vec2 = Vec2(0.0, 0.0),
                our_body: float = 0.0, their_body: float = 180.0,
                our_vels: dict[int, Vec2] | None = None,
                their_vels: dict[int, Vec2] | None = None,
                their_types: dict[int, PlayerType] | None = None) -> WorldSnapshot:
    players = park_line(OURS, our, -45.0, body=our_body, vels=our_vels) + \
        park_line(THEIRS, their, 45.0, body=their_body, vels=their_vels,
                  types=their_types)
    return WorldSnapshot(cycle=cycle, ball=BallState(pos=ball, vel=ball_vel),
                         players=tuple(players))


def random_world(seed: int, spread: float = 30.0) -> WorldSnapshot:
    """Random valid snapshot: 22 players scattered near midfield, slow
    velocities, random bodies, ball loose."""
    rng = np.random.default_rng([abs(int(seed)), 913])
    players = []
    for side in (OURS, THEIRS):
        for unum in range(1, 12):
            pos = Vec2(float(rng.uniform(-spread, spread)),
                       float(rng.uniform(-25.0, 25.0)))
            sp = float(rng.uniform(0.0, 0.4))
            ang = float(rng.uniform(-math.pi, math.pi))
            players.append(PlayerState(
                side=side, unum=unum, pos=pos,
                vel=Vec2(sp * math.cos(ang), sp * math.sin(ang)),
                body=float(rng.uniform(-180.0, 179.0)),
            ))
    ball = BallState(
        pos=Vec2(float(rng.uniform(-spread, spread)), float(rng.uniform(-25.0, 25.0))),
        vel=Vec2(float(rng.uniform(-1.0, 1.0)), float(rng.uniform(-1.0, 1.0))),
    )
    return WorldSnapshot(cycle=int(rng.integers(0, 500)), ball=ball,
                         players=tuple(players))


def kickable_world(seed: int, n_near_opponents: int = 3) -> WorldSnapshot:
    """Random snapshot where our 9 holds the ball (strictly kickable)."""
    rng = np.random.default_rng([abs(int(seed)), 1409])
    actor_pos = Vec2(float(rng.uniform(-20.0, 20.0)), float(rng.uniform(-20.0, 20.0)))
    ball = Vec2(actor_pos.x + float(rng.uniform(0.2, 0.8)),
                actor_pos.y + float(rng.uniform(-0.4, 0.4)))
    their: dict[int, Vec2] = {1: Vec2(50.0, 0.0)}
    for unum in range(2, 2 + n_near_opponents):
        ang = float(rng.uniform(-math.pi, math.pi))
        r = float(rng.uniform(2.0, 9.0))
        their[unum] = Vec2(actor_pos.x + r * math.cos(ang),
                           actor_pos.y + r * math.sin(ang))
    return build_world({9: actor_pos}, their, ball,
                       our_body=float(rng.uniform(-180.0, 179.0)))


# --- assignment oracles ---------------------------------------------------

def min_perm_cost(cost: list[list[float]]) -> float:
    """Exhaustive assignment minimum on a square matrix, summed in
    ascending-agent order."""
    n = len(cost)
    best = math.inf
    for perm in itertools.permutations(range(n)):
        total = 0.0
        for agent in range(n):
            total += cost[agent][perm[agent]]
        best = min(best, total)
    return best


# --- network oracles ------------------------------------------------------

def naive_parse_weights(text: str):
    """Minimal reader for the weight-file grammar; no shared code with the
    library loader."""
    rows = [ln.split() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]
    it = iter(rows)
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


def naive_forward(layers, x: list[float]) -> list[float]:
    for weights, bias, act in layers:
        y = list(bias)
        for i, xi in enumerate(x):
            for j in range(len(y)):
                y[j] += xi * weights[i][j]
        if act == "relu":
            y = [v if v > 0.0 else 0.0 for v in y]
        elif act == "tanh":
            y = [math.tanh(v) for v in y]
        elif act == "sigmoid":
            y = [1.0 / (1.0 + math.exp(-v)) for v in y]
        x = y
    return x


def goal_dist(pos: Vec2) -> float:
    return pos.dist(Vec2(-DEFAULT_CONFIG.half_length, 0.0))
