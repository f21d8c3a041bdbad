"""Movement-training rows from game logs, plus a synthetic log generator.

A log is the engine's snapshot jsonl: one JSON object per line with

    {"cycle": c,
     "ball": {"x", "y", "vx", "vy"},
     "players": [{"side", "unum", "x", "y", "vx", "vy", "body",
                  "max_speed", "kickable_area", "size"}, ...]}

This package reads that format directly rather than importing the engine;
the schema above is the contract between the two.

One training row is built per (cycle t, cycle t+1) line pair and per
opponent near the ball at t, whenever some ours player is kickable at t.
Inputs are the predictor's 9-vector in the kickable player's frame
(translate to its position, rotate so its body points along +x):

    ball rel x, y; ball vel x, y; blocker rel x, y; blocker vel x, y;
    blocker body direction relative to the actor body (degrees)

and the target is the blocker's position at t+1 expressed in that same
frame. Consecutive episodes may share a file; a cycle jump between two
adjacent lines simply yields no rows, so logs can be concatenated freely.
"""
from __future__ import annotations

import csv
import json
import math
from typing import IO, Iterable, Iterator

import numpy as np

NEAR_BALL_RADIUS = 10.0
N_INPUTS = 9

COLUMNS = (
    "ball_rel_x", "ball_rel_y", "ball_vel_x", "ball_vel_y",
    "blk_rel_x", "blk_rel_y", "blk_vel_x", "blk_vel_y", "blk_body_rel",
    "next_rel_x", "next_rel_y",
)


def fold_angle(deg: float) -> float:
    """Degrees into [-180, 180)."""
    return (deg + 180.0) % 360.0 - 180.0


def rotate(x: float, y: float, deg: float) -> tuple[float, float]:
    r = math.radians(deg)
    c, s = math.cos(r), math.sin(r)
    return (c * x - s * y, s * x + c * y)


def _kickable_actor(snap: dict) -> dict | None:
    """The ours player holding the ball, nearest first, None if nobody can kick."""
    ball = snap["ball"]
    best = None
    for p in snap["players"]:
        if p["side"] != "ours":
            continue
        d = math.hypot(p["x"] - ball["x"], p["y"] - ball["y"])
        if d <= p["kickable_area"] and (best is None or (d, p["unum"]) < best[:2]):
            best = (d, p["unum"], p)
    return None if best is None else best[2]


def rows_from_pair(cur: dict, nxt: dict) -> Iterator[tuple[float, ...]]:
    """Training rows for one consecutive-cycle line pair (may be empty)."""
    if nxt["cycle"] != cur["cycle"] + 1:
        return
    actor = _kickable_actor(cur)
    if actor is None:
        return
    ball = cur["ball"]
    rot = -actor["body"]
    ax, ay = actor["x"], actor["y"]
    future = {p["unum"]: p for p in nxt["players"] if p["side"] == "theirs"}
    for blk in cur["players"]:
        if blk["side"] != "theirs":
            continue
        if math.hypot(blk["x"] - ball["x"], blk["y"] - ball["y"]) > NEAR_BALL_RADIUS:
            continue
        after = future.get(blk["unum"])
        if after is None:
            continue
        ball_rel = rotate(ball["x"] - ax, ball["y"] - ay, rot)
        ball_vel = rotate(ball["vx"], ball["vy"], rot)
        blk_rel = rotate(blk["x"] - ax, blk["y"] - ay, rot)
        blk_vel = rotate(blk["vx"], blk["vy"], rot)
        body_rel = fold_angle(blk["body"] - actor["body"])
        target = rotate(after["x"] - ax, after["y"] - ay, rot)
        yield (*ball_rel, *ball_vel, *blk_rel, *blk_vel, body_rel, *target)


def rows_from_log(stream: IO[str]) -> Iterator[tuple[float, ...]]:
    prev = None
    for line in stream:
        line = line.strip()
        if not line:
            continue
        cur = json.loads(line)
        if prev is not None:
            yield from rows_from_pair(prev, cur)
        prev = cur


def write_rows(rows: Iterable[tuple[float, ...]], stream: IO[str]) -> int:
    """CSV with repr-formatted floats so values round-trip exactly."""
    writer = csv.writer(stream)
    writer.writerow(COLUMNS)
    n = 0
    for row in rows:
        writer.writerow([repr(v) for v in row])
        n += 1
    return n


def make_movement_dataset(log_path: str, out_path: str) -> int:
    """Convert a snapshot log into a training CSV; returns the row count."""
    with open(log_path) as log, open(out_path, "w", newline="") as out:
        return write_rows(rows_from_log(log), out)


def load_dataset(path: str) -> tuple[np.ndarray, np.ndarray]:
    """(inputs (n, 9), targets (n, 2)) as float64."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = tuple(next(reader))
        if header != COLUMNS:
            raise ValueError(f"unexpected dataset header {header!r}")
        data = np.array([[float(v) for v in row] for row in reader], dtype=np.float64)
    if data.size == 0:
        data = data.reshape(0, len(COLUMNS))
    return data[:, :N_INPUTS], data[:, N_INPUTS:]


# --- synthetic constant-velocity log ---------------------------------------
#
# Scenes are laid out directly in the kickable player's frame (actor at the
# origin facing +x); the extractor erases any world-frame offset anyway, so
# nothing is lost, and the frame math stays exact for the identity
# target == blocker rel pos + blocker rel vel that the dynamics imply.
# Everything moves in straight lines: pos += vel each cycle, bodies frozen.

EPISODE_LEN = 4
BALL_MAX_R = 0.5          # stays kickable (1.085) for the whole episode
BALL_MAX_SPEED = 0.25
BLOCKER_MIN_R = 0.8
BLOCKER_MAX_R = 8.5
BLOCKER_MAX_SPEED = 0.9
_PARK_X = 45.0
_GEN_STREAM = 86243


def _parked(side: str, unum: int) -> dict:
    sign = -1.0 if side == "ours" else 1.0
    return _player(side, unum, sign * _PARK_X, -18.0 + 3.0 * unum)


def _player(side, unum, x, y, vx=0.0, vy=0.0, body=0.0) -> dict:
    return {"side": side, "unum": unum, "x": x, "y": y, "vx": vx, "vy": vy,
            "body": body, "max_speed": 1.0, "kickable_area": 1.085, "size": 0.3}


def _polar(rng, r_lo, r_hi) -> tuple[float, float]:
    r = rng.uniform(r_lo, r_hi)
    a = rng.uniform(0.0, 2.0 * math.pi)
    return (r * math.cos(a), r * math.sin(a))


def gen_log(
    stream: IO[str],
    seed: int,
    n_episodes: int,
    episode_len: int = EPISODE_LEN,
) -> int:
    """Write a constant-velocity training log; returns the line count.

    Each episode is an independent scene: one ours player holds the ball at
    the origin, 1..4 opponents drift near it, everyone else is parked on a
    touchline. Cycles restart at 0 per episode, which the row extractor
    treats as an episode boundary.
    """
    if n_episodes < 1 or episode_len < 2:
        raise ValueError("need n_episodes >= 1 and episode_len >= 2")
    rng = np.random.default_rng([abs(int(seed)), _GEN_STREAM])
    lines = 0
    for _ in range(n_episodes):
        actor_unum = int(rng.integers(2, 12))
        bx, by = _polar(rng, 0.0, BALL_MAX_R)
        bvx, bvy = _polar(rng, 0.0, BALL_MAX_SPEED)
        ball = {"x": bx, "y": by, "vx": bvx, "vy": bvy}

        ours = [_parked("ours", u) for u in range(1, 12) if u != actor_unum]
        ours.append(_player("ours", actor_unum, 0.0, 0.0))

        n_blockers = int(rng.integers(1, 5))
        blocker_unums = [int(u) for u in rng.choice(np.arange(2, 12), size=n_blockers,
                                                    replace=False)]
        theirs = [_parked("theirs", u) for u in range(1, 12) if u not in blocker_unums]
        for u in blocker_unums:
            ox, oy = _polar(rng, BLOCKER_MIN_R, BLOCKER_MAX_R)
            vx, vy = _polar(rng, 0.0, BLOCKER_MAX_SPEED)
            theirs.append(_player("theirs", u, ball["x"] + ox, ball["y"] + oy,
                                  vx, vy, body=float(rng.uniform(-180.0, 180.0))))

        players = sorted(ours + theirs, key=lambda p: (p["side"], p["unum"]))
        for cycle in range(episode_len):
            stream.write(json.dumps(
                {"cycle": cycle, "ball": ball, "players": players},
                sort_keys=True) + "\n")
            lines += 1
            ball = dict(ball, x=ball["x"] + ball["vx"], y=ball["y"] + ball["vy"])
            players = [dict(p, x=p["x"] + p["vx"], y=p["y"] + p["vy"])
                       for p in players]
    return lines
