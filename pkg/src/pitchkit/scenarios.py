"""Deterministic scenario generators.

Every snapshot is a pure function of (seed, index) via a fresh
numpy Generator, so benchmark runs are reproducible to the bit and
scenarios can be regenerated in any order or in parallel.

Two families plus two constructed set pieces:

* marking scenarios: opponents push into a chosen strip of the field, our
  players defend, the ball sits at a designated opponent's feet;
* dribble scenarios: our attacker holds the ball with opponents scattered
  downfield (all standing, so staleness is the only uncertainty);
* a fixed two-defender collision snapshot where nearest-opponent marking
  double-covers one attacker and leaves the other free;
* a blocked-dribble family where an arc of defenders denies every immediate
  dribble lane and only a preparatory action re-opens one;
* a fixed snapshot with a single defender parked on the forward lane, used
  to show the depth-two search recovering forward targets.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG, FieldConfig
from .world import (
    OURS,
    THEIRS,
    BallState,
    PlayerState,
    PlayerType,
    Vec2,
    WorldSnapshot,
)


class Placement(enum.Enum):
    DEFENSIVE_THIRD = "defensive_third"
    MIDFIELD = "midfield"
    RANDOM = "random"


@dataclass(frozen=True)
class ScenarioParams:
    seed: int
    n_scenarios: int
    noise: tuple[float, float] = (0.0, 0.0)  # (factor, stale_prob)
    placement: Placement = Placement.DEFENSIVE_THIRD

    def __post_init__(self):
        if self.n_scenarios < 1:
            raise ValueError("n_scenarios must be >= 1")


def scenario_base_seed(params: ScenarioParams, index: int) -> int:
    return abs(int(params.seed)) * 1_000_000 + index


def observer_seed(params: ScenarioParams, index: int, observer_unum: int) -> int:
    return scenario_base_seed(params, index) * 1000 + observer_unum


def _region(placement: Placement, config: FieldConfig) -> tuple[float, float]:
    third = config.half_length / 3.0
    if placement is Placement.DEFENSIVE_THIRD:
        return (-config.half_length + 1.0, -third)
    if placement is Placement.MIDFIELD:
        return (-third, third)
    return (-config.half_length + 1.0, config.half_length - 1.0)


def _uniform_point(rng, x_range, y_range) -> Vec2:
    return Vec2(float(rng.uniform(*x_range)), float(rng.uniform(*y_range)))


def _small_velocity(rng, max_speed: float) -> Vec2:
    speed = float(rng.uniform(0.0, min(0.4, max_speed)))
    ang = float(rng.uniform(-math.pi, math.pi))
    return Vec2(speed * math.cos(ang), speed * math.sin(ang))


def _separated_points(rng, n, x_range, y_range, min_gap=1.5, tries=200) -> list[Vec2]:
    pts: list[Vec2] = []
    for _ in range(n):
        for _attempt in range(tries):
            p = _uniform_point(rng, x_range, y_range)
            if all(p.dist(q) >= min_gap for q in pts):
                pts.append(p)
                break
        else:
            pts.append(_uniform_point(rng, x_range, y_range))
    return pts


def gen_scenario(
    params: ScenarioParams, index: int, config: FieldConfig = DEFAULT_CONFIG
) -> WorldSnapshot:
    """Marking scenario: 10 opponent outfielders in the placement strip, our
    ten outfielders shadowing the same strip, ball at a random opponent."""
    if index >= params.n_scenarios:
        raise ValueError(f"index {index} >= n_scenarios {params.n_scenarios}")
    rng = np.random.default_rng([abs(int(params.seed)), index])
    x_lo, x_hi = _region(params.placement, config)
    y_range = (-config.half_width + 1.0, config.half_width - 1.0)

    players = []
    opp_pts = _separated_points(rng, 10, (x_lo, x_hi), y_range)
    for unum, pos in zip(range(2, 12), opp_pts):
        players.append(
            PlayerState(
                side=THEIRS, unum=unum, pos=pos,
                vel=_small_velocity(rng, DEFAULT_CONFIG.player_max_speed),
                body=float(rng.uniform(-180.0, 180.0)),
            )
        )
    players.append(
        PlayerState(
            side=THEIRS, unum=1,
            pos=_uniform_point(rng, (config.half_length - 4.0, config.half_length - 1.0), (-5.0, 5.0)),
            vel=Vec2(0.0, 0.0),
            body=float(rng.uniform(-180.0, 180.0)),
        )
    )

    our_pts = _separated_points(rng, 10, (x_lo, x_hi), y_range)
    for unum, pos in zip(range(2, 12), our_pts):
        players.append(
            PlayerState(
                side=OURS, unum=unum, pos=pos,
                vel=_small_velocity(rng, DEFAULT_CONFIG.player_max_speed),
                body=float(rng.uniform(-180.0, 180.0)),
            )
        )
    players.append(
        PlayerState(
            side=OURS, unum=1,
            pos=_uniform_point(rng, (-config.half_length + 1.0, -config.half_length + 4.0), (-5.0, 5.0)),
            vel=Vec2(0.0, 0.0),
            body=float(rng.uniform(-180.0, 180.0)),
        )
    )

    holder = int(rng.integers(2, 12))
    holder_pos = next(p.pos for p in players if p.side == THEIRS and p.unum == holder)
    ang = float(rng.uniform(-math.pi, math.pi))
    ball = BallState(
        pos=Vec2(holder_pos.x + 0.5 * math.cos(ang), holder_pos.y + 0.5 * math.sin(ang)),
        vel=Vec2(0.0, 0.0),
    )
    return WorldSnapshot(cycle=index, ball=ball, players=tuple(players))


DRIBBLE_ACTOR = (OURS, 9)


def _lineup(side: str, positions: dict[int, Vec2], default_x: float,
            body: float = 0.0, type_params: PlayerType | None = None) -> list[PlayerState]:
    """Full 11-player side; unums missing from `positions` are parked on a
    far line, 3 m apart, out of reach of the action."""
    tp = type_params or PlayerType()
    out = []
    for unum in range(1, 12):
        if unum in positions:
            pos = positions[unum]
        else:
            pos = Vec2(default_x, -15.0 + 3.0 * unum)
        out.append(PlayerState(side=side, unum=unum, pos=pos, body=body, type_params=tp))
    return out


def gen_dribble_scenario(
    params: ScenarioParams, index: int, config: FieldConfig = DEFAULT_CONFIG
) -> WorldSnapshot:
    """Open-ish dribble scenario: our 9 on the ball near midfield, opponent
    outfielders standing downfield of the actor."""
    if index >= params.n_scenarios:
        raise ValueError(f"index {index} >= n_scenarios {params.n_scenarios}")
    rng = np.random.default_rng([abs(int(params.seed)), 7919, index])
    actor_pos = Vec2(float(rng.uniform(-15.0, 15.0)), float(rng.uniform(-20.0, 20.0)))

    positions_theirs: dict[int, Vec2] = {}
    pts = _separated_points(
        rng, 10,
        (actor_pos.x + 4.0, min(actor_pos.x + 35.0, config.half_length - 1.0)),
        (max(-config.half_width + 1.0, actor_pos.y - 25.0),
         min(config.half_width - 1.0, actor_pos.y + 25.0)),
        min_gap=3.0,
    )
    for unum, pos in zip(range(2, 12), pts):
        positions_theirs[unum] = pos
    positions_theirs[1] = Vec2(config.half_length - 2.0, 0.0)

    ours = _lineup(OURS, {9: actor_pos}, default_x=-45.0)
    theirs = _lineup(THEIRS, positions_theirs, default_x=45.0)
    ball = BallState(pos=Vec2(actor_pos.x + 0.5, actor_pos.y), vel=Vec2(0.0, 0.0))
    return WorldSnapshot(cycle=index, ball=ball, players=tuple(ours + theirs))


def collision_snapshot(config: FieldConfig = DEFAULT_CONFIG) -> WorldSnapshot:
    """Two of our backs share a nearest opponent.

    Backs 4 and 5 sit at (-30, 0) and (-30, 2); the opponent at (-29, 1) is
    nearest to both (sqrt(2) each), while the second attacker at (-35, 8)
    is nearer our goal but farther from either back. Nearest-opponent marking
    sends both backs to the same man; the staged assignment covers both.
    The other eight defenders each stand beside a distinct far opponent so
    the pathology is isolated to this pair.
    """
    t1 = Vec2(-30.0, 0.0)
    t2 = Vec2(-30.0, 2.0)
    o1 = Vec2(-35.0, 8.0)
    o2 = Vec2(-29.0, 1.0)
    a3 = Vec2(-45.0, -20.0)
    a4 = Vec2(-45.0, 20.0)

    far_opp = {unum: Vec2(20.0 + 4.0 * (unum - 6), -12.0 + 4.0 * (unum - 6))
               for unum in range(6, 12)}
    positions_theirs = {1: Vec2(51.0, 0.0), 2: o1, 3: o2, 4: a3, 5: a4, **far_opp}

    positions_ours = {
        1: Vec2(-51.0, 0.0),
        2: a3 + Vec2(0.3, 0.0),
        3: a4 + Vec2(0.3, 0.0),
        4: t1,
        5: t2,
    }
    for unum in range(6, 12):
        positions_ours[unum] = far_opp[unum] + Vec2(0.5, 0.0)

    ours = [
        PlayerState(side=OURS, unum=u, pos=p, body=0.0)
        for u, p in sorted(positions_ours.items())
    ]
    theirs = [
        PlayerState(side=THEIRS, unum=u, pos=p, body=180.0)
        for u, p in sorted(positions_theirs.items())
    ]
    ball = BallState(pos=o2, vel=Vec2(0.0, 0.0))
    return WorldSnapshot(cycle=0, ball=ball, players=tuple(ours + theirs))


# Blocked-dribble family constants. Tuned numerically: a five-man arc of
# max_speed-0.8 defenders at ~2.2 m covers every first-kick lane (the open
# rear needs two turn cycles, which gives the arc time to close), while a
# preparatory turn removes those cycles and re-opens the rear corridor.
BLOCK_RING_RADIUS = 2.2
BLOCK_RING_ANGLES = (-120.0, -60.0, 0.0, 60.0, 120.0)
BLOCKER_TYPE = PlayerType(max_speed=0.8, kickable_area=1.085, size=0.3)
BLOCK_JITTER_POS = 0.25
BLOCK_JITTER_ANG = 4.0


def gen_blocked_scenario(
    params: ScenarioParams, index: int, config: FieldConfig = DEFAULT_CONFIG
) -> WorldSnapshot:
    """One of the blocked-dribble family: actor facing +x with the ball at
    its feet, an arc of defenders denying every immediate dribble lane."""
    if index >= params.n_scenarios:
        raise ValueError(f"index {index} >= n_scenarios {params.n_scenarios}")
    rng = np.random.default_rng([abs(int(params.seed)), 61703, index])
    actor_pos = Vec2(float(rng.uniform(-15.0, 15.0)), float(rng.uniform(-20.0, 20.0)))

    positions_theirs: dict[int, Vec2] = {1: Vec2(config.half_length - 2.0, 0.0)}
    for unum, ring_deg in zip(range(2, 2 + len(BLOCK_RING_ANGLES)), BLOCK_RING_ANGLES):
        deg = ring_deg + float(rng.uniform(-BLOCK_JITTER_ANG, BLOCK_JITTER_ANG))
        radius = BLOCK_RING_RADIUS + float(rng.uniform(-BLOCK_JITTER_POS, BLOCK_JITTER_POS))
        positions_theirs[unum] = Vec2(
            actor_pos.x + radius * math.cos(math.radians(deg)),
            actor_pos.y + radius * math.sin(math.radians(deg)),
        )

    ours = _lineup(OURS, {9: actor_pos}, default_x=-45.0)
    theirs = _lineup(THEIRS, positions_theirs, default_x=45.0, body=180.0,
                     type_params=BLOCKER_TYPE)
    ball = BallState(pos=Vec2(actor_pos.x + 0.3, actor_pos.y), vel=Vec2(0.0, 0.0))
    return WorldSnapshot(cycle=0, ball=ball, players=tuple(ours + theirs))


def forward_blocked_snapshot(config: FieldConfig = DEFAULT_CONFIG) -> WorldSnapshot:
    """Single defender squatting on the forward lane, 2 m ahead of the actor.

    The defender is drifting sideways at its full 0.6 m/cycle, so every
    forward first kick from the current state runs into it, but one cycle
    later it has slid off the lane: a preparatory turn plus a movement
    prediction re-opens forward targets. Set piece for the depth-two search.
    """
    actor_pos = Vec2(0.0, 0.0)
    blocker_type = PlayerType(max_speed=0.6, kickable_area=1.085, size=0.3)
    blocker = PlayerState(
        side=THEIRS, unum=2, pos=Vec2(2.0, 0.0), vel=Vec2(0.0, 0.6),
        body=180.0, type_params=blocker_type,
    )
    theirs = [blocker if p.unum == 2 else p
              for p in _lineup(THEIRS, {1: Vec2(config.half_length - 2.0, 0.0)},
                               default_x=45.0, body=180.0)]
    ours = _lineup(OURS, {9: actor_pos}, default_x=-45.0)
    ball = BallState(pos=Vec2(actor_pos.x + 0.3, actor_pos.y), vel=Vec2(0.0, 0.0))
    return WorldSnapshot(cycle=0, ball=ball, players=tuple(ours + theirs))
