"""Ground-truth field state and the per-agent noisy observation model.

Coordinates: x grows toward the opponent goal, y grows toward the right
touchline seen from our goal. Angles are degrees in [-180, 180). One cycle
is one simulation timestep; velocities are meters per cycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import DEFAULT_CONFIG, FieldConfig

OURS = "ours"
THEIRS = "theirs"

POS_COUNT_CAP = 30


def normalize_angle(deg: float) -> float:
    """Fold an angle in degrees into [-180, 180)."""
    return (deg + 180.0) % 360.0 - 180.0


def ceil_cycles(x: float) -> int:
    """Integer ceiling with a guard against float dust (5.000000001 -> 5)."""
    return max(0, math.ceil(x - 1e-9))


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite vector ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def scaled(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Vec2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def angle_deg(self) -> float:
        """Direction of this vector in degrees, [-180, 180). Zero vector -> 0."""
        if self.x == 0.0 and self.y == 0.0:
            return 0.0
        return normalize_angle(math.degrees(math.atan2(self.y, self.x)))

    def rotated(self, deg: float) -> "Vec2":
        r = math.radians(deg)
        c, s = math.cos(r), math.sin(r)
        return Vec2(c * self.x - s * self.y, s * self.x + c * self.y)


@dataclass(frozen=True)
class PlayerType:
    max_speed: float = DEFAULT_CONFIG.player_max_speed
    kickable_area: float = DEFAULT_CONFIG.kickable_area
    size: float = DEFAULT_CONFIG.player_size


@dataclass(frozen=True)
class PlayerState:
    side: str
    unum: int
    pos: Vec2
    vel: Vec2 = field(default_factory=lambda: Vec2(0.0, 0.0))
    body: float = 0.0
    type_params: PlayerType = field(default_factory=PlayerType)

    def __post_init__(self):
        if self.side not in (OURS, THEIRS):
            raise ValueError(f"bad side {self.side!r}")
        if not 1 <= self.unum <= 11:
            raise ValueError(f"unum {self.unum} outside 1..11")
        if self.vel.norm() > self.type_params.max_speed + 1e-9:
            raise ValueError(f"player speed {self.vel.norm():.3f} exceeds max_speed")
        object.__setattr__(self, "body", normalize_angle(self.body))


@dataclass(frozen=True)
class BallState:
    pos: Vec2
    vel: Vec2 = field(default_factory=lambda: Vec2(0.0, 0.0))

    def __post_init__(self):
        if self.vel.norm() > DEFAULT_CONFIG.ball_max_speed + 1e-9:
            raise ValueError(f"ball speed {self.vel.norm():.3f} exceeds cap")


@dataclass(frozen=True)
class WorldSnapshot:
    cycle: int
    ball: BallState
    players: tuple[PlayerState, ...]

    def __post_init__(self):
        if self.cycle < 0:
            raise ValueError("negative cycle")
        if len(self.players) != 22:
            raise ValueError(f"need exactly 22 players, got {len(self.players)}")
        for side in (OURS, THEIRS):
            unums = sorted(p.unum for p in self.players if p.side == side)
            if unums != list(range(1, 12)):
                raise ValueError(f"side {side} must field unums 1..11, got {unums}")

    def player(self, side: str, unum: int) -> PlayerState:
        for p in self.players:
            if p.side == side and p.unum == unum:
                return p
        raise ValueError(f"no player {side}:{unum}")

    def side_players(self, side: str) -> list[PlayerState]:
        return sorted((p for p in self.players if p.side == side), key=lambda p: p.unum)


@dataclass(frozen=True)
class ObservedPlayer:
    base: PlayerState
    pos_count: int = 0
    vel_count: int = 0
    body_count: int = 0

    def __post_init__(self):
        for name in ("pos_count", "vel_count", "body_count"):
            c = getattr(self, name)
            if not 0 <= c <= POS_COUNT_CAP:
                raise ValueError(f"{name}={c} outside 0..{POS_COUNT_CAP}")


@dataclass(frozen=True)
class AgentObservation:
    observer: tuple[str, int]
    cycle: int
    ball: BallState
    players: tuple[ObservedPlayer, ...]

    def player(self, side: str, unum: int) -> ObservedPlayer:
        for p in self.players:
            if p.base.side == side and p.base.unum == unum:
                return p
        raise ValueError(f"no observed player {side}:{unum}")

    def side_players(self, side: str) -> list[ObservedPlayer]:
        return sorted(
            (p for p in self.players if p.base.side == side), key=lambda p: p.base.unum
        )

    def opponents_of_observer(self) -> list[ObservedPlayer]:
        other = THEIRS if self.observer[0] == OURS else OURS
        return self.side_players(other)


def _clamp_to_field(pos: Vec2, config: FieldConfig) -> Vec2:
    xm = config.half_length + config.out_of_play_margin
    ym = config.half_width + config.out_of_play_margin
    return Vec2(min(max(pos.x, -xm), xm), min(max(pos.y, -ym), ym))


def observe(
    world: WorldSnapshot,
    observer: tuple[str, int],
    noise: tuple[float, float],
    seed: int,
    config: FieldConfig = DEFAULT_CONFIG,
) -> AgentObservation:
    """One agent's noisy, possibly stale view of a snapshot.

    noise is (factor, stale_prob). Every player other than the observer gets
    Gaussian position noise with std = factor * distance(observer, player),
    and a staleness count drawn geometrically with parameter stale_prob
    (capped at 30); a stale position is rewound by count * velocity, which
    stands in for "where it was last seen". The ball gets the same distance-
    proportional position noise but no staleness. Fully deterministic for a
    fixed seed.
    """
    factor, stale_prob = noise
    if factor < 0:
        raise ValueError("noise factor must be >= 0")
    if not 0.0 <= stale_prob < 1.0:
        raise ValueError("stale_prob must be in [0, 1)")
    me = world.player(*observer)  # raises on unknown observer

    rng = np.random.default_rng([abs(int(seed)), 104729])

    def draw_count() -> int:
        # geometric(1) is identically 1, so stale_prob=0 yields count 0
        return min(int(rng.geometric(1.0 - stale_prob)) - 1, POS_COUNT_CAP)

    observed = []
    for p in sorted(world.players, key=lambda q: (q.side, q.unum)):
        if p.side == observer[0] and p.unum == observer[1]:
            observed.append(ObservedPlayer(base=p))
            continue
        d = me.pos.dist(p.pos)
        std = factor * d
        dx, dy = rng.normal(0.0, 1.0, size=2)
        pos_count = draw_count()
        vel_count = draw_count()
        body_count = draw_count()
        pos = Vec2(p.pos.x + std * dx, p.pos.y + std * dy)
        pos = pos - p.vel.scaled(float(pos_count))
        noisy = replace(p, pos=_clamp_to_field(pos, config))
        observed.append(
            ObservedPlayer(noisy, pos_count=pos_count, vel_count=vel_count, body_count=body_count)
        )

    bstd = factor * me.pos.dist(world.ball.pos)
    bx, by = rng.normal(0.0, 1.0, size=2)
    ball = BallState(
        pos=_clamp_to_field(Vec2(world.ball.pos.x + bstd * bx, world.ball.pos.y + bstd * by), config),
        vel=world.ball.vel,
    )
    return AgentObservation(observer=observer, cycle=world.cycle, ball=ball, players=tuple(observed))


def ball_travel(
    ball: BallState, n: int, decay: float = DEFAULT_CONFIG.ball_decay
) -> Vec2:
    """Ball position after n cycles of free rolling with exponential decay."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return ball.pos
    factor = (1.0 - decay**n) / (1.0 - decay)
    return ball.pos + ball.vel.scaled(factor)


def first_kick_speed_for(
    distance: float, cycles: int, decay: float = DEFAULT_CONFIG.ball_decay
) -> float:
    """Initial ball speed that covers `distance` in exactly `cycles` cycles."""
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    return distance * (1.0 - decay) / (1.0 - decay**cycles)


def cycles_to_point(
    player: PlayerState, target: Vec2, config: FieldConfig = DEFAULT_CONFIG
) -> tuple[int, int]:
    """(turn_cycles, dash_cycles) for a player to get onto a point.

    Turning is free within the dead zone, then ceil(|dA| / rate) cycles;
    dashing covers max_speed per cycle.
    """
    delta = target - player.pos
    dist = delta.norm()
    if dist == 0.0:
        return (0, 0)
    dangle = abs(normalize_angle(delta.angle_deg() - player.body))
    if dangle <= config.turn_dead_zone_deg:
        turn = 0
    else:
        turn = ceil_cycles(dangle / config.turn_rate_deg)
    dash = ceil_cycles(dist / player.type_params.max_speed)
    return (turn, dash)
