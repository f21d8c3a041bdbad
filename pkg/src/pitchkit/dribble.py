"""Dribble search: candidate targets, one-step pre-actions, chain scoring.

The basic generator tries 12 headings x 9 dash counts from the actor's
position, keeps targets the ball can reach under the speed cap, and drops any
target an opponent could intercept. Interception respects staleness: an
opponent unseen for pos_count cycles gets its effective distance shrunk by
pos_count * max_speed, so uncertainty makes the search more conservative.

MAD (multi-action dribble) widens the tree: a single cheap action first
(a soft kick that keeps the ball in reach, a one-cycle dash, or a body turn),
then the basic generator again from the predicted next state. Opponents near
the ball are advanced one cycle by the movement predictor when one is
supplied; otherwise their pos_count is charged one extra cycle, trading
optimism for safety.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .config import DEFAULT_CONFIG, FieldConfig
from .predictor import NEAR_BALL_RADIUS, predict_opponent
from .world import (
    OURS,
    THEIRS,
    BallState,
    ObservedPlayer,
    PlayerState,
    Vec2,
    WorldSnapshot,
    _clamp_to_field,
    ball_travel,
    ceil_cycles,
    first_kick_speed_for,
    normalize_angle,
)

HEADINGS_DEG = tuple(float(d) for d in range(-180, 180, 30))  # 12 headings
DASH_COUNTS = tuple(range(2, 11))  # 2..10 cycles of dashing
KICK_DIRS_DEG = tuple(float(d) for d in range(-180, 180, 45))  # 8 directions
KICK_SPEEDS = (0.3, 0.6)
REACT_PENALTY = 1  # defender turn/react cycle, mirrors the +1 kick cycle


class ActionKind(enum.Enum):
    TWO_STEP_KICK = "two_step_kick"
    MOVE_BEFORE_KICK = "move_before_kick"
    TURN_BEFORE_KICK = "turn_before_kick"


@dataclass(frozen=True)
class OneStepAction:
    kind: ActionKind
    param: Vec2 | float  # kick velocity, dash direction, or new body direction


@dataclass(frozen=True)
class DribbleCandidate:
    target: Vec2
    turn_cycles: int
    dash_cycles: int
    dribble_cycles: int
    first_kick_speed: float
    safe: bool
    heading_index: int  # 0..11 into HEADINGS_DEG


@dataclass(frozen=True)
class ActionChain:
    steps: tuple  # () for hold, (cand,) for root dribble, (action, cand) for MAD
    predicted_state: WorldSnapshot
    score: float

    @property
    def is_hold(self) -> bool:
        return not self.steps

    @property
    def total_cycles(self) -> int:
        cycles = 0
        for step in self.steps:
            cycles += step.dribble_cycles if isinstance(step, DribbleCandidate) else 1
        return cycles


def _opponents_of(state: WorldSnapshot, side: str) -> list[PlayerState]:
    other = THEIRS if side == OURS else OURS
    return state.side_players(other)


def _require_kickable(me: PlayerState, ball: BallState) -> None:
    if me.pos.dist(ball.pos) > me.type_params.kickable_area:
        raise ValueError(
            f"actor {me.side}:{me.unum} is not kickable "
            f"(ball at {me.pos.dist(ball.pos):.3f} m)"
        )


def opponent_blocks(
    opp: ObservedPlayer,
    candidate: DribbleCandidate,
    ball: BallState,
    config: FieldConfig = DEFAULT_CONFIG,
) -> bool:
    """Can this opponent reach the rolling ball in time?

    True iff for some cycle t in 1..dribble_cycles the opponent can cover its
    effective distance to the ball's path point within t cycles, including
    one reaction cycle. Staleness credit: pos_count * max_speed is subtracted
    from the true distance.
    """
    delta = candidate.target - ball.pos
    dist = delta.norm()
    if dist == 0.0:
        return False
    vel = Vec2(delta.x / dist * candidate.first_kick_speed,
               delta.y / dist * candidate.first_kick_speed)
    rolling = BallState(pos=ball.pos, vel=vel)
    ms = opp.base.type_params.max_speed
    for t in range(1, candidate.dribble_cycles + 1):
        pt = ball_travel(rolling, t, config.ball_decay)
        eff = max(0.0, opp.base.pos.dist(pt) - opp.pos_count * ms)
        if REACT_PENALTY + ceil_cycles(eff / ms) <= t:
            return True
    return False


def basic_dribble_candidates(
    state: WorldSnapshot,
    actor: tuple[str, int],
    predictor_pos_counts: dict[int, int] | None = None,
    config: FieldConfig = DEFAULT_CONFIG,
) -> list[DribbleCandidate]:
    """All safe dribble targets from the actor's position.

    predictor_pos_counts maps opponent unum -> staleness charged during
    interception (missing entries are 0; ground-truth states are current).
    """
    counts = predictor_pos_counts or {}
    me = state.player(*actor)
    _require_kickable(me, state.ball)
    ms = me.type_params.max_speed
    decay = config.ball_decay
    bx, by = state.ball.pos.x, state.ball.pos.y

    h = np.radians(np.array(HEADINGS_DEG))
    d = np.array(DASH_COUNTS, dtype=float)
    tx = me.pos.x + np.outer(np.cos(h), d * ms)  # (12, 9)
    ty = me.pos.y + np.outer(np.sin(h), d * ms)

    dang = np.abs((np.array(HEADINGS_DEG) - me.body + 180.0) % 360.0 - 180.0)
    turn = np.where(
        dang <= config.turn_dead_zone_deg,
        0,
        np.maximum(0, np.ceil(dang / config.turn_rate_deg - 1e-9)),
    ).astype(int)
    dash = np.maximum(
        0, np.ceil(np.hypot(tx - me.pos.x, ty - me.pos.y) / ms - 1e-9)
    ).astype(int)
    n = turn[:, None] + dash + 1  # (12, 9)

    dist_ball = np.hypot(tx - bx, ty - by)
    speed = dist_ball * (1.0 - decay) / (1.0 - decay ** n)
    xm = config.half_length + config.out_of_play_margin
    ym = config.half_width + config.out_of_play_margin
    keep = (speed <= config.ball_max_speed) & (np.abs(tx) <= xm) & (np.abs(ty) <= ym)

    opponents = _opponents_of(state, actor[0])
    if opponents and keep.any():
        ox = np.array([o.pos.x for o in opponents])
        oy = np.array([o.pos.y for o in opponents])
        oms = np.array([o.type_params.max_speed for o in opponents])
        opc = np.array([float(counts.get(o.unum, 0)) for o in opponents])

        max_n = int(n.max())
        t = np.arange(1, max_n + 1)
        factor = (1.0 - decay ** t) / (1.0 - decay)  # (T,)
        # rolling ball: same arithmetic as ball_travel on vel = unit * speed
        with np.errstate(invalid="ignore", divide="ignore"):
            ux = np.where(dist_ball > 0, (tx - bx) / dist_ball, 0.0)
            uy = np.where(dist_ball > 0, (ty - by) / dist_ball, 0.0)
        vx = ux * speed
        vy = uy * speed
        px = bx + vx[:, :, None] * factor  # (12, 9, T)
        py = by + vy[:, :, None] * factor

        dist = np.hypot(
            px[None] - ox[:, None, None, None], py[None] - oy[:, None, None, None]
        )  # (opp, 12, 9, T)
        eff = np.maximum(0.0, dist - (opc * oms)[:, None, None, None])
        reach = REACT_PENALTY + np.maximum(
            0.0, np.ceil(eff / oms[:, None, None, None] - 1e-9)
        )
        in_window = t[None, None, None, :] <= n[None, :, :, None]
        blocked = np.any((reach <= t[None, None, None, :]) & in_window, axis=(0, 3))
        keep &= ~blocked

    out = []
    for hi in range(len(HEADINGS_DEG)):
        for di in range(len(DASH_COUNTS)):
            if not keep[hi, di]:
                continue
            out.append(
                DribbleCandidate(
                    target=Vec2(float(tx[hi, di]), float(ty[hi, di])),
                    turn_cycles=int(turn[hi]),
                    dash_cycles=int(dash[hi, di]),
                    dribble_cycles=int(n[hi, di]),
                    first_kick_speed=float(speed[hi, di]),
                    safe=True,
                    heading_index=hi,
                )
            )
    return out


def field_evaluate(state: WorldSnapshot, config: FieldConfig = DEFAULT_CONFIG) -> float:
    """Ball advancement plus a bonus for closing on the opponent goal."""
    gx, gy = config.their_goal
    return state.ball.pos.x + max(0.0, 40.0 - state.ball.pos.dist(Vec2(gx, gy)))


def _finish_dribble(
    state: WorldSnapshot, actor: tuple[str, int], cand: DribbleCandidate
) -> WorldSnapshot:
    """State after the dribble completes: actor and ball on the target."""
    me = state.player(*actor)
    moved = replace(
        me,
        pos=cand.target,
        vel=Vec2(0.0, 0.0),
        body=HEADINGS_DEG[cand.heading_index],
    )
    players = tuple(moved if p is me else p for p in state.players)
    return WorldSnapshot(
        cycle=state.cycle + cand.dribble_cycles,
        ball=BallState(pos=cand.target, vel=Vec2(0.0, 0.0)),
        players=players,
    )


def _root_chain(
    state: WorldSnapshot, actor: tuple[str, int], cand: DribbleCandidate,
    config: FieldConfig,
) -> ActionChain:
    terminal = _finish_dribble(state, actor, cand)
    return ActionChain(steps=(cand,), predicted_state=terminal,
                       score=field_evaluate(terminal, config))


def _legal_one_step_actions(
    me: PlayerState, ball: BallState, config: FieldConfig
) -> list[tuple[OneStepAction, PlayerState, BallState]]:
    """(action, actor next cycle, ball next cycle), kickability enforced."""
    ka = me.type_params.kickable_area
    rolled = BallState(
        pos=ball_travel(ball, 1, config.ball_decay),
        vel=ball.vel.scaled(config.ball_decay),
    )
    out = []
    for deg in KICK_DIRS_DEG:
        for s in KICK_SPEEDS:
            v = Vec2(s * math.cos(math.radians(deg)), s * math.sin(math.radians(deg)))
            nxt = BallState(pos=ball.pos + v, vel=v.scaled(config.ball_decay))
            if nxt.pos.dist(me.pos) <= ka:
                out.append(
                    (OneStepAction(ActionKind.TWO_STEP_KICK, v), me, nxt)
                )
    for deg in KICK_DIRS_DEG:
        step = Vec2(
            me.type_params.max_speed * math.cos(math.radians(deg)),
            me.type_params.max_speed * math.sin(math.radians(deg)),
        )
        moved = replace(me, pos=me.pos + step)
        if rolled.pos.dist(moved.pos) <= ka:
            out.append(
                (OneStepAction(ActionKind.MOVE_BEFORE_KICK, float(deg)), moved, rolled)
            )
    if rolled.pos.dist(me.pos) <= ka:
        for deg in HEADINGS_DEG:
            turned = replace(me, body=float(deg))
            out.append(
                (OneStepAction(ActionKind.TURN_BEFORE_KICK, float(deg)), turned, rolled)
            )
    return out


def _advance_opponents(
    state: WorldSnapshot,
    actor_now: PlayerState,
    predictor,
    config: FieldConfig,
) -> tuple[dict[tuple[str, int], Vec2], dict[int, int]]:
    """Next-cycle opponent positions plus the staleness to charge at depth 2.

    With a predictor: near-ball opponents move to the predicted spot, counts
    stay current. Without: positions stand but near opponents are charged one
    stale cycle, since nobody modeled their move.
    """
    new_pos: dict[tuple[str, int], Vec2] = {}
    counts: dict[int, int] = {}
    for opp in _opponents_of(state, actor_now.side):
        if opp.pos.dist(state.ball.pos) > NEAR_BALL_RADIUS:
            continue
        if predictor is None:
            counts[opp.unum] = 1
        else:
            predicted = predict_opponent(
                predictor, actor_now, state.ball, ObservedPlayer(base=opp)
            )
            new_pos[(opp.side, opp.unum)] = _clamp_to_field(predicted, config)
    return new_pos, counts


def mad_candidates(
    state: WorldSnapshot,
    actor: tuple[str, int],
    predictor=None,
    config: FieldConfig = DEFAULT_CONFIG,
) -> list[ActionChain]:
    """Chains of one cheap action plus one dribble, deterministic order."""
    me = state.player(*actor)
    _require_kickable(me, state.ball)
    new_pos, counts = _advance_opponents(state, me, predictor, config)

    chains = []
    for action, me_next, ball_next in _legal_one_step_actions(me, state.ball, config):
        players = []
        for p in state.players:
            if p is me:
                players.append(me_next)
            elif (p.side, p.unum) in new_pos:
                players.append(replace(p, pos=new_pos[(p.side, p.unum)]))
            else:
                players.append(p)
        mid = WorldSnapshot(cycle=state.cycle + 1, ball=ball_next, players=tuple(players))
        for cand in basic_dribble_candidates(mid, actor, counts, config):
            terminal = _finish_dribble(mid, actor, cand)
            chains.append(
                ActionChain(
                    steps=(action, cand),
                    predicted_state=terminal,
                    score=field_evaluate(terminal, config),
                )
            )
    return chains


def chain_search(
    state: WorldSnapshot,
    actor: tuple[str, int],
    use_mad: bool,
    predictor=None,
    config: FieldConfig = DEFAULT_CONFIG,
) -> ActionChain:
    """Best chain by evaluator score; ties go to fewer cycles, then the
    smaller heading index. Holding the ball is always a competing chain, so
    adding candidates can never lower the returned score."""
    hold = ActionChain(steps=(), predicted_state=state,
                       score=field_evaluate(state, config))
    chains = [hold]
    chains += [
        _root_chain(state, actor, cand, config)
        for cand in basic_dribble_candidates(state, actor, None, config)
    ]
    if use_mad:
        chains.extend(mad_candidates(state, actor, predictor, config))

    def heading_of(chain: ActionChain) -> int:
        return chain.steps[-1].heading_index if chain.steps else -1

    best = chains[0]
    for c in chains[1:]:
        if (c.score, -c.total_cycles, -heading_of(c)) > (
            best.score, -best.total_cycles, -heading_of(best)
        ):
            best = c
    return best
