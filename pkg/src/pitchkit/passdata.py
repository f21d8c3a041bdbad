"""Pass-event feature extraction.

Each pass becomes one labeled row of 738 values: a 12-value ball block, a
42-value block per our player, and a 24-value block per opponent
(12 + 42*11 + 24*11). Block order follows the active sorting (uniform number
or x coordinate, optionally with the kicker's block moved to the front); the
label is the receiver's uniform number plus its block index under that
sorting, so one game log yields four consistent datasets.

Angle conventions: `ang_from_X` is the direction of (subject - X),
`ang_our_goal`/`ang_opp_goal` point from the subject toward that goal; all
degrees in [-180, 180). Reach counts are turn + dash cycles. Rows extracted
from ground-truth snapshots carry zero pos/vel/body counts.
"""
from __future__ import annotations

import csv
import enum
import json
from dataclasses import dataclass
from typing import IO

import numpy as np

from .config import DEFAULT_CONFIG, FieldConfig
from .io import snapshot_from_dict
from .marking import danger_score
from .world import (
    OURS,
    THEIRS,
    PlayerState,
    Vec2,
    WorldSnapshot,
    cycles_to_point,
    normalize_angle,
)

N_FEATURES = 738

BALL_FIELDS = (
    "x", "y", "vx", "vy", "speed", "vel_dir",
    "dist_our_goal", "ang_our_goal", "dist_opp_goal", "ang_opp_goal",
    "dist_to_kicker", "ang_from_kicker",
)

OUR_FIELDS = (
    "x", "y", "dist_ball", "ang_from_ball", "vx", "vy", "speed", "vel_dir",
    "body_dir", "pos_count", "vel_count", "body_count", "is_kicker",
    "dist_kicker", "ang_from_kicker", "dist_our_goal", "ang_our_goal",
    "dist_opp_goal", "ang_opp_goal", "type_max_speed", "type_kickable_area",
    "type_size",
    "near_opp1_dist", "near_opp1_ang_diff", "near_opp1_dist_pass_line",
    "near_opp2_dist", "near_opp2_ang_diff", "near_opp2_dist_pass_line",
    "risk_opp1_dist_pass_line", "risk_opp1_dist_receiver", "risk_opp1_reach_cycles",
    "risk_opp2_dist_pass_line", "risk_opp2_dist_receiver", "risk_opp2_reach_cycles",
    "unum", "x_sort_index", "offside_flag", "dist_offside_line",
    "in_opp_penalty_flag", "reach_cycles_ball", "nearest_teammate_dist",
    "team_flag",
)

OPP_FIELDS = (
    "x", "y", "dist_ball", "ang_from_ball", "vx", "vy", "speed", "vel_dir",
    "body_dir", "pos_count", "dist_kicker", "ang_from_kicker",
    "dist_our_goal", "ang_our_goal", "type_max_speed", "type_kickable_area",
    "unum", "x_sort_index", "reach_cycles_ball", "nearest_our_dist",
    "dist_kicker_goal_segment", "in_our_penalty_flag", "danger_score",
    "team_flag",
)

assert len(BALL_FIELDS) == 12 and len(OUR_FIELDS) == 42 and len(OPP_FIELDS) == 24
assert len(BALL_FIELDS) + 11 * len(OUR_FIELDS) + 11 * len(OPP_FIELDS) == N_FEATURES

CSV_COLUMNS = (
    tuple(f"ball_{f}" for f in BALL_FIELDS)
    + tuple(f"our{i}_{f}" for i in range(11) for f in OUR_FIELDS)
    + tuple(f"opp{i}_{f}" for i in range(11) for f in OPP_FIELDS)
    + ("label_unum", "label_index")
)


class SortMode(enum.Enum):
    UNUM = "unum"
    XSORT = "x"


@dataclass(frozen=True)
class SortingConfig:
    mode: SortMode = SortMode.UNUM
    kicker_first: bool = False


@dataclass(frozen=True)
class PassEvent:
    cycle: int
    kicker_unum: int
    receiver_unum: int

    def __post_init__(self):
        for u in (self.kicker_unum, self.receiver_unum):
            if not 1 <= u <= 11:
                raise ValueError(f"unum {u} outside 1..11")
        if self.kicker_unum == self.receiver_unum:
            raise ValueError(f"kicker and receiver are both {self.kicker_unum}")


@dataclass(frozen=True)
class FeatureRow:
    values: tuple[float, ...]
    label_unum: int
    label_index: int

    def __post_init__(self):
        if len(self.values) != N_FEATURES:
            raise ValueError(f"{len(self.values)} values, need {N_FEATURES}")
        if not 1 <= self.label_unum <= 11:
            raise ValueError(f"label_unum {self.label_unum} outside 1..11")
        if not 0 <= self.label_index <= 10:
            raise ValueError(f"label_index {self.label_index} outside 0..10")


def sort_players(
    players: list[PlayerState], config: SortingConfig, kicker_unum: int | None
) -> list[int]:
    """Permutation of indices into `players` under the active sorting."""
    unums = [p.unum for p in players]
    if len(set(unums)) != len(unums):
        raise ValueError(f"duplicate unums in {sorted(unums)}")
    if config.mode is SortMode.UNUM:
        perm = sorted(range(len(players)), key=lambda i: players[i].unum)
    else:
        perm = sorted(range(len(players)), key=lambda i: (players[i].pos.x, players[i].unum))
    if config.kicker_first and kicker_unum is not None:
        k = next(i for i in perm if players[i].unum == kicker_unum)
        perm = [k] + [i for i in perm if i != k]
    return perm


def _dist_to_segment(p: Vec2, a: Vec2, b: Vec2) -> float:
    ab = b - a
    denom = ab.x * ab.x + ab.y * ab.y
    if denom == 0.0:
        return p.dist(a)
    t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / denom
    t = min(1.0, max(0.0, t))
    return p.dist(Vec2(a.x + t * ab.x, a.y + t * ab.y))


def _vel_features(p: PlayerState) -> tuple[float, float]:
    return p.vel.norm(), p.vel.angle_deg()


def _reach(p: PlayerState, target: Vec2) -> float:
    turn, dash = cycles_to_point(p, target)
    return float(turn + dash)


def _x_rank(players: list[PlayerState]) -> dict[int, int]:
    order = sorted(players, key=lambda p: (p.pos.x, p.unum))
    return {p.unum: i for i, p in enumerate(order)}


def extract_row(
    snapshot: WorldSnapshot,
    event: PassEvent,
    config: SortingConfig,
    field_config: FieldConfig = DEFAULT_CONFIG,
) -> FeatureRow:
    ours = snapshot.side_players(OURS)
    theirs = snapshot.side_players(THEIRS)
    kicker = snapshot.player(OURS, event.kicker_unum)
    if not any(p.unum == event.receiver_unum for p in ours):
        raise ValueError(f"receiver {event.receiver_unum} not on our side")

    our_goal = Vec2(*field_config.our_goal)
    opp_goal = Vec2(*field_config.their_goal)
    ball = snapshot.ball
    offside_x = max(sorted(p.pos.x for p in theirs)[-2], ball.pos.x)
    our_rank = _x_rank(ours)
    opp_rank = _x_rank(theirs)

    values: list[float] = []
    bs, bd = ball.vel.norm(), ball.vel.angle_deg()
    values += [
        ball.pos.x, ball.pos.y, ball.vel.x, ball.vel.y, bs, bd,
        ball.pos.dist(our_goal), (our_goal - ball.pos).angle_deg(),
        ball.pos.dist(opp_goal), (opp_goal - ball.pos).angle_deg(),
        ball.pos.dist(kicker.pos), (ball.pos - kicker.pos).angle_deg(),
    ]

    perm_our = sort_players(ours, config, event.kicker_unum)
    perm_opp = sort_players(
        theirs, SortingConfig(mode=config.mode, kicker_first=False), None
    )

    for i in perm_our:
        p = ours[i]
        speed, vdir = _vel_features(p)
        by_dist = sorted(theirs, key=lambda o: (p.pos.dist(o.pos), o.unum))[:2]
        by_risk = sorted(
            theirs,
            key=lambda o: (_dist_to_segment(o.pos, kicker.pos, p.pos), o.unum),
        )[:2]
        near_feats = []
        for o in by_dist:
            near_feats += [
                p.pos.dist(o.pos),
                normalize_angle((o.pos - p.pos).angle_deg() - p.body),
                _dist_to_segment(o.pos, kicker.pos, p.pos),
            ]
        risk_feats = []
        for o in by_risk:
            risk_feats += [
                _dist_to_segment(o.pos, kicker.pos, p.pos),
                o.pos.dist(p.pos),
                _reach(o, p.pos),
            ]
        teammates = [q for q in ours if q.unum != p.unum]
        values += [
            p.pos.x, p.pos.y, p.pos.dist(ball.pos),
            (p.pos - ball.pos).angle_deg(),
            p.vel.x, p.vel.y, speed, vdir, p.body,
            0.0, 0.0, 0.0,  # pos/vel/body counts: ground truth is current
            1.0 if p.unum == event.kicker_unum else 0.0,
            p.pos.dist(kicker.pos), (p.pos - kicker.pos).angle_deg(),
            p.pos.dist(our_goal), (our_goal - p.pos).angle_deg(),
            p.pos.dist(opp_goal), (opp_goal - p.pos).angle_deg(),
            p.type_params.max_speed, p.type_params.kickable_area, p.type_params.size,
            *near_feats, *risk_feats,
            p.unum / 11.0, our_rank[p.unum] / 11.0,
            1.0 if p.pos.x > offside_x else 0.0,
            offside_x - p.pos.x,
            1.0 if (
                p.pos.x >= field_config.half_length - field_config.penalty_area_depth
                and abs(p.pos.y) <= field_config.penalty_area_half_width
            ) else 0.0,
            _reach(p, ball.pos),
            min(p.pos.dist(q.pos) for q in teammates),
            1.0,
        ]

    for i in perm_opp:
        o = theirs[i]
        speed, vdir = _vel_features(o)
        values += [
            o.pos.x, o.pos.y, o.pos.dist(ball.pos),
            (o.pos - ball.pos).angle_deg(),
            o.vel.x, o.vel.y, speed, vdir, o.body,
            0.0,
            o.pos.dist(kicker.pos), (o.pos - kicker.pos).angle_deg(),
            o.pos.dist(our_goal), (our_goal - o.pos).angle_deg(),
            o.type_params.max_speed, o.type_params.kickable_area,
            o.unum / 11.0, opp_rank[o.unum] / 11.0,
            _reach(o, ball.pos),
            min(o.pos.dist(q.pos) for q in ours),
            _dist_to_segment(o.pos, kicker.pos, opp_goal),
            1.0 if (
                o.pos.x <= -(field_config.half_length - field_config.penalty_area_depth)
                and abs(o.pos.y) <= field_config.penalty_area_half_width
            ) else 0.0,
            danger_score(o.pos, ball.pos, field_config),
            0.0,
        ]

    label_index = next(
        j for j, i in enumerate(perm_our) if ours[i].unum == event.receiver_unum
    )
    row = FeatureRow(
        values=tuple(float(v) for v in values),
        label_unum=event.receiver_unum,
        label_index=label_index,
    )
    if not np.all(np.isfinite(row.values)):
        raise ValueError("non-finite feature value")
    return row


class LogFormatError(ValueError):
    pass


@dataclass
class ReadLogResult:
    events: list[tuple[WorldSnapshot, PassEvent]]
    warnings: list[str]

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)


def read_log(stream: IO[str]) -> ReadLogResult:
    """Collect (snapshot, pass event) pairs from a `.jsonl` game log.

    Lines without a "pass" object are silently skipped. Malformed lines
    (bad JSON, invalid snapshot, bad pass object) are skipped with a warning
    each; more than half the nonempty lines malformed means the file itself
    is the problem.
    """
    events: list[tuple[WorldSnapshot, PassEvent]] = []
    warnings: list[str] = []
    total = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        total += 1
        try:
            d = json.loads(line)
            snap = snapshot_from_dict(d)
        except (ValueError, KeyError, TypeError) as e:
            warnings.append(f"line {lineno}: {e}")
            continue
        if "pass" not in d:
            continue
        try:
            p = d["pass"]
            event = PassEvent(
                cycle=snap.cycle,
                kicker_unum=int(p["kicker"]),
                receiver_unum=int(p["receiver"]),
            )
        except (ValueError, KeyError, TypeError) as e:
            warnings.append(f"line {lineno}: {e}")
            continue
        events.append((snap, event))
    if total and len(warnings) > total / 2:
        raise LogFormatError(
            f"{len(warnings)} of {total} lines malformed; first: {warnings[0]}"
        )
    return ReadLogResult(events=events, warnings=warnings)


def write_csv(rows, stream: IO[str]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow([repr(v) for v in row.values] + [row.label_unum, row.label_index])


def read_csv(stream: IO[str]) -> list[FeatureRow]:
    r = csv.reader(stream)
    header = next(r)
    if tuple(header) != CSV_COLUMNS:
        raise LogFormatError("unexpected CSV header")
    out = []
    for rec in r:
        out.append(
            FeatureRow(
                values=tuple(float(v) for v in rec[:N_FEATURES]),
                label_unum=int(rec[N_FEATURES]),
                label_index=int(rec[N_FEATURES + 1]),
            )
        )
    return out
