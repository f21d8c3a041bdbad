"""Marking: who covers whom.

Four planners over one AgentObservation, worst to best:

* Proximity: every defender independently picks its nearest opponent. Two
  defenders happily pick the same one; that collision is the pathology the
  benchmark measures.
* DangerGreedy: opponents in danger order each grab their nearest free
  teammate.
* Hungarian: one global min-cost matching of our outfield players to the ten
  outfield opponents.
* Omam: the staged plan. Backs cover Attackers first, Middles mop up
  uncovered Attackers, then everyone still free covers the most dangerous
  Normals. Each stage is a small k-restricted lexicographic assignment, so
  the instances stay tiny and every agent reaches the same answer.

Defenders are our unums 2..11 (the keeper never marks); opponent keepers are
likewise never marked.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .assign import MatchingProblem, Solution, hungarian, omam
from .config import DEFAULT_CONFIG, FieldConfig
from .world import AgentObservation, ObservedPlayer, Vec2

DUMMY_COST = 1e6
OMAM_K = 3
N_ATTACKERS = 4
STAGE3_MAX_TASKS = 4


class Algorithm(enum.Enum):
    PROXIMITY = "proximity"
    DANGER_GREEDY = "danger"
    HUNGARIAN = "hungarian"
    OMAM = "omam"


class Role(enum.Enum):
    BACK = "back"
    MIDDLE = "middle"
    FORWARD = "forward"


@dataclass(frozen=True)
class DangerScore:
    opponent: tuple[str, int]
    score: float


@dataclass(frozen=True)
class PlayerGroups:
    ours: dict[int, Role]
    theirs: dict[int, str]  # unum -> "attacker" | "normal"


@dataclass(frozen=True)
class MarkPlan:
    marks: dict[int, int]  # our unum -> their unum
    algorithm: Algorithm


def danger_score(
    opp_pos: Vec2, ball_pos: Vec2, config: FieldConfig = DEFAULT_CONFIG
) -> float:
    gx, gy = config.our_goal
    d_goal = opp_pos.dist(Vec2(gx, gy))
    d_ball = opp_pos.dist(ball_pos)
    return 2.0 * max(0.0, 1.0 - d_goal / 60.0) + max(0.0, 1.0 - d_ball / 40.0)


def danger_rank(
    obs: AgentObservation, config: FieldConfig = DEFAULT_CONFIG
) -> list[DangerScore]:
    """All 11 opponents, descending score, ties by ascending unum."""
    scores = [
        DangerScore(
            opponent=(p.base.side, p.base.unum),
            score=danger_score(p.base.pos, obs.ball.pos, config),
        )
        for p in obs.opponents_of_observer()
    ]
    return sorted(scores, key=lambda s: (-s.score, s.opponent[1]))


def group_players(
    obs: AgentObservation, config: FieldConfig = DEFAULT_CONFIG
) -> PlayerGroups:
    ours = {}
    for unum in range(2, 12):
        if unum <= 5:
            ours[unum] = Role.BACK
        elif unum <= 8:
            ours[unum] = Role.MIDDLE
        else:
            ours[unum] = Role.FORWARD
    ranked = danger_rank(obs, config)
    attackers = {s.opponent[1] for s in ranked[:N_ATTACKERS]}
    theirs = {
        s.opponent[1]: "attacker" if s.opponent[1] in attackers else "normal"
        for s in ranked
    }
    return PlayerGroups(ours=ours, theirs=theirs)


def _defenders(obs: AgentObservation) -> list[ObservedPlayer]:
    side = obs.observer[0]
    return [p for p in obs.side_players(side) if p.base.unum >= 2]


def _markable_opponents(obs: AgentObservation) -> list[ObservedPlayer]:
    return [p for p in obs.opponents_of_observer() if p.base.unum >= 2]


def _proximity(obs: AgentObservation) -> dict[int, int]:
    marks = {}
    opponents = _markable_opponents(obs)
    for d in _defenders(obs):
        best = min(opponents, key=lambda o: (d.base.pos.dist(o.base.pos), o.base.unum))
        marks[d.base.unum] = best.base.unum
    return marks


def _danger_greedy(obs: AgentObservation, config: FieldConfig) -> dict[int, int]:
    marks = {}
    free = {d.base.unum: d for d in _defenders(obs)}
    for s in danger_rank(obs, config):
        if s.opponent[1] == 1 or not free:
            continue
        opp = obs.player(*s.opponent)
        unum = min(free, key=lambda u: (free[u].base.pos.dist(opp.base.pos), u))
        marks[unum] = s.opponent[1]
        del free[unum]
    return marks


def _hungarian_plan(obs: AgentObservation) -> dict[int, int]:
    """Defenders x outfield opponents, padded square with dummy-cost entries."""
    defenders = _defenders(obs)
    opponents = _markable_opponents(obs)
    n = max(len(defenders), len(opponents))
    cost = tuple(
        tuple(
            defenders[a].base.pos.dist(opponents[t].base.pos)
            if a < len(defenders) and t < len(opponents)
            else DUMMY_COST
            for t in range(n)
        )
        for a in range(n)
    )
    sol = hungarian(MatchingProblem(cost=cost, importance=(0.0,) * n))
    return {
        defenders[a].base.unum: opponents[t].base.unum
        for a, t in sol.pairs
        if a < len(defenders) and t < len(opponents)
    }


def _stage(
    agents: list[ObservedPlayer], targets: list[ObservedPlayer], importance: dict[int, float]
) -> dict[int, int]:
    """One k-restricted lexicographic assignment; empty when either side is."""
    if not agents or not targets:
        return {}
    cost = tuple(
        tuple(a.base.pos.dist(t.base.pos) for t in targets) for a in agents
    )
    imp = tuple(importance[t.base.unum] for t in targets)
    sol = omam(MatchingProblem(cost=cost, importance=imp), k=OMAM_K)
    return {agents[a].base.unum: targets[t].base.unum for a, t in sol.pairs}


def _omam_plan(obs: AgentObservation, config: FieldConfig) -> dict[int, int]:
    groups = group_players(obs, config)
    ranked = danger_rank(obs, config)
    importance = {s.opponent[1]: s.score for s in ranked}
    by_unum = {p.base.unum: p for p in _markable_opponents(obs)}
    defenders = {d.base.unum: d for d in _defenders(obs)}

    def players_of(role: Role, taken: set[int]) -> list[ObservedPlayer]:
        return [
            defenders[u]
            for u in sorted(defenders)
            if groups.ours[u] is role and u not in taken
        ]

    attackers = [
        by_unum[s.opponent[1]]
        for s in ranked
        if groups.theirs[s.opponent[1]] == "attacker" and s.opponent[1] in by_unum
    ]

    marks = _stage(players_of(Role.BACK, set()), attackers, importance)

    covered = set(marks.values())
    leftovers = [o for o in attackers if o.base.unum not in covered]
    marks.update(_stage(players_of(Role.MIDDLE, set(marks)), leftovers, importance))

    covered = set(marks.values())
    normals = [
        by_unum[s.opponent[1]]
        for s in ranked
        if groups.theirs[s.opponent[1]] == "normal"
        and s.opponent[1] in by_unum
        and s.opponent[1] not in covered
    ][:STAGE3_MAX_TASKS]
    stage3_agents = [
        defenders[u]
        for u in sorted(defenders)
        if groups.ours[u] in (Role.MIDDLE, Role.FORWARD) and u not in marks
    ]
    marks.update(_stage(stage3_agents, normals, importance))
    return marks


def mark_assign(
    obs: AgentObservation,
    algorithm: Algorithm,
    config: FieldConfig = DEFAULT_CONFIG,
) -> MarkPlan:
    if algorithm is Algorithm.PROXIMITY:
        marks = _proximity(obs)
    elif algorithm is Algorithm.DANGER_GREEDY:
        marks = _danger_greedy(obs, config)
    elif algorithm is Algorithm.HUNGARIAN:
        marks = _hungarian_plan(obs)
    elif algorithm is Algorithm.OMAM:
        marks = _omam_plan(obs, config)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return MarkPlan(marks=marks, algorithm=algorithm)
