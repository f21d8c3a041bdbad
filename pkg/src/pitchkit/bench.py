"""Benchmarks: decentralized marking under noise, and dribble search width.

The marking bench replays the team's real failure mode: eleven players see
the same world through different noise, each runs the same planner, and each
executes only its own mark. Nobody coordinates. A duplicate mark or an
unmarked attacker is something the planner let happen, not a bug in the
harness. Truth-side metrics (attacker set, distances) always come from the
noise-free snapshot.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CONFIG, FieldConfig
from .dribble import chain_search
from .marking import Algorithm, N_ATTACKERS, danger_score, mark_assign
from .predictor import NetworkPredictor, load_network
from .scenarios import (
    ScenarioParams,
    gen_dribble_scenario,
    gen_scenario,
    observer_seed,
)
from .world import OURS, THEIRS, WorldSnapshot, observe

OBSERVER_UNUMS = tuple(range(1, 12))


@dataclass(frozen=True)
class AlgoMetrics:
    duplicate_mark_rate: float
    unmarked_attacker_rate: float
    mean_total_cost: float
    sync_rate: float

    def as_dict(self) -> dict[str, float]:
        return {
            "duplicate_mark_rate": self.duplicate_mark_rate,
            "unmarked_attacker_rate": self.unmarked_attacker_rate,
            "mean_total_cost": self.mean_total_cost,
            "sync_rate": self.sync_rate,
        }


@dataclass(frozen=True)
class MarkBenchReport:
    per_algorithm: dict[str, AlgoMetrics]
    n_scenarios: int

    def as_dict(self) -> dict:
        return {
            "n_scenarios": self.n_scenarios,
            "algorithms": {k: v.as_dict() for k, v in self.per_algorithm.items()},
        }


def true_attackers(world: WorldSnapshot, config: FieldConfig) -> set[int]:
    """Top-4 opponent unums by danger on ground-truth positions."""
    scores = [
        (danger_score(p.pos, world.ball.pos, config), p.unum)
        for p in world.side_players(THEIRS)
    ]
    ranked = sorted(scores, key=lambda s: (-s[0], s[1]))
    return {unum for _, unum in ranked[:N_ATTACKERS]}


def run_mark_bench(
    params: ScenarioParams,
    algorithms: tuple[Algorithm, ...] = tuple(Algorithm),
    centralized: bool = False,
    scenario_fn=gen_scenario,
    config: FieldConfig = DEFAULT_CONFIG,
) -> MarkBenchReport:
    sums = {
        a: {"dup": 0.0, "unmarked": 0.0, "cost": 0.0, "sync": 0.0} for a in algorithms
    }
    for i in range(params.n_scenarios):
        world = scenario_fn(params, i, config)
        if centralized:
            shared = observe(world, (OURS, 1), params.noise, observer_seed(params, i, 1), config)
            observations = {u: shared for u in OBSERVER_UNUMS}
        else:
            observations = {
                u: observe(world, (OURS, u), params.noise, observer_seed(params, i, u), config)
                for u in OBSERVER_UNUMS
            }
        attackers = true_attackers(world, config)
        true_pos = {
            (p.side, p.unum): p.pos for p in world.players
        }
        for algo in algorithms:
            plans = {u: mark_assign(observations[u], algo, config) for u in OBSERVER_UNUMS}
            executed = {
                u: plans[u].marks[u] for u in OBSERVER_UNUMS if u in plans[u].marks
            }
            markers_per_opp: dict[int, int] = {}
            for opp in executed.values():
                markers_per_opp[opp] = markers_per_opp.get(opp, 0) + 1
            s = sums[algo]
            s["dup"] += 1.0 if any(c >= 2 for c in markers_per_opp.values()) else 0.0
            unmarked = attackers - set(executed.values())
            s["unmarked"] += len(unmarked) / N_ATTACKERS
            s["cost"] += sum(
                true_pos[(OURS, u)].dist(true_pos[(THEIRS, opp)])
                for u, opp in executed.items()
            )
            first = plans[OBSERVER_UNUMS[0]].marks
            s["sync"] += 1.0 if all(plans[u].marks == first for u in OBSERVER_UNUMS) else 0.0

    n = params.n_scenarios
    per_algorithm = {
        algo.value: AlgoMetrics(
            duplicate_mark_rate=s["dup"] / n,
            unmarked_attacker_rate=s["unmarked"] / n,
            mean_total_cost=s["cost"] / n,
            sync_rate=s["sync"] / n,
        )
        for algo, s in sums.items()
    }
    return MarkBenchReport(per_algorithm=per_algorithm, n_scenarios=n)


@dataclass(frozen=True)
class DribbleBenchReport:
    mean_candidates: float
    mean_best_score: float
    mad_gain: float
    basic_none_rate: float
    mad_rescue_rate: float
    n_scenarios: int

    def as_dict(self) -> dict:
        return {
            "n_scenarios": self.n_scenarios,
            "mean_candidates": self.mean_candidates,
            "mean_best_score": self.mean_best_score,
            "mad_gain": self.mad_gain,
            "basic_none_rate": self.basic_none_rate,
            "mad_rescue_rate": self.mad_rescue_rate,
        }


def run_dribble_bench(
    params: ScenarioParams,
    use_mad: bool,
    weights_path: str | None = None,
    scenario_fn=gen_dribble_scenario,
    actor=(OURS, 9),
    config: FieldConfig = DEFAULT_CONFIG,
) -> DribbleBenchReport:
    predictor = None
    if weights_path is not None:
        try:
            with open(weights_path) as f:
                predictor = NetworkPredictor(load_network(f.read()))
        except ValueError as e:
            raise ValueError(f"{weights_path}: {e}") from e

    from .dribble import basic_dribble_candidates, mad_candidates

    n_cands = 0
    best_sum = 0.0
    gain_sum = 0.0
    basic_none = 0
    rescues = 0
    for i in range(params.n_scenarios):
        world = scenario_fn(params, i, config)
        roots = basic_dribble_candidates(world, actor, None, config)
        n_cands += len(roots)
        basic_best = chain_search(world, actor, use_mad=False, predictor=None, config=config)
        if use_mad:
            chains = mad_candidates(world, actor, predictor, config)
            n_cands += len(chains)
            chosen = chain_search(world, actor, use_mad=True, predictor=predictor, config=config)
            if not roots:
                basic_none += 1
                if chains:
                    rescues += 1
        else:
            chosen = basic_best
        best_sum += chosen.score
        gain_sum += chosen.score - basic_best.score

    n = params.n_scenarios
    return DribbleBenchReport(
        mean_candidates=n_cands / n,
        mean_best_score=best_sum / n,
        mad_gain=gain_sum / n,
        basic_none_rate=basic_none / n,
        mad_rescue_rate=rescues / n,
        n_scenarios=n,
    )
