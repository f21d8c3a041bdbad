"""Tactical toolkit for 2D soccer simulations.

Marking assignment (nearest, greedy, Hungarian, staged lexicographic),
dribble candidate search with one-step pre-actions, opponent-movement
prediction, and a 738-feature pass-data extractor, plus deterministic
scenario benchmarks tying them together.
"""

from .assign import MatchingProblem, Solution, brute_force_lex, compare_solutions, hungarian, omam
from .bench import DribbleBenchReport, MarkBenchReport, run_dribble_bench, run_mark_bench
from .config import DEFAULT_CONFIG, FieldConfig
from .dribble import (
    ActionChain,
    DribbleCandidate,
    OneStepAction,
    basic_dribble_candidates,
    chain_search,
    field_evaluate,
    mad_candidates,
    opponent_blocks,
)
from .io import read_snapshots, snapshot_from_dict, snapshot_to_dict, write_snapshots
from .marking import Algorithm, MarkPlan, danger_rank, group_players, mark_assign
from .passdata import FeatureRow, PassEvent, SortingConfig, SortMode, extract_row, read_log, sort_players
from .predictor import (
    ConstantVelocityPredictor,
    Network,
    NetworkPredictor,
    forward,
    load_network,
    predict_opponent,
)
from .scenarios import (
    Placement,
    ScenarioParams,
    collision_snapshot,
    forward_blocked_snapshot,
    gen_blocked_scenario,
    gen_dribble_scenario,
    gen_scenario,
)
from .world import (
    AgentObservation,
    BallState,
    ObservedPlayer,
    PlayerState,
    PlayerType,
    Vec2,
    WorldSnapshot,
    ball_travel,
    cycles_to_point,
    observe,
)

__version__ = "0.1.0"
