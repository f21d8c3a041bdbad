"""Assignment-problem core.

Three solvers over the same problem record:

* `hungarian`: exact minimum-cost perfect matching on square instances.
* `omam`: lexicographic coverage-then-cost optimizer where each agent is
  restricted to its k cheapest tasks. Coverage is a bit-string over tasks in
  descending-importance order and dominates cost, so the most important
  coverable tasks are always assigned.
* `brute_force_lex`: factorial enumeration used as the oracle for `omam`.

All tie-breaks are deterministic (ascending task index, then agent index):
eleven agents solving the same instance must produce bit-identical answers,
otherwise decentralized plans drift apart.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

REL_TOL = 1e-9


@dataclass(frozen=True)
class MatchingProblem:
    cost: tuple[tuple[float, ...], ...]
    importance: tuple[float, ...]

    def __post_init__(self):
        cost = tuple(tuple(float(c) for c in row) for row in self.cost)
        imp = tuple(float(v) for v in self.importance)
        if not cost or not cost[0]:
            raise ValueError("need at least one agent and one task")
        width = len(cost[0])
        if any(len(row) != width for row in cost):
            raise ValueError("ragged cost matrix")
        for row in cost:
            for c in row:
                if not math.isfinite(c) or c < 0:
                    raise ValueError(f"cost {c} not finite and nonnegative")
        if len(imp) != width:
            raise ValueError(f"{len(imp)} importances for {width} tasks")
        if any(not math.isfinite(v) for v in imp):
            raise ValueError("non-finite importance")
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "importance", imp)

    @property
    def n_agents(self) -> int:
        return len(self.cost)

    @property
    def n_tasks(self) -> int:
        return len(self.cost[0])

    def task_rank_order(self) -> list[int]:
        """Task indices by descending importance, ties by ascending index."""
        return sorted(range(self.n_tasks), key=lambda t: (-self.importance[t], t))


@dataclass(frozen=True)
class Solution:
    pairs: tuple[tuple[int, int], ...]  # sorted by agent index
    total_cost: float
    coverage: str


class Ordering(enum.Enum):
    A_BETTER = "a_better"
    B_BETTER = "b_better"
    EQUAL = "equal"


def make_solution(problem: MatchingProblem, pairs) -> Solution:
    """Build a Solution; cost is summed in ascending-agent order so equal pair
    sets always produce the identical float."""
    pairs = tuple(sorted(pairs))
    agents = [a for a, _ in pairs]
    tasks = [t for _, t in pairs]
    if len(set(agents)) != len(agents) or len(set(tasks)) != len(tasks):
        raise ValueError(f"pairs not injective: {pairs}")
    total = 0.0
    for a, t in pairs:
        total += problem.cost[a][t]
    assigned = set(tasks)
    coverage = "".join("1" if t in assigned else "0" for t in problem.task_rank_order())
    return Solution(pairs=pairs, total_cost=total, coverage=coverage)


def compare_solutions(a: Solution, b: Solution) -> Ordering:
    """Coverage (as a binary numeral, most important task first) dominates;
    then lower cost; then the lexicographically smaller pair list."""
    if len(a.coverage) != len(b.coverage):
        raise ValueError("solutions built against different problems")
    if a.coverage != b.coverage:
        return Ordering.A_BETTER if a.coverage > b.coverage else Ordering.B_BETTER
    if a.total_cost != b.total_cost:
        return Ordering.A_BETTER if a.total_cost < b.total_cost else Ordering.B_BETTER
    if a.pairs != b.pairs:
        return Ordering.A_BETTER if a.pairs < b.pairs else Ordering.B_BETTER
    return Ordering.EQUAL


def hungarian(problem: MatchingProblem) -> Solution:
    """Minimum-cost perfect matching; among optima, the lexicographically
    smallest pair list by agent index."""
    n = problem.n_agents
    if n != problem.n_tasks:
        raise ValueError(f"hungarian needs a square problem, got {n}x{problem.n_tasks}")
    c = np.asarray(problem.cost, dtype=float)
    rows, cols = linear_sum_assignment(c)
    opt = float(c[rows, cols].sum())
    tol = REL_TOL * max(1.0, abs(opt))

    # Fix agents one by one to the smallest task index that still allows an
    # optimal completion; each check is one solve on the remaining submatrix.
    free_tasks = list(range(n))
    chosen: list[tuple[int, int]] = []
    fixed_cost = 0.0
    for agent in range(n):
        for t in free_tasks:
            rest = [u for u in free_tasks if u != t]
            if rest:
                sub = c[np.ix_(range(agent + 1, n), rest)]
                r, k = linear_sum_assignment(sub)
                completion = float(sub[r, k].sum())
            else:
                completion = 0.0
            if fixed_cost + c[agent, t] + completion <= opt + tol:
                chosen.append((agent, t))
                fixed_cost += float(c[agent, t])
                free_tasks.remove(t)
                break
        else:
            raise AssertionError("no optimal completion found")
    return make_solution(problem, chosen)


def _k_allowed(problem: MatchingProblem, k: int) -> list[list[int]]:
    """Each agent's k cheapest tasks, ties by ascending task index."""
    out = []
    for row in problem.cost:
        order = sorted(range(len(row)), key=lambda t: (row[t], t))
        out.append(sorted(order[:k]))
    return out


def _feasible(task_list: list[int], allowed_sets: list[set[int]]) -> bool:
    """Can every task in task_list get a distinct agent? Kuhn's matching."""
    match_of_task: dict[int, int] = {}

    def try_agent(agent: int, seen: set[int]) -> bool:
        for t in task_list:
            if t in seen or t not in allowed_sets[agent]:
                continue
            seen.add(t)
            if t not in match_of_task or try_agent(match_of_task[t], seen):
                match_of_task[t] = agent
                return True
        return False

    matched = 0
    for agent in range(len(allowed_sets)):
        if try_agent(agent, set()):
            matched += 1
            if matched == len(task_list):
                return True
    return matched == len(task_list)


def omam(problem: MatchingProblem, k: int) -> Solution:
    """Best k-restricted solution under compare_solutions.

    Coverage first: walking tasks in rank order and keeping each one that is
    still jointly coverable yields the lexicographically greatest coverage
    (coverable task sets form a transversal matroid, so the greedy walk is
    exact). Cost second: a suffix DP over (agent, remaining-task mask) finds
    the cheapest assignment of the kept tasks, and the reconstruction walks
    agents in ascending order taking the smallest task that still reaches the
    DP optimum, which is exactly the lex-smallest optimal pair list.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    allowed = _k_allowed(problem, k)
    allowed_sets = [set(a) for a in allowed]

    kept: list[int] = []
    for t in problem.task_rank_order():
        if any(t in s for s in allowed_sets) and _feasible(kept + [t], allowed_sets):
            kept.append(t)
    if not kept:
        return make_solution(problem, [])

    kept_sorted = sorted(kept)
    bit_of_task = {t: 1 << i for i, t in enumerate(kept_sorted)}
    full_mask = (1 << len(kept_sorted)) - 1
    n = problem.n_agents
    INF = float("inf")

    # dp[mask] after processing agents i..n-1: min cost to cover mask
    dp = [[INF] * (full_mask + 1) for _ in range(n + 1)]
    dp[n][0] = 0.0
    for i in range(n - 1, -1, -1):
        row = problem.cost[i]
        nxt = dp[i + 1]
        cur = dp[i]
        for mask in range(full_mask + 1):
            best = nxt[mask]
            for t in allowed[i]:
                bit = bit_of_task.get(t)
                if bit and mask & bit:
                    cand = row[t] + nxt[mask ^ bit]
                    if cand < best:
                        best = cand
            cur[mask] = best
    if dp[0][full_mask] == INF:
        raise AssertionError("kept tasks judged feasible but DP found no cover")

    pairs: list[tuple[int, int]] = []
    mask = full_mask
    for i in range(n):
        if mask == 0:
            break
        target = dp[i][mask]
        took = False
        for t in allowed[i]:
            bit = bit_of_task.get(t)
            if bit and mask & bit and problem.cost[i][t] + dp[i + 1][mask ^ bit] == target:
                pairs.append((i, t))
                mask ^= bit
                took = True
                break
        if not took and dp[i + 1][mask] != target:
            raise AssertionError("DP reconstruction lost the optimum")
    return make_solution(problem, pairs)


def brute_force_lex(problem: MatchingProblem, k: int) -> Solution:
    """Exhaustive oracle: every injective k-restricted pair set, maximum under
    compare_solutions. Factorial; refuses instances above 7x7."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if problem.n_agents > 7 or problem.n_tasks > 7:
        raise ValueError("brute force capped at 7 agents x 7 tasks")
    allowed = _k_allowed(problem, k)
    n = problem.n_agents
    best: Solution | None = None

    def recurse(agent: int, used_tasks: set[int], pairs: list[tuple[int, int]]):
        nonlocal best
        if agent == n:
            sol = make_solution(problem, list(pairs))
            if best is None or compare_solutions(sol, best) is Ordering.A_BETTER:
                best = sol
            return
        recurse(agent + 1, used_tasks, pairs)
        for t in allowed[agent]:
            if t not in used_tasks:
                used_tasks.add(t)
                pairs.append((agent, t))
                recurse(agent + 1, used_tasks, pairs)
                pairs.pop()
                used_tasks.remove(t)

    recurse(0, set(), [])
    assert best is not None
    return best


def read_problem(text: str) -> tuple[MatchingProblem, int]:
    """Parse the plain-text cost-matrix format:

        line 1: n_agents n_tasks k
        line 2: n_tasks importances
        then n_agents lines of n_tasks costs
    """
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty problem file")
    try:
        head = [int(tok) for tok in lines[0].split()]
    except ValueError as e:
        raise ValueError(f"bad header line: {lines[0]!r}") from e
    if len(head) != 3:
        raise ValueError(f"header needs 'n_agents n_tasks k', got {lines[0]!r}")
    n_agents, n_tasks, k = head
    if len(lines) != 2 + n_agents:
        raise ValueError(f"expected {2 + n_agents} lines, got {len(lines)}")
    try:
        importance = tuple(float(tok) for tok in lines[1].split())
        cost = tuple(tuple(float(tok) for tok in ln.split()) for ln in lines[2:])
    except ValueError as e:
        raise ValueError("non-numeric entry in problem file") from e
    if len(importance) != n_tasks or any(len(row) != n_tasks for row in cost):
        raise ValueError("row width does not match declared n_tasks")
    return MatchingProblem(cost=cost, importance=importance), k
