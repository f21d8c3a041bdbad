"""Command-line entry points.

Subcommands:
  gen-scenarios   write deterministic snapshots to a .jsonl file
  mark-bench      decentralized marking benchmark across algorithms
  dribble-bench   dribble search benchmark, optionally with MAD/predictor
  extract-pass    turn a game log into a labeled feature CSV
  predict         forward-pass utility for a weights file (+ golden check)
  dribble-gen     dump candidates/chains for one state as JSON lines
  solve           run an assignment solver on a plain-text cost matrix

Exit codes: 0 on success, 2 on input/format errors.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import assign, bench, dribble, passdata, predictor
from .io import read_snapshots, write_snapshots
from .marking import Algorithm
from .scenarios import (
    Placement,
    ScenarioParams,
    gen_blocked_scenario,
    gen_dribble_scenario,
    gen_scenario,
)
from .world import OURS, THEIRS, Vec2


def _params(args) -> ScenarioParams:
    return ScenarioParams(
        seed=args.seed,
        n_scenarios=args.n,
        noise=(args.noise_factor, args.stale_prob),
        placement=Placement(args.placement),
    )


def _add_common(p: argparse.ArgumentParser, *, noise: bool = True) -> None:
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--placement", choices=[pl.value for pl in Placement],
                   default=Placement.DEFENSIVE_THIRD.value)
    if noise:
        p.add_argument("--noise-factor", type=float, default=0.0)
        p.add_argument("--stale-prob", type=float, default=0.0)


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen_scenarios(args) -> int:
    params = ScenarioParams(seed=args.seed, n_scenarios=args.n,
                            placement=Placement(args.placement))
    gen = gen_dribble_scenario if args.kind == "dribble" else gen_scenario
    snaps = (gen(params, i) for i in range(args.n))
    with open(args.out, "w") as f:
        write_snapshots(f, snaps)
    print(f"wrote {args.n} scenarios to {args.out}")
    return 0


def _cmd_mark_bench(args) -> int:
    algorithms = (
        tuple(Algorithm) if args.algo == "all" else (Algorithm(args.algo),)
    )
    report = bench.run_mark_bench(
        _params(args), algorithms=algorithms, centralized=args.centralized
    )
    for name, m in sorted(report.per_algorithm.items()):
        print(
            f"{name:>10}  dup={m.duplicate_mark_rate:.3f}  "
            f"unmarked={m.unmarked_attacker_rate:.3f}  "
            f"cost={m.mean_total_cost:.2f}  sync={m.sync_rate:.3f}"
        )
    if args.json:
        _write_json(args.json, report.as_dict())
    return 0


def _cmd_dribble_bench(args) -> int:
    scenario_fn = gen_blocked_scenario if args.family == "blocked" else gen_dribble_scenario
    report = bench.run_dribble_bench(
        ScenarioParams(seed=args.seed, n_scenarios=args.n),
        use_mad=args.mad,
        weights_path=args.weights,
        scenario_fn=scenario_fn,
    )
    print(
        f"candidates={report.mean_candidates:.1f}  "
        f"best={report.mean_best_score:.3f}  "
        f"mad_gain={report.mad_gain:.3f}  "
        f"basic_none={report.basic_none_rate:.3f}  rescue={report.mad_rescue_rate:.3f}"
    )
    if args.json:
        _write_json(args.json, report.as_dict())
    return 0


def _cmd_extract_pass(args) -> int:
    config = passdata.SortingConfig(
        mode=passdata.SortMode(args.sort), kicker_first=args.kicker_first
    )
    with open(args.log) as f:
        result = passdata.read_log(f)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    rows = [passdata.extract_row(snap, event, config) for snap, event in result]
    with open(args.out, "w", newline="") as f:
        passdata.write_csv(rows, f)
    print(f"wrote {len(rows)} rows to {args.out} ({len(result.warnings)} warnings)")
    return 0


def _cmd_predict(args) -> int:
    with open(args.weights) as f:
        net = predictor.load_network(f.read())
    if args.golden:
        with open(args.golden) as f:
            golden = json.load(f)
        inputs = np.asarray(golden["inputs"], dtype=np.float64)
        expected = np.asarray(golden["outputs"], dtype=np.float64)
        worst = 0.0
        for x, want in zip(inputs, expected):
            got = predictor.forward(net, x)
            denom = np.maximum(np.abs(want), 1e-12)
            worst = max(worst, float(np.max(np.abs(got - want) / denom)))
        ok = worst <= args.rtol
        print(f"golden: {len(inputs)} vectors, max relative error {worst:.3e} "
              f"({'ok' if ok else 'FAIL'} at rtol {args.rtol:g})")
        return 0 if ok else 1
    text = args.input if args.input is not None else sys.stdin.read()
    values = [float(t) for t in text.split()]
    out = predictor.forward(net, values)
    print(" ".join(f"{v:.9g}" for v in out))
    return 0


def _parse_actor(text: str) -> tuple[str, int]:
    side, _, unum = text.partition(":")
    if side not in (OURS, THEIRS) or not unum.isdigit():
        raise ValueError(f"actor must look like 'ours:9', got {text!r}")
    return side, int(unum)


def _cmd_dribble_gen(args) -> int:
    actor = _parse_actor(args.actor)
    net = None
    if args.weights:
        with open(args.weights) as f:
            net = predictor.NetworkPredictor(predictor.load_network(f.read()))
    with open(args.state) as f:
        snapshots = [snap for snap, _ in read_snapshots(f)]
    for snap in snapshots:
        cands = dribble.basic_dribble_candidates(snap, actor)
        for c in cands:
            print(json.dumps({
                "kind": "basic", "cycle": snap.cycle,
                "target": [c.target.x, c.target.y],
                "cycles": c.dribble_cycles,
                "first_kick_speed": c.first_kick_speed,
            }, sort_keys=True))
        if args.mad:
            for chain in dribble.mad_candidates(snap, actor, net):
                action = chain.steps[0]
                param = (
                    [action.param.x, action.param.y]
                    if isinstance(action.param, Vec2)
                    else action.param
                )
                cand = chain.steps[-1]
                print(json.dumps({
                    "kind": action.kind.value, "cycle": snap.cycle,
                    "param": param,
                    "target": [cand.target.x, cand.target.y],
                    "cycles": chain.total_cycles,
                    "score": chain.score,
                }, sort_keys=True))
        best = dribble.chain_search(snap, actor, use_mad=args.mad, predictor=net)
        print(json.dumps({
            "kind": "best", "cycle": snap.cycle, "hold": best.is_hold,
            "score": best.score, "cycles": best.total_cycles,
        }, sort_keys=True))
    return 0


def _cmd_solve(args) -> int:
    with open(args.problem) as f:
        problem, k = assign.read_problem(f.read())
    if args.solver == "hungarian":
        sol = assign.hungarian(problem)
    elif args.solver == "omam":
        sol = assign.omam(problem, k)
    else:
        sol = assign.brute_force_lex(problem, k)
    _write_json(args.json, {
        "pairs": [list(p) for p in sol.pairs],
        "total_cost": sol.total_cost,
        "coverage": sol.coverage,
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pitchkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-scenarios", help="write snapshots to a .jsonl file")
    _add_common(p, noise=False)
    p.add_argument("--kind", choices=["mark", "dribble"], default="mark")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_gen_scenarios)

    p = sub.add_parser("mark-bench", help="decentralized marking benchmark")
    _add_common(p)
    p.add_argument("--algo", choices=[a.value for a in Algorithm] + ["all"], default="all")
    p.add_argument("--centralized", action="store_true",
                   help="all observers share one observation")
    p.add_argument("--json", help="write the report to this path")
    p.set_defaults(fn=_cmd_mark_bench)

    p = sub.add_parser("dribble-bench", help="dribble search benchmark")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--family", choices=["open", "blocked"], default="open")
    p.add_argument("--mad", action="store_true")
    p.add_argument("--weights", help="movement-predictor weights file")
    p.add_argument("--json", help="write the report to this path")
    p.set_defaults(fn=_cmd_dribble_bench)

    p = sub.add_parser("extract-pass", help="game log -> labeled feature CSV")
    p.add_argument("--log", required=True)
    p.add_argument("--sort", choices=[m.value for m in passdata.SortMode], default="unum")
    p.add_argument("--kicker-first", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_extract_pass)

    p = sub.add_parser("predict", help="forward pass through a weights file")
    p.add_argument("--weights", required=True)
    p.add_argument("--golden", help="golden vectors JSON to verify against")
    p.add_argument("--rtol", type=float, default=1e-5)
    p.add_argument("--input", help="whitespace-separated input vector")
    p.set_defaults(fn=_cmd_predict)

    p = sub.add_parser("dribble-gen", help="dump candidates for states in a file")
    p.add_argument("--state", required=True)
    p.add_argument("--actor", default="ours:9")
    p.add_argument("--mad", action="store_true")
    p.add_argument("--weights")
    p.set_defaults(fn=_cmd_dribble_gen)

    p = sub.add_parser("solve", help="assignment solver on a cost-matrix file")
    p.add_argument("--problem", required=True)
    p.add_argument("--solver", choices=["hungarian", "omam", "brute"], default="omam")
    p.add_argument("--json", help="write the solution to this path")
    p.set_defaults(fn=_cmd_solve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
