"""Duplicate-mark rate vs observation noise, per algorithm.

Sweeps the Gaussian distance-noise factor while everyone replans from its
own noisy view. The interesting read is the gap between the nearest-opponent
baseline and the staged assignment as views start to disagree.

    python3 scripts/noise_sweep.py --n 200 --seed 2021
"""
import argparse

from pitchkit.bench import run_mark_bench
from pitchkit.marking import Algorithm
from pitchkit.scenarios import ScenarioParams

FACTORS = (0.0, 0.005, 0.01, 0.02, 0.04, 0.08)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2021)
    ap.add_argument("--stale-prob", type=float, default=0.0)
    args = ap.parse_args()

    algos = tuple(Algorithm)
    header = f"{'factor':>8} | " + " | ".join(f"{a.value:>10}" for a in algos)
    print(header)
    print("-" * len(header))
    for factor in FACTORS:
        params = ScenarioParams(
            seed=args.seed, n_scenarios=args.n, noise=(factor, args.stale_prob)
        )
        report = run_mark_bench(params, algorithms=algos)
        cells = " | ".join(
            f"{report.per_algorithm[a.value].duplicate_mark_rate:>10.3f}"
            for a in algos
        )
        print(f"{factor:>8.3f} | {cells}")

    print()
    print(f"duplicate-mark rate over {args.n} scenarios per row, "
          f"stale_prob={args.stale_prob}")


if __name__ == "__main__":
    main()
