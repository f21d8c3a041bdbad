"""Entry points: make-movement-data and train-movement."""
from __future__ import annotations

import argparse
import sys
import tempfile

from .dataset import EPISODE_LEN, gen_log, make_movement_dataset
from .train import TrainingConfig, train_and_export


def data_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="make-movement-data",
        description="build a movement-training CSV, from a snapshot log or "
                    "from freshly generated constant-velocity episodes")
    parser.add_argument("--out", required=True, help="output CSV path")
    parser.add_argument("--from-log", help="convert this snapshot .jsonl instead "
                                           "of generating one")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--episodes", type=int, default=600)
    parser.add_argument("--cycles", type=int, default=EPISODE_LEN,
                        help="cycles per episode")
    parser.add_argument("--log", help="also keep the generated .jsonl here")
    args = parser.parse_args(argv)
    try:
        if args.from_log:
            n = make_movement_dataset(args.from_log, args.out)
        else:
            if args.log:
                with open(args.log, "w") as f:
                    gen_log(f, args.seed, args.episodes, args.cycles)
                log_path = args.log
            else:
                with tempfile.NamedTemporaryFile("w", suffix=".jsonl",
                                                 delete=False) as f:
                    gen_log(f, args.seed, args.episodes, args.cycles)
                    log_path = f.name
            n = make_movement_dataset(log_path, args.out)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {n} rows to {args.out}")
    return 0


def train_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="train-movement",
        description="train the opponent-movement model and export it as a "
                    "plain-text weights file plus a golden vector file")
    parser.add_argument("--data", required=True, help="training CSV")
    parser.add_argument("--out", required=True, help="weights file path")
    parser.add_argument("--golden", required=True, help="golden JSON path")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epochs", type=int, default=TrainingConfig.epochs)
    parser.add_argument("--hidden", default=None,
                        help="comma-separated hidden widths, e.g. 128,64,32,16")
    args = parser.parse_args(argv)
    try:
        hidden = (TrainingConfig.architecture if args.hidden is None
                  else tuple(int(w) for w in args.hidden.split(",")))
        config = TrainingConfig(
            dataset_path=args.data, output_weights_path=args.out,
            golden_path=args.golden, architecture=hidden,
            epochs=args.epochs, seed=args.seed)
        result = train_and_export(config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"trained on {result.n_train} rows, validated on {result.n_val}: "
          f"val_mae {result.val_mae:.6f} m")
    print(f"wrote {result.weights_path} and {result.golden_path}")
    return 0


if __name__ == "__main__":
    sys.exit(train_main())
