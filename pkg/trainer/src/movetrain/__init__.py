"""Training side of the opponent-movement predictor.

Builds datasets from snapshot logs, trains the 9-input MLP, and exports it
in the plain-text weight format the inference engine loads, together with a
golden vector file for cross-implementation checks.
"""
from .dataset import (
    COLUMNS,
    N_INPUTS,
    NEAR_BALL_RADIUS,
    gen_log,
    load_dataset,
    make_movement_dataset,
    rows_from_log,
    rows_from_pair,
)
from .train import (
    MIN_ROWS,
    N_GOLDEN,
    N_OUTPUTS,
    TrainingConfig,
    TrainResult,
    build_model,
    export_layers,
    train_and_export,
)
from .weights_io import MAGIC, DenseLayer, forward, load_weights, save_weights

__all__ = [
    "COLUMNS", "N_INPUTS", "NEAR_BALL_RADIUS", "gen_log", "load_dataset",
    "make_movement_dataset", "rows_from_log", "rows_from_pair",
    "MIN_ROWS", "N_GOLDEN", "N_OUTPUTS", "TrainingConfig", "TrainResult",
    "build_model", "export_layers", "train_and_export",
    "MAGIC", "DenseLayer", "forward", "load_weights", "save_weights",
]
