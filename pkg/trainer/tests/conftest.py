import pytest

DATASET_SEED = 20210622
TRAIN_SEED = 1


@pytest.fixture(scope="session")
def dataset_csv(tmp_path_factory) -> str:
    """Synthetic constant-velocity dataset, generated once per session."""
    from movetrain import gen_log, make_movement_dataset

    root = tmp_path_factory.mktemp("movement")
    log = root / "episodes.jsonl"
    with open(log, "w") as f:
        gen_log(f, seed=DATASET_SEED, n_episodes=600)
    out = root / "movement.csv"
    make_movement_dataset(str(log), str(out))
    return str(out)


@pytest.fixture(scope="session")
def trained(dataset_csv, tmp_path_factory):
    """One full training run shared by every test that needs the artifacts."""
    from movetrain import TrainingConfig, train_and_export

    root = tmp_path_factory.mktemp("trained")
    config = TrainingConfig(
        dataset_path=dataset_csv,
        output_weights_path=str(root / "movement_weights.txt"),
        golden_path=str(root / "movement_golden.json"),
        seed=TRAIN_SEED,
    )
    return train_and_export(config)
