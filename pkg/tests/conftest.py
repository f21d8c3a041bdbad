import pathlib

import pytest

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def minimal_weights_text() -> str:
    return (FIXTURES / "minimal_weights.txt").read_text()


@pytest.fixture(scope="session")
def golden_weights_text() -> str:
    return (FIXTURES / "golden_weights.txt").read_text()
