from pathlib import Path

import pytest

from src.objects.dataset import Dataset
from src.objects.dataset import read_dataset
from tests.unittests.helpers import rps_dataset

TEST_RESOURCES_DIR_RELATIVE_PATH = "resources"

TOY_GAME_FILE_NAME = "toy_game.csv"
RPS_FILE_NAME = "rps.csv"
DAG_FILE_NAME = "dag.csv"
RAW_THREE_COLUMNS_FILE_NAME = "raw_three_columns.csv"
TRAIN_CONFIG_FILE_NAME = "train_config.json"


@pytest.fixture
def test_resources_dir() -> Path:
    return Path(__file__).resolve().parent / TEST_RESOURCES_DIR_RELATIVE_PATH


@pytest.fixture
def toy_game_path(test_resources_dir):
    return test_resources_dir / TOY_GAME_FILE_NAME


@pytest.fixture
def rps_path(test_resources_dir):
    return test_resources_dir / RPS_FILE_NAME


@pytest.fixture
def dag_path(test_resources_dir):
    return test_resources_dir / DAG_FILE_NAME


@pytest.fixture
def raw_three_columns_path(test_resources_dir):
    return test_resources_dir / RAW_THREE_COLUMNS_FILE_NAME


@pytest.fixture
def train_config_path(test_resources_dir):
    return test_resources_dir / TRAIN_CONFIG_FILE_NAME


@pytest.fixture
def toy_game(toy_game_path) -> Dataset:
    return read_dataset(toy_game_path)


@pytest.fixture
def rps() -> Dataset:
    return rps_dataset()
