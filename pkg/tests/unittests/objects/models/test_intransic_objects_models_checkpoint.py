import json

import numpy as np
import pytest

from src.objects.exceptions import ModelError
from src.objects.models import CHECKPOINT_VERSION
from src.objects.models import fit_naive
from src.objects.models import init_params
from src.objects.models import load_model
from src.objects.models import save_model
from tests.unittests.helpers import toy_game_dataset


@pytest.mark.parametrize("kind", ["bt", "bci", "bcd", "general"])
def test_checkpoint_preserves_predictions(tmp_path, kind):
    dataset = toy_game_dataset()
    model = init_params(kind, dataset.players, 3, scale=1.0, seed=9)
    model.observed = frozenset({0, 1, 2, 3})
    path = tmp_path / "model.json"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.kind == model.kind
    assert loaded.players == model.players
    assert loaded.observed == model.observed
    a, b, _, _ = dataset.arrays
    np.testing.assert_array_equal(loaded.win_probabilities(a, b), model.win_probabilities(a, b))


def test_checkpoint_of_naive_model_keeps_counts(tmp_path):
    model = fit_naive(toy_game_dataset())
    path = tmp_path / "naive.json"
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.params.evidence.records == model.params.evidence.records
    assert loaded.win_probability(0, 1) == model.win_probability(0, 1)


def test_checkpoint_is_self_describing(tmp_path):
    path = tmp_path / "model.json"
    save_model(init_params("general", toy_game_dataset().players, 2, seed=0), path)
    data = json.loads(path.read_text())
    assert data["version"] == CHECKPOINT_VERSION
    assert data["kind"] == "general"
    assert data["dim"] == 2
    assert data["players"] == ["1", "2", "3", "4", "5"]
    assert data["params"]["embed"]["shape"] == [5, 2]


def test_load_model_rejects_other_versions(tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"version": "something-else"}))
    with pytest.raises(ModelError):
        load_model(path)
