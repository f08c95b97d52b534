from itertools import product

import numpy as np
import pytest

from src.evaluation.accuracy import test_accuracy as average_accuracy
from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples
from src.objects.exceptions import EvaluationError
from src.objects.models import BTParams
from src.objects.models import MatchupModel
from src.objects.models import fit_naive
from tests.unittests.helpers import toy_game_dataset


class FixedPredictor:
    """Predicts the first player of every pair listed in ``winners``."""

    def __init__(self, winners):
        self.winners = winners

    def win_probability(self, a, b):
        if (a, b) in self.winners:
            return 0.9
        if (b, a) in self.winners:
            return 0.1
        return 0.5


def test_majority_predictor_on_the_toy_game():
    dataset = toy_game_dataset()
    assert average_accuracy(fit_naive(dataset), dataset, seed=0) == pytest.approx(64 / 96)
    assert average_accuracy(fit_naive(dataset), dataset, seed=0) == pytest.approx(0.6667, abs=1e-4)


def test_transitive_predictor_on_the_toy_game():
    dataset = toy_game_dataset()
    transitive = MatchupModel("bt", dataset.players, BTParams(gamma=np.array([5.0, 4.0, 3.0, 2.0, 1.0])))
    assert average_accuracy(transitive, dataset, seed=0) == pytest.approx(62 / 96)
    assert average_accuracy(transitive, dataset, seed=0) == pytest.approx(0.6458, abs=1e-4)


def test_single_tuple_ratio():
    dataset = from_tuples(PlayerTable(["a", "b"]), [(0, 1, 10, 5)])
    assert average_accuracy(FixedPredictor({(0, 1)}), dataset, seed=0) == pytest.approx(10 / 15)
    assert average_accuracy(FixedPredictor({(1, 0)}), dataset, seed=0) == pytest.approx(5 / 15)


def test_empty_test_set_is_rejected():
    with pytest.raises(EvaluationError):
        average_accuracy(FixedPredictor(set()), from_tuples(PlayerTable(["a", "b"]), []), seed=0)


def test_majority_is_the_best_deterministic_predictor():
    rng = np.random.default_rng(8)
    players = PlayerTable([f"p{index}" for index in range(6)])
    pairs = [(a, b) for a in range(6) for b in range(a + 1, 6)]
    for _ in range(5):
        chosen = [pairs[index] for index in rng.choice(len(pairs), size=int(rng.integers(1, 9)), replace=False)]
        dataset = from_tuples(players, [(a, b, int(rng.integers(0, 6)), int(rng.integers(1, 6))) for a, b in chosen])
        best = max(
            average_accuracy(
                FixedPredictor({(a, b) if first else (b, a) for (a, b), first in zip(chosen, assignment)}),
                dataset,
                seed=0,
            )
            for assignment in product([True, False], repeat=len(chosen))
        )
        majority = FixedPredictor(
            {(record.a, record.b) if record.n_a >= record.n_b else (record.b, record.a) for record in dataset.records},
        )
        assert average_accuracy(majority, dataset, seed=0) == pytest.approx(best)


def test_predictor_and_anti_predictor_are_complementary():
    dataset = toy_game_dataset()
    winners = {(0, 1), (2, 0), (3, 0), (1, 2), (2, 3), (4, 2), (3, 4), (0, 4)}
    anti = {(b, a) for a, b in winners}
    total = average_accuracy(FixedPredictor(winners), dataset, seed=1) + average_accuracy(
        FixedPredictor(anti),
        dataset,
        seed=1,
    )
    assert total == pytest.approx(1.0)


def test_accuracy_is_bounded():
    dataset = toy_game_dataset()
    for seed in range(10):
        accuracy = average_accuracy(FixedPredictor(set()), dataset, seed=seed)
        assert 0.0 <= accuracy <= 1.0
