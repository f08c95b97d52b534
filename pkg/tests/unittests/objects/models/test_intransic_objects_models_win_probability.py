import numpy as np
import pytest

from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples
from src.objects.models import MatchupModel
from src.objects.models import fit_naive
from src.objects.models import naive_probability
from src.objects.models import predict_a_wins
from src.objects.models import predict_winner
from src.objects.models import smoothed_probability
from src.objects.models import win_probability
from tests.unittests.objects.models.models_base_test import ModelsBaseTest


class TestWinProbability(ModelsBaseTest):
    def test_logistic_examples(self):
        assert win_probability(self.bt_model([0.0, 0.0]), 0, 1) == 0.5
        assert win_probability(self.bt_model([np.log(3), 0.0]), 0, 1) == pytest.approx(0.75, abs=1e-15)

    def test_saturation_does_not_overflow(self):
        for model, a, b in [(self.bt_model([-1000.0, 0.0]), 0, 1), (self.bt_model([0.0, -1000.0]), 1, 0)]:
            probability = win_probability(model, a, b)
            assert not np.isnan(probability)
            assert 0.0 <= probability <= 1e-300
        assert win_probability(self.bt_model([1000.0, 0.0]), 0, 1) == 1.0

    def test_probabilities_are_exact_complements(self):
        for kind in ("bt", "bci", "bcd", "general"):
            model = self.random_model(kind, dim=2)
            for a in range(6):
                for b in range(6):
                    assert win_probability(model, a, b) + win_probability(model, b, a) == 1.0

    def test_vectorized_probabilities_match(self):
        model = self.random_model("general", dim=3)
        model.observed = frozenset({0, 1, 2, 3})
        a = np.array([0, 3, 4, 2, 1])
        b = np.array([1, 0, 1, 2, 3])
        expected = [model.win_probability(int(x), int(y)) for x, y in zip(a, b)]
        np.testing.assert_allclose(model.win_probabilities(a, b), expected, rtol=0, atol=1e-15)

    def test_unobserved_player_gets_even_odds(self):
        model = self.bt_model([3.0, 0.0, -2.0])
        model.observed = frozenset({0, 1})
        assert model.win_probability(0, 2) == 0.5
        assert model.win_probability(0, 1) > 0.9

    def test_predict_winner_follows_the_sign(self):
        assert predict_winner(self.bt_model([2.3, 0.0]), 0, 1, seed=0) == 0
        assert predict_winner(self.bt_model([-0.1, 0.0]), 0, 1, seed=0) == 1

    def test_predict_winner_tie_is_seeded(self):
        model = self.bt_model([0.0] * 12)
        for a, b in [(0, 1), (4, 9), (11, 3)]:
            assert predict_winner(model, a, b, seed=7) == predict_winner(model, a, b, seed=7)
            assert predict_winner(model, a, b, seed=7) == predict_winner(model, b, a, seed=7)
        winners = {predict_winner(model, 0, 1, seed=seed) for seed in range(40)}
        assert winners == {0, 1}

    def test_predict_a_wins_matches_predict_winner(self):
        model = self.bt_model([0.0, 0.0, 1.0, -1.0])
        a = np.array([0, 2, 3, 1])
        b = np.array([1, 0, 2, 3])
        expected = [predict_winner(model, int(x), int(y), seed=5) == x for x, y in zip(a, b)]
        assert predict_a_wins(model, a, b, seed=5).tolist() == expected


class TestNaiveProbability(ModelsBaseTest):
    def setUp(self):
        super().setUp()
        self.train = from_tuples(PlayerTable(["a", "b", "c", "d"]), [(0, 1, 10, 5), (2, 3, 4, 4)])

    def test_smoothed_examples(self):
        assert naive_probability(self.train, 0, 1) == pytest.approx(11 / 17)
        assert naive_probability(self.train, 1, 0) == pytest.approx(6 / 17)
        assert naive_probability(self.train, 0, 2) == 0.5
        assert smoothed_probability(0, 0) == 0.5

    def test_naive_model_is_a_matchup_model(self):
        model = fit_naive(self.train)
        assert isinstance(model, MatchupModel)
        assert model.win_probability(0, 1) == pytest.approx(11 / 17)
        assert model.win_probability(2, 3) == 0.5
        assert model.win_probability(0, 3) == 0.5
        assert model.matchup_value(0, 1) == pytest.approx(np.log(11 / 6))
