import pytest

from src.objects.dataset import AggregatedMatchup
from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples
from src.objects.dataset import holdout_split
from src.objects.dataset import split_folds
from src.objects.exceptions import DatasetError
from tests.unittests.helpers import toy_game_dataset


def test_split_folds_spreads_identical_outcomes():
    dataset = from_tuples(PlayerTable(["a", "b"]), [(0, 1, 3, 0)])
    for _, test in split_folds(dataset, 3, seed=4):
        assert test.records == (AggregatedMatchup(0, 1, 1, 0),)


def test_split_folds_partitions_outcomes_exactly():
    dataset = toy_game_dataset()
    folds = split_folds(dataset, 3, seed=11)
    assert [test.total_outcomes for _, test in folds] == [32, 32, 32]
    for train, test in folds:
        assert train.total_outcomes + test.total_outcomes == 96
    for a, b in [(0, 1), (0, 2), (3, 4)]:
        assert sum(sum(test.counts(a, b) or (0, 0)) for _, test in folds) == sum(dataset.counts(a, b))


def test_split_folds_is_deterministic_given_seed():
    dataset = toy_game_dataset()
    assert split_folds(dataset, 4, seed=5) == split_folds(dataset, 4, seed=5)
    assert split_folds(dataset, 4, seed=5) != split_folds(dataset, 4, seed=6)


def test_split_folds_names_folds():
    train, test = split_folds(toy_game_dataset(), 3, seed=0)[1]
    assert train.name == "toy_game/fold1/train"
    assert test.name == "toy_game/fold1/test"


@pytest.mark.parametrize("k", [1, 4])
def test_split_folds_rejects_infeasible_fold_counts(k):
    dataset = from_tuples(PlayerTable(["a", "b"]), [(0, 1, 2, 1)])
    with pytest.raises(DatasetError):
        split_folds(dataset, k, seed=0)


def test_split_folds_rejects_empty_dataset():
    with pytest.raises(DatasetError):
        split_folds(from_tuples(PlayerTable(["a", "b"]), []), 3, seed=0)


def test_holdout_split_conserves_outcomes():
    remaining, held_out = holdout_split(toy_game_dataset(), 0.1, seed=3)
    assert held_out.total_outcomes == 9
    assert remaining.total_outcomes == 87


def test_holdout_split_with_zero_fraction_holds_nothing_out():
    dataset = toy_game_dataset()
    remaining, held_out = holdout_split(dataset, 0.0, seed=3)
    assert remaining == dataset
    assert held_out.total_outcomes == 0
