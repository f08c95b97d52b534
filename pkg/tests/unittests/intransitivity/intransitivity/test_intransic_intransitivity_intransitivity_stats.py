import pytest

from src.intransitivity.intransitivity import stats
from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples
from src.objects.dataset import read_dataset


def test_stats_of_the_toy_game(toy_game):
    report = stats(toy_game)
    assert report.is_intrans
    assert report.triangles == 2
    assert report.intrans_at_3 == pytest.approx(0.10)
    assert report.player_intrans_at_3 == 5
    assert report.n_players == 5
    assert report.n_outcomes == 96
    assert report.n_pairs == 8
    assert report.pair_coverage == pytest.approx(0.8)
    assert not report.truncated
    assert report.copeland == (0, 0, 2, -1, -1)


def test_stats_of_a_single_tuple():
    report = stats(from_tuples(PlayerTable(["a", "b"]), [(0, 1, 1, 0)]))
    assert (report.is_intrans, report.triangles, report.intrans_at_3) == (False, 0, 0.0)
    assert (report.player_intrans_at_3, report.n_players) == (0, 2)


def test_stats_of_an_empty_dataset():
    report = stats(from_tuples(PlayerTable([]), []))
    assert (report.is_intrans, report.triangles, report.intrans_at_3) == (False, 0, 0.0)
    assert (report.player_intrans_at_3, report.n_players) == (0, 0)
    assert report.pair_coverage == 0.0


def test_stats_of_a_transitive_dataset(dag_path):
    report = stats(read_dataset(dag_path))
    assert not report.is_intrans
    assert report.cycles_found == ()


def test_stats_to_dict_uses_labels(rps_path):
    data = stats(read_dataset(rps_path)).to_dict()
    assert data["is_intrans"] is True
    assert data["triangles"] == 1
    assert data["intrans_at_3"] == 0.5
    assert data["player_intrans_at_3"] == 3
    assert data["players_in_triangles"] == ["rock", "scissors", "paper"]
    assert data["cycles_found"] == [["rock", "scissors", "paper"]]
    assert data["copeland"] == {"rock": 0, "scissors": 0, "paper": 0}
