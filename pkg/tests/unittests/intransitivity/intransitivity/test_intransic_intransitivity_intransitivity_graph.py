import numpy as np
import pytest

from src.intransitivity.intransitivity import DominanceGraph
from src.intransitivity.intransitivity import build_dominance_graph
from src.intransitivity.intransitivity import enumerate_cycles
from src.intransitivity.intransitivity import has_cycle
from src.intransitivity.intransitivity import intrans_at_3
from src.intransitivity.intransitivity import players_in_triangles
from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples
from tests.unittests.helpers import brute_force_cycles
from tests.unittests.helpers import brute_force_has_cycle
from tests.unittests.helpers import brute_force_triangles
from tests.unittests.helpers import rps_dataset
from tests.unittests.helpers import toy_game_dataset

RPS = DominanceGraph(3, [(0, 1), (1, 2), (2, 0)])
CHAIN = DominanceGraph(3, [(0, 1), (1, 2), (0, 2)])


def random_tournament_subgraph(rng, n):
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            draw = rng.random()
            if draw < 0.4:
                edges.add((u, v))
            elif draw < 0.8:
                edges.add((v, u))
    return edges


def test_majority_rule_and_ties():
    players = PlayerTable(["a", "b", "c"])
    graph = build_dominance_graph(from_tuples(players, [(0, 1, 10, 5), (1, 2, 7, 7), (0, 2, 1, 3)]))
    assert graph.edges == frozenset({(0, 1), (2, 0)})


def test_toy_game_edges():
    graph = build_dominance_graph(toy_game_dataset())
    one, two, three, four, five = range(5)
    assert graph.edges == frozenset({
        (one, two),
        (three, one),
        (one, four),
        (five, one),
        (two, three),
        (three, four),
        (three, five),
        (four, five),
    })


def test_graph_rejects_two_cycles_and_self_loops():
    with pytest.raises(ValueError):
        DominanceGraph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        DominanceGraph(2, [(1, 1)])


def test_has_cycle_examples():
    assert not has_cycle(CHAIN)
    assert has_cycle(RPS)
    assert has_cycle(build_dominance_graph(toy_game_dataset()))


def test_intrans_at_3_examples():
    assert intrans_at_3(RPS) == (1, 0.5)
    triangles, ratio = intrans_at_3(build_dominance_graph(toy_game_dataset()))
    assert triangles == 2
    assert ratio == pytest.approx(0.10)
    assert intrans_at_3(DominanceGraph(2, [(0, 1)])) == (0, 0.0)


def test_players_in_triangles_examples():
    assert players_in_triangles(RPS) == {0, 1, 2}
    assert players_in_triangles(build_dominance_graph(toy_game_dataset())) == {0, 1, 2, 3, 4}
    assert players_in_triangles(CHAIN) == set()


def test_enumerate_cycles_examples():
    assert enumerate_cycles(RPS, cap=10) == ([(0, 1, 2)], False)
    assert enumerate_cycles(CHAIN, cap=10) == ([], False)

    cycles, truncated = enumerate_cycles(build_dominance_graph(toy_game_dataset()), cap=100)
    assert not truncated
    assert (0, 1, 2) in cycles
    assert (0, 3, 4) in cycles
    assert (0, 1, 2, 3, 4) in cycles
    assert cycles == sorted(cycles, key=lambda cycle: (len(cycle), cycle))


def test_enumerate_cycles_cap():
    graph = build_dominance_graph(toy_game_dataset())
    everything, _ = enumerate_cycles(graph, cap=None)
    assert len(everything) > 2
    capped, truncated = enumerate_cycles(graph, cap=2)
    assert truncated
    assert len(capped) == 2
    assert set(capped) <= set(everything)
    assert enumerate_cycles(graph, cap=len(everything)) == (everything, False)
    assert enumerate_cycles(graph, cap=0) == ([], True)


def test_oracle_equivalence_on_random_graphs():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        edges = random_tournament_subgraph(rng, n)
        graph = DominanceGraph(n, edges)
        triangles = brute_force_triangles(n, edges)
        assert intrans_at_3(graph)[0] == len(triangles)
        assert players_in_triangles(graph) == {player for triangle in triangles for player in triangle}
        assert has_cycle(graph) == brute_force_has_cycle(n, edges)


def test_cycle_enumeration_matches_brute_force():
    rng = np.random.default_rng(77)
    for _ in range(60):
        n = int(rng.integers(1, 7))
        edges = random_tournament_subgraph(rng, n)
        cycles, truncated = enumerate_cycles(DominanceGraph(n, edges), cap=None)
        assert not truncated
        assert set(cycles) == brute_force_cycles(n, edges)
        assert len(cycles) == len(set(cycles))


def test_orientation_reversal_invariance():
    rng = np.random.default_rng(5)
    for _ in range(50):
        n = int(rng.integers(3, 8))
        graph = DominanceGraph(n, random_tournament_subgraph(rng, n))
        assert intrans_at_3(graph.reversed()) == intrans_at_3(graph)
        assert players_in_triangles(graph.reversed()) == players_in_triangles(graph)


def test_rock_paper_scissors_dataset():
    graph = build_dominance_graph(rps_dataset())
    assert intrans_at_3(graph) == (1, 0.5)
