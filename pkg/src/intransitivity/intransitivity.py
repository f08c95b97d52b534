from dataclasses import dataclass
from dataclasses import field
from itertools import islice
from math import comb
from typing import Any
from typing import Iterable
from typing import Optional

import networkx as nx
from simple_logger.logger import get_logger

from src.objects.dataset import Dataset
from src.objects.dataset import PlayerTable

LOGGER = get_logger(__name__)

DEFAULT_CYCLE_CAP = 10_000

Cycle = tuple[int, ...]


class DominanceGraph:
    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        """
        Majority-dominance relation over ``n`` players; ``u -> v`` means u dominates v.

        Args:
            n (int): Player count; every id in ``range(n)`` is a node.
            edges (Iterable[tuple[int, int]]): Dominance edges. Self-loops and 2-cycles are rejected.
        """
        self.n = n
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(n))
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on player {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) leaves the player range [0, {n})")
            if self.graph.has_edge(v, u):
                raise ValueError(f"edges ({u}, {v}) and ({v}, {u}) cannot both be present")
            self.graph.add_edge(u, v)

    def __repr__(self) -> str:
        return f"DominanceGraph(n={self.n}, edges={self.graph.number_of_edges()})"

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.graph.edges())

    def dominates(self, u: int, v: int) -> bool:
        return self.graph.has_edge(u, v)

    def successors(self, u: int) -> set[int]:
        return set(self.graph.successors(u))

    def predecessors(self, u: int) -> set[int]:
        return set(self.graph.predecessors(u))

    def reversed(self) -> "DominanceGraph":
        return DominanceGraph(self.n, ((v, u) for u, v in self.graph.edges()))


def build_dominance_graph(d: Dataset) -> DominanceGraph:
    """Edge ``a -> b`` for every pair won by ``a`` in the majority; tied pairs add no edge."""
    edges = []
    for record in d.records:
        if record.n_a > record.n_b:
            edges.append((record.a, record.b))
        elif record.n_b > record.n_a:
            edges.append((record.b, record.a))
    return DominanceGraph(len(d.players), edges)


def has_cycle(g: DominanceGraph) -> bool:
    return not nx.is_directed_acyclic_graph(g.graph)


def _triangles(g: DominanceGraph) -> Iterable[tuple[int, int, int]]:
    # every directed 3-cycle is reported once, starting at its smallest vertex
    for u, v in g.graph.edges():
        if v < u:
            continue
        for w in g.graph.successors(v):
            if w > u and g.graph.has_edge(w, u):
                yield u, v, w


def intrans_at_3(g: DominanceGraph) -> tuple[int, float]:
    """
    Directed 3-cycles and their share of the ``2 * C(n, 3)`` oriented triples.

    The denominator ignores how many pairs were observed, so sparse data reads as
    less intransitive.

    Returns:
        tuple[int, float]: ``(triangles, ratio)``; the ratio is 0 below three players.
    """
    triangles = sum(1 for _ in _triangles(g))
    if g.n < 3:
        return triangles, 0.0
    return triangles, triangles / (2 * comb(g.n, 3))


def players_in_triangles(g: DominanceGraph) -> set[int]:
    return {player for triangle in _triangles(g) for player in triangle}


def canonical_cycle(cycle: Iterable[int]) -> Cycle:
    """Rotate a vertex sequence so its smallest vertex leads."""
    cycle = tuple(cycle)
    start = cycle.index(min(cycle))
    return cycle[start:] + cycle[:start]


def enumerate_cycles(g: DominanceGraph, cap: Optional[int] = DEFAULT_CYCLE_CAP) -> tuple[list[Cycle], bool]:
    """
    Elementary directed cycles by Johnson's algorithm, stopped after ``cap`` cycles.

    Args:
        g (DominanceGraph): The dominance graph.
        cap (Optional[int]): Maximum number of cycles; None enumerates all of them.

    Returns:
        tuple[list[Cycle], bool]: Rotation-canonical cycles sorted by length then
        vertex sequence, and whether the cap stopped the enumeration.
    """
    if cap is not None and cap < 0:
        raise ValueError(f"cycle cap must be non-negative, got {cap}")
    found = nx.simple_cycles(g.graph)
    if cap is not None:
        found = islice(found, cap + 1)
    cycles = [canonical_cycle(cycle) for cycle in found]

    truncated = cap is not None and len(cycles) > cap
    if truncated:
        cycles = cycles[:cap]
        LOGGER.warning(f"Cycle enumeration stopped at the cap of {cap} cycles")
    return sorted(cycles, key=lambda cycle: (len(cycle), cycle)), truncated


def copeland_scores(g: DominanceGraph) -> list[int]:
    """Dominance out-degree minus in-degree of every player."""
    return [g.graph.out_degree(player) - g.graph.in_degree(player) for player in range(g.n)]


@dataclass(frozen=True)
class IntransReport:
    dataset: str
    players: PlayerTable
    is_intrans: bool
    triangles: int
    intrans_at_3: float
    players_in_triangles: tuple[int, ...]
    cycles_found: tuple[Cycle, ...]
    truncated: bool
    n_outcomes: int = 0
    n_pairs: int = 0
    copeland: tuple[int, ...] = field(default_factory=tuple)

    @property
    def n_players(self) -> int:
        return len(self.players)

    @property
    def player_intrans_at_3(self) -> int:
        return len(self.players_in_triangles)

    @property
    def pair_coverage(self) -> float:
        possible = comb(self.n_players, 2)
        return self.n_pairs / possible if possible else 0.0

    def to_dict(self) -> dict[str, Any]:
        labels = self.players.labels
        return {
            "dataset": self.dataset,
            "n_players": self.n_players,
            "n_outcomes": self.n_outcomes,
            "n_pairs": self.n_pairs,
            "pair_coverage": self.pair_coverage,
            "is_intrans": self.is_intrans,
            "triangles": self.triangles,
            "intrans_at_3": self.intrans_at_3,
            "player_intrans_at_3": self.player_intrans_at_3,
            "players_in_triangles": [labels[player] for player in self.players_in_triangles],
            "cycles_found": [[labels[player] for player in cycle] for cycle in self.cycles_found],
            "truncated": self.truncated,
            "copeland": {labels[player]: score for player, score in enumerate(self.copeland)},
        }


def stats(d: Dataset, cap: Optional[int] = DEFAULT_CYCLE_CAP) -> IntransReport:
    """
    Intransitivity summary of a dataset.

    Args:
        d (Dataset): The collapsed dataset.
        cap (Optional[int]): Cycle enumeration cap; None for no cap.

    Returns:
        IntransReport: Cycle existence, 3-cycle statistics, capped cycle list and dataset summary.
    """
    g = build_dominance_graph(d)
    triangles, ratio = intrans_at_3(g)
    cycles, truncated = enumerate_cycles(g, cap)
    report = IntransReport(
        dataset=d.name,
        players=d.players,
        is_intrans=has_cycle(g),
        triangles=triangles,
        intrans_at_3=ratio,
        players_in_triangles=tuple(sorted(players_in_triangles(g))),
        cycles_found=tuple(cycles),
        truncated=truncated,
        n_outcomes=d.total_outcomes,
        n_pairs=len(d),
        copeland=tuple(copeland_scores(g)),
    )
    LOGGER.info(
        f"{d.name}: is_intrans={report.is_intrans} triangles={triangles} "
        f"intrans@3={ratio:.4f} players={report.player_intrans_at_3}/{report.n_players}",
    )
    return report
