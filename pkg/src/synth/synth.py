from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from simple_logger.logger import get_logger

from src.intransitivity.intransitivity import DominanceGraph
from src.intransitivity.intransitivity import intrans_at_3
from src.objects.dataset import PlayerTable
from src.objects.dataset import RawOutcome
from src.objects.dataset import write_raw_outcomes
from src.objects.exceptions import SynthSpecError

LOGGER = get_logger(__name__)

LABEL_PREFIX = "p"


@dataclass(frozen=True)
class SynthSpec:
    """
    Planted-intransitivity game.

    ``cycles`` lists the sizes of the cyclic cliques. Cliques are disjoint unless
    ``shared_pivot`` is set, in which case player 0 belongs to every clique.
    """

    cycles: tuple[int, ...] = (3,)
    per_pair: int = 100
    noise: float = 0.0
    seed: int = 0
    shared_pivot: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycles", tuple(int(size) for size in self.cycles))
        if not self.cycles:
            raise SynthSpecError("at least one clique size is required")
        if any(size < 1 for size in self.cycles):
            raise SynthSpecError(f"clique sizes must be positive, got {list(self.cycles)}")
        if self.shared_pivot and any(size < 2 for size in self.cycles):
            raise SynthSpecError("cliques sharing a pivot need at least 2 players each")
        if self.per_pair < 1:
            raise SynthSpecError(f"per_pair must be at least 1, got {self.per_pair}")
        if not 0.0 <= self.noise < 0.5:
            raise SynthSpecError(f"noise must lie in [0, 0.5), got {self.noise}")
        if self.seed < 0:
            raise SynthSpecError(f"seed must be non-negative, got {self.seed}")

    @property
    def n_players(self) -> int:
        if self.shared_pivot:
            return 1 + sum(size - 1 for size in self.cycles)
        return sum(self.cycles)


@dataclass(frozen=True)
class SynthGame:
    spec: SynthSpec
    players: PlayerTable
    planted: DominanceGraph
    outcomes: tuple[RawOutcome, ...]

    @property
    def triangles(self) -> int:
        """Directed 3-cycles of the planted dominance graph."""
        return intrans_at_3(self.planted)[0]


def cyclic_clique_edges(members: list[int]) -> list[tuple[int, int]]:
    """
    Rotational tournament: the member at position i beats the next ``(k - 1) // 2``
    members around the circle; for even k the lower position wins the antipodal pair.
    """
    size = len(members)
    edges = []
    for position in range(size):
        for offset in range(1, (size - 1) // 2 + 1):
            edges.append((members[position], members[(position + offset) % size]))
    if size % 2 == 0:
        half = size // 2
        edges.extend((members[position], members[position + half]) for position in range(half))
    return edges


def _cliques(spec: SynthSpec) -> list[list[int]]:
    cliques = []
    next_id = 1 if spec.shared_pivot else 0
    for size in spec.cycles:
        if spec.shared_pivot:
            cliques.append([0] + list(range(next_id, next_id + size - 1)))
            next_id += size - 1
        else:
            cliques.append(list(range(next_id, next_id + size)))
            next_id += size
    return cliques


def planted_graph(spec: SynthSpec) -> DominanceGraph:
    """
    Dominance structure of the game: cyclic cliques, and every player of an earlier clique
    beating every player of a later one.

    With a shared pivot, a cross edge ``x -> y`` with ``pivot -> x`` and ``y -> pivot`` would
    close a triangle through the pivot, so that pair is never played.
    """
    cliques = _cliques(spec)
    edges = [edge for members in cliques for edge in cyclic_clique_edges(members)]
    intra = set(edges)
    pivot = 0
    for index, earlier in enumerate(cliques):
        for later in cliques[index + 1 :]:
            for x in earlier:
                for y in later:
                    if x == y or (x, y) in intra or (y, x) in intra:
                        continue
                    if spec.shared_pivot and (pivot, x) in intra and (y, pivot) in intra:
                        continue
                    edges.append((x, y))
    return DominanceGraph(spec.n_players, edges)


def generate(spec: SynthSpec) -> SynthGame:
    """
    Plays ``spec.per_pair`` matches along every planted edge; the dominant player of an
    edge loses each match independently with probability ``spec.noise``.
    """
    graph = planted_graph(spec)
    rng = np.random.default_rng(spec.seed)
    outcomes = []
    for winner, loser in sorted(graph.edges):
        upsets = rng.random(spec.per_pair) < spec.noise
        outcomes.extend(RawOutcome(a=winner, b=loser, a_won=not upset) for upset in upsets)
    players = PlayerTable([f"{LABEL_PREFIX}{player}" for player in range(spec.n_players)])
    game = SynthGame(spec=spec, players=players, planted=graph, outcomes=tuple(outcomes))
    LOGGER.info(
        f"Generated {len(outcomes)} outcomes over {spec.n_players} players, "
        f"{game.triangles} planted triangles",
    )
    return game


def write_game(game: SynthGame, path: Union[str, Path]) -> None:
    write_raw_outcomes(game.outcomes, game.players, path)
