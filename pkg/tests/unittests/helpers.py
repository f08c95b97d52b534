from itertools import combinations
from itertools import permutations

from src.objects.dataset import Dataset
from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples

TOY_GAME_ROWS = [
    (0, 1, 10, 5),
    (0, 2, 1, 2),
    (0, 3, 10, 5),
    (0, 4, 1, 2),
    (1, 2, 10, 5),
    (2, 3, 10, 5),
    (2, 4, 10, 5),
    (3, 4, 10, 5),
]


def rps_dataset(per_pair: int = 100) -> Dataset:
    """rock (0) beats scissors (2), scissors beats paper (1), paper beats rock."""
    return from_tuples(
        PlayerTable(["rock", "paper", "scissors"]),
        [(0, 2, per_pair, 0), (2, 1, per_pair, 0), (1, 0, per_pair, 0)],
        name="rps",
    )


def toy_game_dataset() -> Dataset:
    return from_tuples(PlayerTable(["1", "2", "3", "4", "5"]), TOY_GAME_ROWS, name="toy_game")


def brute_force_triangles(n: int, edges: set[tuple[int, int]]) -> set[frozenset[int]]:
    triangles = set()
    for triple in combinations(range(n), 3):
        for u, v, w in permutations(triple):
            if (u, v) in edges and (v, w) in edges and (w, u) in edges:
                triangles.add(frozenset(triple))
    return triangles


def brute_force_cycles(n: int, edges: set[tuple[int, int]]) -> set[tuple[int, ...]]:
    """Every elementary cycle, rotated so its smallest vertex leads."""
    cycles = set()
    for length in range(2, n + 1):
        for vertices in permutations(range(n), length):
            if vertices[0] != min(vertices):
                continue
            if all((vertices[i], vertices[(i + 1) % length]) in edges for i in range(length)):
                cycles.add(vertices)
    return cycles


def brute_force_has_cycle(n: int, edges: set[tuple[int, int]]) -> bool:
    state = [0] * n

    def visit(node: int) -> bool:
        state[node] = 1
        for u, v in edges:
            if u == node and (state[v] == 1 or (state[v] == 0 and visit(v))):
                return True
        state[node] = 2
        return False

    return any(state[node] == 0 and visit(node) for node in range(n))
