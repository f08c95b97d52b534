import csv
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from pathlib import Path
from typing import BinaryIO
from typing import Iterable
from typing import Iterator
from typing import Optional
from typing import Sequence
from typing import Union

import numpy as np
from simple_logger.logger import get_logger

from src.objects.exceptions import DatasetError
from src.objects.exceptions import DatasetFormatError
from src.objects.exceptions import UnknownPlayerError

LOGGER = get_logger(__name__)

RAW_HEADERS = {("winner", "loser"), ("a", "b", "a_won")}
COLLAPSED_HEADER = ("a", "b", "n_a", "n_b")
PLAYER_TABLE_HEADER = ("id", "label")
PLAYER_TABLE_SUFFIX = ".players.csv"

PathLike = Union[str, Path]


@dataclass(frozen=True)
class Player:
    id: int
    label: str


class PlayerTable:
    def __init__(self, labels: Sequence[str]) -> None:
        """
        Dense player index. Player ``i`` carries ``labels[i]``.

        Args:
            labels (Sequence[str]): Unique player labels, in id order.
        """
        self.labels: tuple[str, ...] = tuple(str(label) for label in labels)
        self._ids = {label: idx for idx, label in enumerate(self.labels)}
        if len(self._ids) != len(self.labels):
            duplicates = sorted({label for label in self.labels if self.labels.count(label) > 1})
            raise DatasetError(f"player labels must be unique, duplicated: {duplicates}")

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[Player]:
        return (Player(id=idx, label=label) for idx, label in enumerate(self.labels))

    def __contains__(self, player_id: object) -> bool:
        return isinstance(player_id, (int, np.integer)) and 0 <= int(player_id) < len(self.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlayerTable) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"PlayerTable({len(self.labels)} players)"

    def player(self, player_id: int) -> Player:
        self.check(player_id)
        return Player(id=int(player_id), label=self.labels[player_id])

    def id_of(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise UnknownPlayerError(f'unknown player label "{label}"') from None

    def check(self, player_id: int, row: Optional[int] = None) -> None:
        if player_id not in self:
            raise UnknownPlayerError(f"unknown player id {player_id} (table has {len(self)} players)", row=row)


@dataclass(frozen=True)
class RawOutcome:
    a: int
    b: int
    a_won: bool


@dataclass(frozen=True)
class AggregatedMatchup:
    """Collapsed record of every outcome between ``a`` and ``b`` (``a < b``)."""

    a: int
    b: int
    n_a: int
    n_b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise DatasetError(f"self-match for player {self.a}")
        if self.a > self.b:
            raise DatasetError(f"matchup ({self.a}, {self.b}) is not in canonical orientation")
        if self.n_a < 0 or self.n_b < 0:
            raise DatasetError(f"negative counts ({self.n_a}, {self.n_b}) for pair ({self.a}, {self.b})")
        if self.n_a + self.n_b < 1:
            raise DatasetError(f"pair ({self.a}, {self.b}) has no outcomes")

    @classmethod
    def oriented(cls, a: int, b: int, n_a: int, n_b: int) -> "AggregatedMatchup":
        """Build a matchup from either orientation, swapping counts when ``a > b``."""
        if a > b:
            return cls(a=int(b), b=int(a), n_a=int(n_b), n_b=int(n_a))
        return cls(a=int(a), b=int(b), n_a=int(n_a), n_b=int(n_b))

    @property
    def total(self) -> int:
        return self.n_a + self.n_b


@dataclass(frozen=True)
class Dataset:
    players: PlayerTable
    records: tuple[AggregatedMatchup, ...] = field(default_factory=tuple)
    name: str = "dataset"

    def __post_init__(self) -> None:
        records = tuple(sorted(self.records, key=lambda record: (record.a, record.b)))
        seen = set()
        for row, record in enumerate(records):
            self.players.check(record.a, row=row)
            self.players.check(record.b, row=row)
            if (record.a, record.b) in seen:
                raise DatasetError(f"duplicate record for pair ({record.a}, {record.b})", row=row)
            seen.add((record.a, record.b))
        object.__setattr__(self, "records", records)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def total_outcomes(self) -> int:
        return sum(record.total for record in self.records)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Column view ``(a, b, n_a, n_b)`` of the records as int64 arrays."""
        if not self.records:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy(), empty.copy(), empty.copy()
        columns = np.array(
            [(record.a, record.b, record.n_a, record.n_b) for record in self.records],
            dtype=np.int64,
        )
        return columns[:, 0], columns[:, 1], columns[:, 2], columns[:, 3]

    @cached_property
    def _lookup(self) -> dict[tuple[int, int], AggregatedMatchup]:
        return {(record.a, record.b): record for record in self.records}

    @cached_property
    def observed_players(self) -> frozenset[int]:
        return frozenset(player for record in self.records for player in (record.a, record.b))

    def counts(self, a: int, b: int) -> Optional[tuple[int, int]]:
        """
        Win counts of ``a`` and ``b`` against each other, in the asked orientation.

        Returns:
            Optional[tuple[int, int]]: ``(wins of a, wins of b)`` or None for an unobserved pair.
        """
        record = self._lookup.get((min(a, b), max(a, b)))
        if record is None:
            return None
        return (record.n_a, record.n_b) if a < b else (record.n_b, record.n_a)

    def remap(self, players: PlayerTable) -> "Dataset":
        """
        Re-index the records onto another player table by label.

        Args:
            players (PlayerTable): The target table, e.g. the one stored in a model checkpoint.

        Returns:
            Dataset: The same outcomes expressed with ``players`` ids.
        """
        if players == self.players:
            return self
        mapping = [players.id_of(label) for label in self.players.labels]
        return Dataset(
            players=players,
            records=tuple(
                AggregatedMatchup.oriented(mapping[record.a], mapping[record.b], record.n_a, record.n_b)
                for record in self.records
            ),
            name=self.name,
        )

    def with_name(self, name: str) -> "Dataset":
        return Dataset(players=self.players, records=self.records, name=name)


def from_tuples(
    players: PlayerTable,
    rows: Iterable[tuple[int, int, int, int]],
    name: str = "dataset",
) -> Dataset:
    """
    Collapse ``(a, b, n_a, n_b)`` rows given in any orientation. Rows of the same
    unordered pair are summed.
    """
    merged: dict[tuple[int, int], list[int]] = {}
    for row, (a, b, n_a, n_b) in enumerate(rows):
        players.check(a, row=row)
        players.check(b, row=row)
        if a == b:
            raise DatasetError(f"self-match for player {a}", row=row)
        if n_a < 0 or n_b < 0:
            raise DatasetError(f"negative counts ({n_a}, {n_b})", row=row)
        key, wins = ((a, b), (n_a, n_b)) if a < b else ((b, a), (n_b, n_a))
        counts = merged.setdefault(key, [0, 0])
        counts[0] += wins[0]
        counts[1] += wins[1]
    return Dataset(
        players=players,
        records=tuple(AggregatedMatchup(a, b, n_a, n_b) for (a, b), (n_a, n_b) in merged.items() if n_a + n_b > 0),
        name=name,
    )


def _aggregate(
    a: np.ndarray,
    b: np.ndarray,
    a_won: np.ndarray,
    players: PlayerTable,
    name: str,
) -> Dataset:
    if a.size == 0:
        return Dataset(players=players, records=(), name=name)
    size = len(players)
    low = np.minimum(a, b)
    high = np.maximum(a, b)
    low_won = np.where(a == low, a_won, ~a_won)
    keys, inverse = np.unique(low * size + high, return_inverse=True)
    wins = np.bincount(inverse, weights=low_won.astype(np.float64), minlength=keys.size).astype(np.int64)
    totals = np.bincount(inverse, minlength=keys.size)
    records = tuple(
        AggregatedMatchup(int(key // size), int(key % size), int(won), int(total - won))
        for key, won, total in zip(keys, wins, totals)
    )
    return Dataset(players=players, records=records, name=name)


def ingest(raw: Sequence[RawOutcome], players: PlayerTable, name: str = "dataset") -> Dataset:
    """
    Aggregate individual outcomes into the collapsed dataset.

    Args:
        raw (Sequence[RawOutcome]): One entry per observed matchup.
        players (PlayerTable): The player table every id must belong to.
        name (str): Dataset name carried into reports.

    Returns:
        Dataset: Canonically oriented 4-tuples whose counts sum to ``len(raw)``.

    Raises:
        UnknownPlayerError: A row references an id outside the table.
        DatasetError: A row is a self-match.
    """
    a = np.fromiter((outcome.a for outcome in raw), dtype=np.int64, count=len(raw))
    b = np.fromiter((outcome.b for outcome in raw), dtype=np.int64, count=len(raw))
    a_won = np.fromiter((bool(outcome.a_won) for outcome in raw), dtype=bool, count=len(raw))

    size = len(players)
    invalid = np.flatnonzero((a < 0) | (a >= size) | (b < 0) | (b >= size))
    if invalid.size:
        row = int(invalid[0])
        bad = raw[row].a if raw[row].a not in players else raw[row].b
        raise UnknownPlayerError(f"unknown player id {bad} (table has {size} players)", row=row)
    self_matches = np.flatnonzero(a == b)
    if self_matches.size:
        row = int(self_matches[0])
        raise DatasetError(f"self-match for player {raw[row].a}", row=row)

    dataset = _aggregate(a, b, a_won, players, name)
    LOGGER.info(f"Ingested {len(raw)} outcomes into {len(dataset)} pairs over {size} players")
    return dataset


def expand_outcomes(d: Dataset) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Inverse of aggregation: arrays ``(a, b, a_won)`` with one entry per outcome."""
    a, b, n_a, n_b = d.arrays
    totals = n_a + n_b
    rep_a = np.repeat(a, totals)
    rep_b = np.repeat(b, totals)
    if not totals.size:
        return rep_a, rep_b, np.zeros(0, dtype=bool)
    # the first n_a outcomes of every pair are wins of a
    a_won = np.concatenate([np.arange(total) < wins for total, wins in zip(totals, n_a)])
    return rep_a, rep_b, a_won


def split_folds(d: Dataset, k: int, seed: int) -> list[tuple[Dataset, Dataset]]:
    """
    Randomly partition the individual outcomes into ``k`` near-equal folds and re-aggregate.

    Args:
        d (Dataset): The collapsed dataset.
        k (int): Fold count, at least 2.
        seed (int): RNG seed; identical inputs give identical folds.

    Returns:
        list[tuple[Dataset, Dataset]]: ``(train, test)`` per fold, fold ``i`` being the test set.
    """
    if k < 2:
        raise DatasetError(f"fold count must be at least 2, got {k}")
    total = d.total_outcomes
    if total == 0:
        raise DatasetError("cannot split an empty dataset into folds")
    if k > total:
        raise DatasetError(f"cannot split {total} outcomes into {k} folds")

    a, b, a_won = expand_outcomes(d)
    permutation = np.random.default_rng(seed).permutation(total)
    folds = np.array_split(permutation, k)

    splits = []
    for index, test_idx in enumerate(folds):
        train_idx = np.concatenate([fold for other, fold in enumerate(folds) if other != index])
        train = _aggregate(a[train_idx], b[train_idx], a_won[train_idx], d.players, f"{d.name}/fold{index}/train")
        test = _aggregate(a[test_idx], b[test_idx], a_won[test_idx], d.players, f"{d.name}/fold{index}/test")
        splits.append((train, test))
    LOGGER.info(f"Split {total} outcomes of {d.name} into {k} folds of sizes {[fold.size for fold in folds]}")
    return splits


def holdout_split(d: Dataset, fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """
    Hold out ``floor(fraction * total)`` randomly chosen outcomes.

    Returns:
        tuple[Dataset, Dataset]: ``(remaining, held_out)``; ``held_out`` may be empty.
    """
    if not 0.0 <= fraction < 1.0:
        raise DatasetError(f"holdout fraction must lie in [0, 1), got {fraction}")
    total = d.total_outcomes
    n_holdout = int(np.floor(fraction * total))
    if n_holdout == 0:
        return d, Dataset(players=d.players, records=(), name=f"{d.name}/holdout")

    a, b, a_won = expand_outcomes(d)
    permutation = np.random.default_rng(seed).permutation(total)
    held, kept = permutation[:n_holdout], permutation[n_holdout:]
    return (
        _aggregate(a[kept], b[kept], a_won[kept], d.players, d.name),
        _aggregate(a[held], b[held], a_won[held], d.players, f"{d.name}/holdout"),
    )


def _sidecar_path(path: PathLike) -> Path:
    path = Path(path)
    return path.with_name(path.stem + PLAYER_TABLE_SUFFIX)


def _decoded_lines(path: Path, file: BinaryIO) -> Iterator[str]:
    for line_number, raw in enumerate(file, start=1):
        try:
            yield raw.decode("utf-8")
        except UnicodeDecodeError as error:
            raise DatasetFormatError(f"line is not valid UTF-8 ({error.reason})", str(path), line_number) from None


def _data_lines(path: Path) -> Iterator[tuple[int, list[str]]]:
    with open(path, "rb") as file:
        reader = csv.reader(_decoded_lines(path, file))
        for cells in reader:
            cells = [cell.strip() for cell in cells]
            if not cells or not any(cells) or cells[0].startswith("#"):
                continue
            yield reader.line_num, cells


def read_player_table(path: PathLike) -> PlayerTable:
    labels: list[str] = []
    for line_number, cells in _data_lines(Path(path)):
        if tuple(cell.lower() for cell in cells) == PLAYER_TABLE_HEADER:
            continue
        if len(cells) != 2:
            raise DatasetFormatError(f"expected 'id,label', got {len(cells)} fields", str(path), line_number)
        try:
            player_id = int(cells[0])
        except ValueError:
            raise DatasetFormatError(f'player id "{cells[0]}" is not an integer', str(path), line_number) from None
        if player_id != len(labels):
            raise DatasetFormatError(f"player ids must be dense and ordered, expected {len(labels)}", str(path), line_number)
        labels.append(cells[1])
    return PlayerTable(labels)


def write_player_table(players: PlayerTable, path: PathLike) -> None:
    with open(path, "w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(PLAYER_TABLE_HEADER)
        for player in players:
            writer.writerow((player.id, player.label))


def _parse_count(value: str, path: Path, line_number: int) -> int:
    try:
        count = int(value)
    except ValueError:
        raise DatasetFormatError(f'count "{value}" is not an integer', str(path), line_number) from None
    if count < 0:
        raise DatasetFormatError(f"negative count {count}", str(path), line_number)
    return count


def read_dataset(path: PathLike, players_path: Optional[PathLike] = None) -> Dataset:
    """
    Read a raw (``winner,loser`` or ``a,b,a_won``) or collapsed (``a,b,n_a,n_b``) CSV file.

    Player labels are resolved through ``players_path``, else through the
    ``<stem>.players.csv`` sidecar when it exists, else assigned in order of first appearance.

    Args:
        path (PathLike): The dataset file.
        players_path (Optional[PathLike]): Explicit player table.

    Returns:
        Dataset: The collapsed dataset, named after the file stem.
    """
    path = Path(path)
    if players_path is None and _sidecar_path(path).is_file():
        players_path = _sidecar_path(path)
    table = read_player_table(players_path) if players_path is not None else None
    labels: dict[str, int] = {} if table is None else {label: idx for idx, label in enumerate(table.labels)}

    def resolve(label: str, line_number: int) -> int:
        if label not in labels:
            if table is not None:
                raise DatasetFormatError(f'player "{label}" is not in the player table', str(path), line_number)
            labels[label] = len(labels)
        return labels[label]

    width: Optional[int] = None
    rows: list[tuple[int, int, int, int]] = []
    for line_number, cells in _data_lines(path):
        lowered = tuple(cell.lower() for cell in cells)
        if width is None and (lowered in RAW_HEADERS or lowered == COLLAPSED_HEADER):
            width = len(cells)
            continue
        if width is None:
            width = len(cells)
        if len(cells) != width or width not in (2, 3, 4):
            raise DatasetFormatError(f"expected {width} fields, got {len(cells)}", str(path), line_number)
        if cells[0] == cells[1]:
            raise DatasetFormatError(f'self-match for player "{cells[0]}"', str(path), line_number)
        a = resolve(cells[0], line_number)
        b = resolve(cells[1], line_number)
        if width == 2:
            rows.append((a, b, 1, 0))
        elif width == 3:
            if cells[2] not in ("0", "1"):
                raise DatasetFormatError(f'a_won must be 0 or 1, got "{cells[2]}"', str(path), line_number)
            rows.append((a, b, 1, 0) if cells[2] == "1" else (a, b, 0, 1))
        else:
            n_a = _parse_count(cells[2], path, line_number)
            n_b = _parse_count(cells[3], path, line_number)
            if n_a + n_b == 0:
                raise DatasetFormatError("pair has no outcomes", str(path), line_number)
            rows.append((a, b, n_a, n_b))

    players = table if table is not None else PlayerTable(list(labels))
    dataset = from_tuples(players, rows, name=path.stem)
    LOGGER.info(f"Read {dataset.total_outcomes} outcomes over {len(dataset)} pairs from {path}")
    return dataset


def write_dataset(d: Dataset, path: PathLike) -> None:
    """Write the collapsed format plus the ``<stem>.players.csv`` player table sidecar."""
    with open(path, "w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(COLLAPSED_HEADER)
        for record in d.records:
            writer.writerow((d.players.labels[record.a], d.players.labels[record.b], record.n_a, record.n_b))
    write_player_table(d.players, _sidecar_path(path))
    LOGGER.info(f"Wrote {len(d)} pairs to {path}")


def write_raw_outcomes(outcomes: Sequence[RawOutcome], players: PlayerTable, path: PathLike) -> None:
    """Write outcomes in the ``winner,loser`` raw format, with the player table sidecar."""
    with open(path, "w", newline="", encoding="utf-8") as file:
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(("winner", "loser"))
        for outcome in outcomes:
            winner, loser = (outcome.a, outcome.b) if outcome.a_won else (outcome.b, outcome.a)
            writer.writerow((players.labels[winner], players.labels[loser]))
    write_player_table(players, _sidecar_path(path))
    LOGGER.info(f"Wrote {len(outcomes)} raw outcomes to {path}")
