import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any
from typing import Optional
from typing import Protocol
from typing import Union

import numpy as np
from scipy.special import expit
from simple_logger.logger import get_logger

from src.objects.dataset import Dataset
from src.objects.dataset import PlayerTable
from src.objects.dataset import from_tuples
from src.objects.exceptions import ModelError
from src.objects.exceptions import UnknownPlayerError

LOGGER = get_logger(__name__)

CHECKPOINT_VERSION = "intransic-model-v1"
DEFAULT_INIT_SCALE = 0.1

# parameter arrays indexed by player along their first axis
PER_PLAYER_ARRAYS = frozenset({"gamma", "blade", "chest", "embed"})


class ModelKind(str, Enum):
    NAIVE = "naive"
    BT = "bt"
    BCI = "bci"
    BCD = "bcd"
    GENERAL = "general"

    @property
    def display_name(self) -> str:
        return {
            ModelKind.NAIVE: "Naive",
            ModelKind.BT: "Bradley-Terry",
            ModelKind.BCI: "Blade-Chest (inner)",
            ModelKind.BCD: "Blade-Chest (distance)",
            ModelKind.GENERAL: "Generalized",
        }[self]

    @property
    def min_dim(self) -> int:
        return 2 if self is ModelKind.GENERAL else 1


@dataclass
class BTParams:
    gamma: np.ndarray

    def __post_init__(self) -> None:
        self.gamma = np.asarray(self.gamma, dtype=np.float64).reshape(-1)

    def arrays(self) -> dict[str, np.ndarray]:
        return {"gamma": self.gamma}


@dataclass
class BladeChestParams:
    blade: np.ndarray
    chest: np.ndarray

    def __post_init__(self) -> None:
        self.blade = np.atleast_2d(np.asarray(self.blade, dtype=np.float64))
        self.chest = np.atleast_2d(np.asarray(self.chest, dtype=np.float64))
        if self.blade.shape != self.chest.shape:
            raise ModelError(f"blade {self.blade.shape} and chest {self.chest.shape} must share one shape")

    @property
    def dim(self) -> int:
        return int(self.blade.shape[1])

    def arrays(self) -> dict[str, np.ndarray]:
        return {"blade": self.blade, "chest": self.chest}


@dataclass
class GeneralParams:
    """
    Embedding ``embed`` (players x d), free matrix ``sigma_free`` whose antisymmetric part
    gives the interaction matrix, and the intrinsic-strength matrix ``gamma_mat``.
    """

    embed: np.ndarray
    sigma_free: np.ndarray
    gamma_mat: np.ndarray

    def __post_init__(self) -> None:
        self.embed = np.atleast_2d(np.asarray(self.embed, dtype=np.float64))
        self.sigma_free = np.asarray(self.sigma_free, dtype=np.float64)
        self.gamma_mat = np.asarray(self.gamma_mat, dtype=np.float64)
        dim = self.embed.shape[1]
        if dim < 2:
            raise ModelError(f"the generalized model needs dim >= 2, got {dim}")
        if self.sigma_free.shape != (dim, dim) or self.gamma_mat.shape != (dim, dim):
            raise ModelError(
                f"matrices must be {dim}x{dim}, got sigma_free {self.sigma_free.shape} "
                f"and gamma_mat {self.gamma_mat.shape}",
            )

    @property
    def dim(self) -> int:
        return int(self.embed.shape[1])

    @property
    def sigma(self) -> np.ndarray:
        return antisymmetric(self.sigma_free)

    def arrays(self) -> dict[str, np.ndarray]:
        return {"embed": self.embed, "sigma_free": self.sigma_free, "gamma_mat": self.gamma_mat}


@dataclass
class NaiveParams:
    evidence: Dataset

    def arrays(self) -> dict[str, np.ndarray]:
        return {}


ParamBlock = Union[BTParams, BladeChestParams, GeneralParams, NaiveParams]


class Predictor(Protocol):
    def win_probability(self, a: int, b: int) -> float: ...


def antisymmetric(sigma_free: np.ndarray) -> np.ndarray:
    return sigma_free - sigma_free.T


def _check_players(size: int, *players: int) -> None:
    for player in players:
        if not 0 <= player < size:
            raise UnknownPlayerError(f"unknown player id {player} (parameters cover {size} players)")


def matchup_bt(p: BTParams, a: int, b: int) -> float:
    _check_players(len(p.gamma), a, b)
    return float(p.gamma[a] - p.gamma[b])


def matchup_bci(p: BladeChestParams, a: int, b: int) -> float:
    _check_players(len(p.blade), a, b)
    return float(p.blade[a] @ p.chest[b] - p.blade[b] @ p.chest[a])


def matchup_bcd(p: BladeChestParams, a: int, b: int) -> float:
    _check_players(len(p.blade), a, b)
    return float(np.sum((p.blade[b] - p.chest[a]) ** 2) - np.sum((p.blade[a] - p.chest[b]) ** 2))


def matchup_general(p: GeneralParams, a: int, b: int) -> float:
    _check_players(len(p.embed), a, b)
    vec_a, vec_b = p.embed[a], p.embed[b]
    return float(vec_a @ p.sigma @ vec_b + vec_a @ p.gamma_mat @ vec_a - vec_b @ p.gamma_mat @ vec_b)


def smoothed_probability(n_a: int, n_b: int) -> float:
    """Add-one smoothed empirical probability that the first player wins."""
    return (n_a + 1) / ((n_a + 1) + (n_b + 1))


def naive_probability(train: Dataset, a: int, b: int) -> float:
    """
    Empirical win probability of ``a`` over ``b`` from the training aggregation.

    Args:
        train (Dataset): The training data.
        a (int): First player.
        b (int): Second player.

    Returns:
        float: ``(n_a + 1) / (n_a + n_b + 2)``, or 0.5 for a pair never seen in training.
    """
    train.players.check(a)
    train.players.check(b)
    counts = train.counts(a, b)
    if counts is None:
        return 0.5
    return smoothed_probability(*counts)


def _matchup_values(kind: ModelKind, params: ParamBlock, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if isinstance(params, BTParams):
        return params.gamma[a] - params.gamma[b]
    if isinstance(params, BladeChestParams) and kind is ModelKind.BCI:
        return np.sum(params.blade[a] * params.chest[b], axis=1) - np.sum(params.blade[b] * params.chest[a], axis=1)
    if isinstance(params, BladeChestParams):
        return np.sum((params.blade[b] - params.chest[a]) ** 2, axis=1) - np.sum(
            (params.blade[a] - params.chest[b]) ** 2,
            axis=1,
        )
    if isinstance(params, GeneralParams):
        vec_a, vec_b = params.embed[a], params.embed[b]
        return (
            np.sum((vec_a @ params.sigma) * vec_b, axis=1)
            + np.sum((vec_a @ params.gamma_mat) * vec_a, axis=1)
            - np.sum((vec_b @ params.gamma_mat) * vec_b, axis=1)
        )
    probabilities = _naive_low_probabilities(params, a, b)
    return np.log(probabilities) - np.log1p(-probabilities)


def _naive_low_probabilities(params: NaiveParams, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    values = np.empty(len(a), dtype=np.float64)
    for index, (player_a, player_b) in enumerate(zip(a, b)):
        values[index] = naive_probability(params.evidence, int(player_a), int(player_b))
    return values


class MatchupModel:
    def __init__(
        self,
        kind: Union[ModelKind, str],
        players: PlayerTable,
        params: ParamBlock,
        observed: Optional[frozenset[int]] = None,
    ) -> None:
        """
        A model kind with its parameter block.

        Args:
            kind (Union[ModelKind, str]): naive, bt, bci, bcd or general.
            players (PlayerTable): The players the parameters are indexed by.
            params (ParamBlock): Parameters matching ``kind``.
            observed (Optional[frozenset[int]]): Players seen in training. Pairs involving
                anyone else get probability 0.5. None means every player counts as observed.
        """
        self.kind = ModelKind(kind)
        self.players = players
        self.params = params
        self.observed = observed
        expected = {
            ModelKind.NAIVE: NaiveParams,
            ModelKind.BT: BTParams,
            ModelKind.BCI: BladeChestParams,
            ModelKind.BCD: BladeChestParams,
            ModelKind.GENERAL: GeneralParams,
        }[self.kind]
        if not isinstance(params, expected):
            raise ModelError(f"{self.kind.value} model needs {expected.__name__}, got {type(params).__name__}")
        for name, values in params.arrays().items():
            if name in PER_PLAYER_ARRAYS and len(values) != len(players):
                raise ModelError(f'"{name}" covers {len(values)} players, the table has {len(players)}')

    def __repr__(self) -> str:
        return f"MatchupModel(kind={self.kind.value}, players={len(self.players)}, dim={self.dim})"

    @property
    def dim(self) -> int:
        if isinstance(self.params, (BladeChestParams, GeneralParams)):
            return self.params.dim
        return 1 if self.kind is ModelKind.BT else 0

    def arrays(self) -> dict[str, np.ndarray]:
        return self.params.arrays()

    @property
    def parameter_count(self) -> int:
        return sum(values.size for values in self.arrays().values())

    def copy(self) -> "MatchupModel":
        if isinstance(self.params, NaiveParams):
            params: ParamBlock = NaiveParams(evidence=self.params.evidence)
        else:
            params = type(self.params)(**{name: values.copy() for name, values in self.arrays().items()})
        return MatchupModel(kind=self.kind, players=self.players, params=params, observed=self.observed)

    def is_observed(self, player: int) -> bool:
        return self.observed is None or player in self.observed

    def matchup_value(self, a: int, b: int) -> float:
        self.players.check(a)
        self.players.check(b)
        if isinstance(self.params, BTParams):
            return matchup_bt(self.params, a, b)
        if isinstance(self.params, GeneralParams):
            return matchup_general(self.params, a, b)
        if isinstance(self.params, BladeChestParams):
            if self.kind is ModelKind.BCI:
                return matchup_bci(self.params, a, b)
            return matchup_bcd(self.params, a, b)
        return float(_matchup_values(self.kind, self.params, np.array([a]), np.array([b]))[0])

    def matchup_values(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return _matchup_values(self.kind, self.params, np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def win_probability(self, a: int, b: int) -> float:
        self.players.check(a)
        self.players.check(b)
        if a == b or not (self.is_observed(a) and self.is_observed(b)):
            return 0.5
        low, high = min(a, b), max(a, b)
        if isinstance(self.params, NaiveParams):
            p_low = naive_probability(self.params.evidence, low, high)
        else:
            p_low = float(expit(self.matchup_value(low, high)))
        return p_low if a == low else 1.0 - p_low

    def win_probabilities(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`win_probability`."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        low, high = np.minimum(a, b), np.maximum(a, b)
        if isinstance(self.params, NaiveParams):
            p_low = _naive_low_probabilities(self.params, low, high)
        else:
            p_low = expit(self.matchup_values(low, high))
        probabilities = np.where(a == low, p_low, 1.0 - p_low)
        if self.observed is not None:
            observed = np.zeros(len(self.players), dtype=bool)
            observed[list(self.observed)] = True
            probabilities = np.where(observed[a] & observed[b], probabilities, 0.5)
        return np.where(a == b, 0.5, probabilities)


def win_probability(m: Predictor, a: int, b: int) -> float:
    return m.win_probability(a, b)


def _coin_flip(seed: int, a: int, b: int) -> int:
    low, high = min(a, b), max(a, b)
    return low if np.random.default_rng([seed, low, high]).integers(2) == 0 else high


def predict_winner(m: Predictor, a: int, b: int, seed: int) -> int:
    """
    The player with the higher win probability; an exact 0.5 is settled by a coin flip
    seeded by ``seed`` and the pair, so it does not depend on the order of ``a`` and ``b``.
    """
    probability = m.win_probability(a, b)
    if probability > 0.5:
        return a
    if probability < 0.5:
        return b
    return _coin_flip(seed, a, b)


def predict_a_wins(m: Predictor, a: np.ndarray, b: np.ndarray, seed: int) -> np.ndarray:
    """Boolean array, True where :func:`predict_winner` picks the first player of the pair."""
    if isinstance(m, MatchupModel):
        probabilities = m.win_probabilities(a, b)
    else:
        probabilities = np.array([m.win_probability(int(x), int(y)) for x, y in zip(a, b)], dtype=np.float64)
    a_wins = probabilities > 0.5
    for index in np.flatnonzero(probabilities == 0.5):
        a_wins[index] = _coin_flip(seed, int(a[index]), int(b[index])) == int(a[index])
    return a_wins


def degenerate_to_bci(bc: BladeChestParams) -> GeneralParams:
    """
    Express a Blade-Chest-Inner parameterization as a generalized model in ``2 * dim``
    dimensions: embedding ``[blade; chest]``, interaction ``[[0, I], [-I, 0]]`` and a zero
    intrinsic-strength matrix.
    """
    dim = bc.dim
    sigma_free = np.zeros((2 * dim, 2 * dim))
    sigma_free[:dim, dim:] = np.eye(dim)
    return GeneralParams(
        embed=np.hstack([bc.blade, bc.chest]),
        sigma_free=sigma_free,
        gamma_mat=np.zeros((2 * dim, 2 * dim)),
    )


def init_params(
    kind: Union[ModelKind, str],
    players: PlayerTable,
    dim: int,
    scale: float = DEFAULT_INIT_SCALE,
    seed: int = 0,
) -> MatchupModel:
    """
    Random initialization, every entry i.i.d. uniform in ``[-scale, scale]``.

    Args:
        kind (Union[ModelKind, str]): Any kind but naive, which is fit from counts.
        players (PlayerTable): The player table.
        dim (int): Embedding dimension (ignored by bt, at least 2 for general).
        scale (float): Half-width of the uniform distribution.
        seed (int): RNG seed.

    Returns:
        MatchupModel: The initialized model.
    """
    kind = ModelKind(kind)
    if kind is ModelKind.NAIVE:
        raise ModelError("the naive model has no parameters to initialize, use fit_naive")
    if not isinstance(dim, (int, np.integer)) or dim < kind.min_dim:
        raise ModelError(f"{kind.value} model needs dim >= {kind.min_dim}, got {dim}")
    if scale < 0:
        raise ModelError(f"initialization scale must be non-negative, got {scale}")

    rng = np.random.default_rng(seed)
    size = len(players)

    def draw(*shape: int) -> np.ndarray:
        return rng.uniform(-scale, scale, size=shape)

    params: ParamBlock
    if kind is ModelKind.BT:
        params = BTParams(gamma=draw(size))
    elif kind in (ModelKind.BCI, ModelKind.BCD):
        params = BladeChestParams(blade=draw(size, dim), chest=draw(size, dim))
    else:
        params = GeneralParams(embed=draw(size, dim), sigma_free=draw(dim, dim), gamma_mat=draw(dim, dim))
    return MatchupModel(kind=kind, players=players, params=params)


def fit_naive(train: Dataset) -> MatchupModel:
    ties = sum(1 for record in train.records if record.n_a == record.n_b)
    if ties:
        LOGGER.warning(f"{train.name}: {ties} pairs are tied, the naive model settles them with a seeded coin")
    return MatchupModel(
        kind=ModelKind.NAIVE,
        players=train.players,
        params=NaiveParams(evidence=train),
        observed=train.observed_players,
    )


def _encode_array(values: np.ndarray) -> dict[str, Any]:
    return {"shape": list(values.shape), "values": [float(value) for value in values.ravel()]}


def _decode_array(encoded: dict[str, Any]) -> np.ndarray:
    try:
        return np.asarray(encoded["values"], dtype=np.float64).reshape(encoded["shape"])
    except (KeyError, TypeError, ValueError) as error:
        raise ModelError(f"malformed parameter array in checkpoint: {error}") from None


def model_to_dict(m: MatchupModel) -> dict[str, Any]:
    arrays = dict(m.arrays())
    if isinstance(m.params, NaiveParams):
        a, b, n_a, n_b = m.params.evidence.arrays
        arrays["counts"] = np.column_stack([a, b, n_a, n_b]).astype(np.float64).reshape(-1, 4)
    return {
        "version": CHECKPOINT_VERSION,
        "kind": m.kind.value,
        "dim": m.dim,
        "players": list(m.players.labels),
        "observed": None if m.observed is None else sorted(int(player) for player in m.observed),
        "params": {name: _encode_array(values) for name, values in arrays.items()},
    }


def model_from_dict(data: dict[str, Any]) -> MatchupModel:
    if data.get("version") != CHECKPOINT_VERSION:
        raise ModelError(f'unsupported checkpoint version "{data.get("version")}", expected "{CHECKPOINT_VERSION}"')
    try:
        kind = ModelKind(data["kind"])
        players = PlayerTable(data["players"])
        arrays = {name: _decode_array(encoded) for name, encoded in data["params"].items()}
    except (KeyError, ValueError) as error:
        raise ModelError(f"malformed checkpoint: {error}") from None
    observed = None if data.get("observed") is None else frozenset(int(player) for player in data["observed"])

    params: ParamBlock
    try:
        if kind is ModelKind.NAIVE:
            rows = [tuple(int(value) for value in row) for row in arrays["counts"]]
            params = NaiveParams(evidence=from_tuples(players, rows))  # type: ignore[arg-type]
        elif kind is ModelKind.BT:
            params = BTParams(gamma=arrays["gamma"])
        elif kind in (ModelKind.BCI, ModelKind.BCD):
            params = BladeChestParams(blade=arrays["blade"], chest=arrays["chest"])
        else:
            params = GeneralParams(
                embed=arrays["embed"],
                sigma_free=arrays["sigma_free"],
                gamma_mat=arrays["gamma_mat"],
            )
    except KeyError as error:
        raise ModelError(f"checkpoint for a {kind.value} model is missing {error}") from None
    return MatchupModel(kind=kind, players=players, params=params, observed=observed)


def save_model(m: MatchupModel, path: Union[str, Path]) -> None:
    with open(path, "w", encoding="utf-8") as file:
        json.dump(model_to_dict(m), file, indent=2, sort_keys=True)
        file.write("\n")
    LOGGER.info(f"Saved {m} to {path}")


def load_model(path: Union[str, Path]) -> MatchupModel:
    try:
        with open(path, encoding="utf-8") as file:
            data = json.load(file)
    except json.decoder.JSONDecodeError as error:
        raise ModelError(f"checkpoint {path} is not valid JSON: {error}") from None
    return model_from_dict(data)
