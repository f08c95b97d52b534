from dataclasses import dataclass
from pathlib import Path
from typing import Any
from typing import Optional
from typing import Sequence
from typing import Union

import numpy as np
from simple_logger.logger import get_logger

from src.evaluation.accuracy import test_accuracy
from src.intransitivity.intransitivity import DEFAULT_CYCLE_CAP
from src.intransitivity.intransitivity import stats
from src.objects.configuration import TrainConfig
from src.objects.dataset import Dataset
from src.objects.dataset import holdout_split
from src.objects.dataset import read_dataset
from src.objects.dataset import split_folds
from src.objects.exceptions import EvaluationError
from src.objects.models import MatchupModel
from src.objects.models import ModelKind
from src.objects.models import fit_naive
from src.training.trainer import sgd_train

LOGGER = get_logger(__name__)

DEFAULT_DIMS = (2, 5, 10, 50)
DEFAULT_LAMBDAS = (0.0, 1e-4, 1e-3, 1e-2)
MIN_FOLDS = 3

GridPoint = tuple[int, float]


def default_grid() -> list[GridPoint]:
    return [(dim, regularization) for dim in DEFAULT_DIMS for regularization in DEFAULT_LAMBDAS]


@dataclass(frozen=True)
class ExperimentReport:
    dataset: str
    kind: ModelKind
    k: int
    seed: int
    fold_accuracies: tuple[float, ...]
    mean: float
    std: float
    chosen: tuple[Optional[GridPoint], ...]
    unseen_players: tuple[tuple[str, ...], ...]
    intrans: dict[str, Any]

    @classmethod
    def from_folds(
        cls,
        dataset: str,
        kind: ModelKind,
        k: int,
        seed: int,
        fold_accuracies: Sequence[float],
        chosen: Sequence[Optional[GridPoint]],
        unseen_players: Sequence[Sequence[str]],
        intrans: dict[str, Any],
    ) -> "ExperimentReport":
        accuracies = np.asarray(fold_accuracies, dtype=np.float64)
        return cls(
            dataset=dataset,
            kind=kind,
            k=k,
            seed=seed,
            fold_accuracies=tuple(float(accuracy) for accuracy in accuracies),
            mean=float(np.mean(accuracies)),
            std=float(np.std(accuracies)),
            chosen=tuple(chosen),
            unseen_players=tuple(tuple(players) for players in unseen_players),
            intrans=intrans,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "dataset": self.dataset,
            "model": self.kind.value,
            "k": self.k,
            "seed": self.seed,
            "fold_accuracies": list(self.fold_accuracies),
            "mean": self.mean,
            "std": self.std,
            "chosen": [None if point is None else {"dim": point[0], "lambda": point[1]} for point in self.chosen],
            "unseen_players": [list(players) for players in self.unseen_players],
            "intrans": self.intrans,
        }


def _valid_grid(kind: ModelKind, grid: Sequence[GridPoint]) -> list[GridPoint]:
    if kind is ModelKind.BT:
        # BT has no embedding, only the distinct regularization weights matter
        return [(1, regularization) for regularization in dict.fromkeys(point[1] for point in grid)]
    valid = [(int(dim), float(regularization)) for dim, regularization in grid if dim >= kind.min_dim]
    skipped = len(grid) - len(valid)
    if skipped:
        LOGGER.warning(f"Skipping {skipped} grid points with dim < {kind.min_dim} for the {kind.value} model")
    if not valid:
        raise EvaluationError(f"no grid point is valid for the {kind.value} model")
    return valid


def _select_model(
    kind: ModelKind,
    train: Dataset,
    grid: Sequence[GridPoint],
    cfg: TrainConfig,
    seeds: np.random.SeedSequence,
) -> tuple[MatchupModel, GridPoint]:
    split_seq, train_seq, tie_seq = seeds.spawn(3)
    train_seed = int(train_seq.generate_state(1)[0]) % 2**31
    tie_seed = int(tie_seq.generate_state(1)[0])

    if cfg.eval_fraction > 0:
        fit, validation = holdout_split(train, cfg.eval_fraction, seed=int(split_seq.generate_state(1)[0]))
    else:
        LOGGER.info(f"{train.name}: eval_fraction is 0, selecting on training accuracy")
        fit, validation = train, train
    if not validation.records or not fit.records:
        LOGGER.warning(f"{train.name} is too small for a validation split, selecting on training accuracy")
        fit, validation = train, train

    best: Optional[tuple[float, MatchupModel, GridPoint]] = None
    for dim, regularization in grid:
        point_cfg = cfg.with_hyperparameters(dim=dim, regularization=regularization, seed=train_seed)
        model, _ = sgd_train(kind, fit, point_cfg, d_val=validation)
        accuracy = test_accuracy(model, validation, tie_seed)
        LOGGER.info(f"{train.name}: {kind.value} dim={dim} lambda={regularization} validation accuracy {accuracy:.4f}")
        if best is None or accuracy > best[0]:
            best = (accuracy, model, (dim, regularization))

    assert best is not None
    return best[1], best[2]


def cross_validate(
    kind: Union[ModelKind, str],
    d: Dataset,
    k: int,
    grid: Optional[Sequence[GridPoint]] = None,
    cfg: Optional[TrainConfig] = None,
    seed: int = 0,
    cap: Optional[int] = DEFAULT_CYCLE_CAP,
) -> ExperimentReport:
    """
    k-fold cross-validation with a per-fold grid search over ``(dim, lambda)``.

    Each fold in turn is the test set; ``cfg.eval_fraction`` (10% by default) of the remaining
    outcomes is held out for validation, every grid point is trained on the rest, and the point
    with the best validation accuracy is scored on the test fold.

    Args:
        kind (Union[ModelKind, str]): Model kind; the naive model skips the grid search.
        d (Dataset): The full dataset.
        k (int): Fold count, at least 3.
        grid (Optional[Sequence[GridPoint]]): ``(dim, lambda)`` points, default_grid() when None.
        cfg (Optional[TrainConfig]): Base training configuration.
        seed (int): Seed of folds, splits, initializations and tie-breaks.
        cap (Optional[int]): Cycle cap of the attached intransitivity report.

    Returns:
        ExperimentReport: Per-fold test accuracies and their summary.
    """
    kind = ModelKind(kind)
    cfg = cfg or TrainConfig()
    grid = default_grid() if grid is None else list(grid)
    if k < MIN_FOLDS:
        raise EvaluationError(f"cross-validation needs k >= {MIN_FOLDS} (train, validation and test parts), got {k}")
    if not grid:
        raise EvaluationError("hyperparameter grid is empty")
    if d.total_outcomes < k:
        raise EvaluationError(f"cannot split {d.total_outcomes} outcomes of {d.name} into {k} folds")
    if kind is not ModelKind.NAIVE:
        grid = _valid_grid(kind, grid)

    fold_seeds = np.random.SeedSequence(seed).spawn(k)
    accuracies, chosen, unseen = [], [], []
    for index, (train, test) in enumerate(split_folds(d, k, seed)):
        missing = sorted(test.observed_players - train.observed_players)
        if missing:
            LOGGER.warning(f"{test.name}: {len(missing)} players never appear in the training folds")
        unseen.append([d.players.labels[player] for player in missing])

        if kind is ModelKind.NAIVE:
            model, point = fit_naive(train), None
        else:
            model, point = _select_model(kind, train, grid, cfg, fold_seeds[index])
        accuracy = test_accuracy(model, test, seed + index)
        LOGGER.info(f"{test.name}: {kind.value} test accuracy {accuracy:.4f} with {point}")
        accuracies.append(accuracy)
        chosen.append(point)

    report = ExperimentReport.from_folds(
        dataset=d.name,
        kind=kind,
        k=k,
        seed=seed,
        fold_accuracies=accuracies,
        chosen=chosen,
        unseen_players=unseen,
        intrans=stats(d, cap).to_dict(),
    )
    LOGGER.info(f"{d.name}: {kind.value} mean accuracy {report.mean:.4f} +/- {report.std:.4f}")
    return report


def run_benchmark(
    dataset_path: Union[str, Path],
    models: Sequence[Union[ModelKind, str]],
    k: int,
    grid: Optional[Sequence[GridPoint]] = None,
    seed: int = 0,
    cfg: Optional[TrainConfig] = None,
    cap: Optional[int] = DEFAULT_CYCLE_CAP,
) -> list[ExperimentReport]:
    """Cross-validates every model kind on one dataset file, in the given order."""
    d = read_dataset(dataset_path)
    return [cross_validate(kind, d, k, grid=grid, cfg=cfg, seed=seed, cap=cap) for kind in models]
