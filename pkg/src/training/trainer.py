import csv
import math
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from pathlib import Path
from typing import Optional
from typing import Union

import numpy as np
from scipy.special import expit
from scipy.special import log_expit
from simple_logger.logger import get_logger

from src.evaluation.accuracy import test_accuracy
from src.objects.configuration import TrainConfig
from src.objects.dataset import AggregatedMatchup
from src.objects.dataset import Dataset
from src.objects.dataset import PlayerTable
from src.objects.dataset import holdout_split
from src.objects.exceptions import DatasetError
from src.objects.exceptions import ModelError
from src.objects.exceptions import TrainingDivergedError
from src.objects.models import PER_PLAYER_ARRAYS
from src.objects.models import BladeChestParams
from src.objects.models import BTParams
from src.objects.models import GeneralParams
from src.objects.models import MatchupModel
from src.objects.models import ModelKind
from src.objects.models import fit_naive
from src.objects.models import init_params

LOGGER = get_logger(__name__)

TRACE_HEADER = ("epoch", "objective", "val_accuracy")


class StopReason(str, Enum):
    MAX_EPOCHS = "max_epochs"
    EARLY_STOPPING = "early_stopping"
    CLOSED_FORM = "closed_form"


@dataclass
class TrainTrace:
    initial_objective: Optional[float] = None
    objectives: list[float] = field(default_factory=list)
    val_accuracies: list[Optional[float]] = field(default_factory=list)
    stop_reason: Optional[StopReason] = None
    best_epoch: Optional[int] = None

    @property
    def epochs(self) -> int:
        return len(self.objectives)

    def record(self, objective_value: float, val_accuracy: Optional[float]) -> None:
        self.objectives.append(objective_value)
        self.val_accuracies.append(val_accuracy)

    def rows(self) -> list[tuple[int, float, Optional[float]]]:
        return [
            (epoch, objective_value, accuracy)
            for epoch, (objective_value, accuracy) in enumerate(zip(self.objectives, self.val_accuracies), start=1)
        ]

    def to_csv(self, path: Union[str, Path]) -> None:
        with open(path, "w", newline="", encoding="utf-8") as file:
            writer = csv.writer(file, lineterminator="\n")
            writer.writerow(TRACE_HEADER)
            for epoch, objective_value, accuracy in self.rows():
                writer.writerow((epoch, repr(objective_value), "" if accuracy is None else repr(accuracy)))


def _tuple_log_likelihood(m: MatchupModel, a: int, b: int, n_a: int, n_b: int) -> float:
    value = m.matchup_value(a, b)
    return float(n_a * log_expit(value) + n_b * log_expit(-value))


def log_likelihood(m: MatchupModel, d: Dataset) -> float:
    """
    Log of the collapsed-data likelihood, ``sum(n_a * log p + n_b * log(1 - p))``.

    Evaluated with the log-sigmoid so saturated predictions never produce ``-inf``
    through ``log(0)``.
    """
    if not d.records:
        return 0.0
    a, b, n_a, n_b = d.arrays
    values = m.matchup_values(a, b)
    return float(np.sum(n_a * log_expit(values) + n_b * log_expit(-values)))


def regularizers(m: MatchupModel) -> tuple[float, float, float]:
    """
    ``(r1, r2, r3)``: half the squared norm of every per-player parameter, and the
    Frobenius norms of ``sigma_free`` and ``gamma_mat`` (zero for models without them).
    """
    arrays = m.arrays()
    r1 = 0.5 * sum(float(np.sum(values**2)) for name, values in arrays.items() if name in PER_PLAYER_ARRAYS)
    r2 = float(np.linalg.norm(arrays["sigma_free"])) if "sigma_free" in arrays else 0.0
    r3 = float(np.linalg.norm(arrays["gamma_mat"])) if "gamma_mat" in arrays else 0.0
    return r1, r2, r3


def objective(m: MatchupModel, d: Dataset, cfg: TrainConfig) -> float:
    r1, r2, r3 = regularizers(m)
    lambda1, lambda2, lambda3 = cfg.lambdas
    return log_likelihood(m, d) - (lambda1 * r1 + lambda2 * r2 + lambda3 * r3)


def _tuple_gradients(m: MatchupModel, a: int, b: int, n_a: int, n_b: int) -> dict[str, np.ndarray]:
    value = m.matchup_value(a, b)
    # derivative of the tuple's log-likelihood with respect to the matchup value
    s = n_a * float(expit(-value)) - n_b * float(expit(value))
    params = m.params

    if isinstance(params, BTParams):
        grad_gamma = np.zeros_like(params.gamma)
        grad_gamma[a] += s
        grad_gamma[b] -= s
        return {"gamma": grad_gamma}

    if isinstance(params, BladeChestParams):
        grad_blade = np.zeros_like(params.blade)
        grad_chest = np.zeros_like(params.chest)
        if m.kind is ModelKind.BCI:
            grad_blade[a] += s * params.chest[b]
            grad_chest[b] += s * params.blade[a]
            grad_blade[b] -= s * params.chest[a]
            grad_chest[a] -= s * params.blade[b]
        else:
            toward_a = params.blade[b] - params.chest[a]
            toward_b = params.blade[a] - params.chest[b]
            grad_blade[b] += 2 * s * toward_a
            grad_chest[a] -= 2 * s * toward_a
            grad_blade[a] -= 2 * s * toward_b
            grad_chest[b] += 2 * s * toward_b
        return {"blade": grad_blade, "chest": grad_chest}

    if isinstance(params, GeneralParams):
        sigma = params.sigma
        gamma_sym = params.gamma_mat + params.gamma_mat.T
        vec_a, vec_b = params.embed[a], params.embed[b]
        grad_embed = np.zeros_like(params.embed)
        grad_embed[a] += s * (sigma @ vec_b + gamma_sym @ vec_a)
        grad_embed[b] += s * (sigma.T @ vec_a - gamma_sym @ vec_b)
        return {
            "embed": grad_embed,
            "sigma_free": s * (np.outer(vec_a, vec_b) - np.outer(vec_b, vec_a)),
            "gamma_mat": s * (np.outer(vec_a, vec_a) - np.outer(vec_b, vec_b)),
        }

    raise ModelError(f"{m.kind.value} model has no gradients")


def gradients(m: MatchupModel, t: AggregatedMatchup) -> dict[str, np.ndarray]:
    """
    Gradient of one tuple's log-likelihood contribution.

    Args:
        m (MatchupModel): A bt, bci, bcd or general model.
        t (AggregatedMatchup): The sampled tuple.

    Returns:
        dict[str, np.ndarray]: Parameter-shaped gradient arrays keyed like ``m.arrays()``.
    """
    m.players.check(t.a)
    m.players.check(t.b)
    return _tuple_gradients(m, t.a, t.b, t.n_a, t.n_b)


def regularizer_gradients(m: MatchupModel, lambdas: tuple[float, float, float]) -> dict[str, np.ndarray]:
    """Gradient of ``sum(lambda_i * r_i)``; the Frobenius terms use subgradient 0 at the zero matrix."""
    lambda1, lambda2, lambda3 = lambdas
    grads = {}
    for name, values in m.arrays().items():
        if name in PER_PLAYER_ARRAYS:
            grads[name] = lambda1 * values
        else:
            weight = lambda2 if name == "sigma_free" else lambda3
            norm = float(np.linalg.norm(values))
            grads[name] = weight * values / norm if norm > 0 else np.zeros_like(values)
    return grads


class Trainer:
    def __init__(self, kind: Union[ModelKind, str], cfg: TrainConfig) -> None:
        """
        Regularized maximum likelihood by SGD over collapsed tuples.

        Args:
            kind (Union[ModelKind, str]): The model kind to train.
            cfg (TrainConfig): Hyperparameters; ``cfg.seed`` makes a run fully reproducible.
        """
        self.logger = get_logger(__name__)
        self.kind = ModelKind(kind)
        self.cfg = cfg
        if self.kind is not ModelKind.NAIVE and cfg.dim < self.kind.min_dim:
            raise ModelError(f"{self.kind.value} model needs dim >= {self.kind.min_dim}, got {cfg.dim}")

    def fit(self, d_train: Dataset, d_val: Optional[Dataset] = None) -> tuple[MatchupModel, TrainTrace]:
        """
        Trains a model.

        Args:
            d_train (Dataset): Training data.
            d_val (Optional[Dataset]): Validation data for early stopping. When None,
                ``cfg.eval_fraction`` of the training outcomes is held out instead.

        Returns:
            tuple[MatchupModel, TrainTrace]: The parameters with the best validation accuracy
            (the final ones without validation data) and the per-epoch trace.
        """
        if d_train.total_outcomes == 0:
            raise DatasetError(f"cannot train on an empty training set ({d_train.name})")
        if self.kind is ModelKind.NAIVE:
            return fit_naive(d_train), TrainTrace(stop_reason=StopReason.CLOSED_FORM)

        cfg = self.cfg
        split_seq, init_seq, sample_seq, tie_seq = np.random.SeedSequence(cfg.seed).spawn(4)
        tie_seed = int(tie_seq.generate_state(1)[0])

        fit_set = d_train
        if d_val is None and cfg.eval_fraction > 0:
            fit_set, d_val = holdout_split(d_train, cfg.eval_fraction, seed=int(split_seq.generate_state(1)[0]))
            if not fit_set.records:
                fit_set, d_val = d_train, None
        if d_val is not None and not d_val.records:
            d_val = None
        if d_val is None:
            self.logger.info("No validation data, training runs every epoch and keeps the final parameters")

        model = init_params(
            self.kind,
            fit_set.players,
            cfg.dim,
            scale=cfg.init_scale,
            seed=int(init_seq.generate_state(1)[0]),
        )
        model.observed = fit_set.observed_players
        rng = np.random.default_rng(sample_seq)
        a, b, n_a, n_b = fit_set.arrays
        count = len(a)

        trace = TrainTrace(initial_objective=objective(model, fit_set, cfg))
        best_model: Optional[MatchupModel] = None
        best_accuracy = -math.inf
        stale_epochs = 0

        for epoch in range(1, cfg.epochs + 1):
            for index in rng.integers(count, size=count):
                self._step(model, int(a[index]), int(b[index]), int(n_a[index]), int(n_b[index]), count)

            objective_value = objective(model, fit_set, cfg)
            if not math.isfinite(objective_value) or not all(
                np.all(np.isfinite(values)) for values in model.arrays().values()
            ):
                self.logger.error(f"Parameters diverged at epoch {epoch}")
                raise TrainingDivergedError(
                    f"non-finite parameters at epoch {epoch} of {self.kind.value} training; "
                    f"learning rate {cfg.learning_rate} is likely too large",
                )

            val_accuracy = test_accuracy(model, d_val, tie_seed) if d_val is not None else None
            trace.record(objective_value, val_accuracy)
            self.logger.debug(f"epoch {epoch}: objective={objective_value:.6f} val_accuracy={val_accuracy}")

            if val_accuracy is None:
                continue
            # ties keep the later parameters but still count toward patience
            if val_accuracy >= best_accuracy:
                best_model, trace.best_epoch = model.copy(), epoch
            if val_accuracy > best_accuracy:
                best_accuracy, stale_epochs = val_accuracy, 0
            else:
                stale_epochs += 1
                if stale_epochs >= cfg.patience:
                    trace.stop_reason = StopReason.EARLY_STOPPING
                    self.logger.info(
                        f"Early stopping at epoch {epoch}, best validation accuracy {best_accuracy:.4f} "
                        f"at epoch {trace.best_epoch}",
                    )
                    break

        if trace.stop_reason is None:
            trace.stop_reason = StopReason.MAX_EPOCHS
        if best_model is None:
            best_model, trace.best_epoch = model, trace.epochs
        return best_model, trace

    def _step(self, model: MatchupModel, a: int, b: int, n_a: int, n_b: int, count: int) -> None:
        likelihood_grads = _tuple_gradients(model, a, b, n_a, n_b)
        penalty_grads = regularizer_gradients(model, self.cfg.lambdas)
        # the regularizer is spread over the count updates of one epoch
        step = {name: likelihood_grads[name] - penalty_grads[name] / count for name in likelihood_grads}

        if self.cfg.clip_norm > 0:
            norm = math.sqrt(sum(float(np.sum(values**2)) for values in step.values()))
            if norm > self.cfg.clip_norm:
                step = {name: values * (self.cfg.clip_norm / norm) for name, values in step.items()}

        for name, values in model.arrays().items():
            values += self.cfg.learning_rate * step[name]


def sgd_train(
    kind: Union[ModelKind, str],
    d_train: Dataset,
    cfg: TrainConfig,
    d_val: Optional[Dataset] = None,
) -> tuple[MatchupModel, TrainTrace]:
    return Trainer(kind=kind, cfg=cfg).fit(d_train=d_train, d_val=d_val)


def finite_difference_check(
    kind: Union[ModelKind, str],
    seed: int,
    dim: Optional[int] = None,
    trials: int = 1,
    step: float = 1e-5,
    n_players: int = 4,
) -> float:
    """
    Compares analytic tuple gradients against central differences.

    Args:
        kind (Union[ModelKind, str]): bt, bci, bcd or general.
        seed (int): Seed of the random parameters and tuples.
        dim (Optional[int]): Embedding dimension, defaults to the smallest valid one plus one.
        trials (int): Number of random (parameters, tuple) configurations.
        step (float): Finite-difference step.
        n_players (int): Size of the random player table.

    Returns:
        float: Worst relative error ``|g - fd| / max(1, |g|, |fd|)`` over every entry.
    """
    kind = ModelKind(kind)
    dim = kind.min_dim + 1 if dim is None else dim
    players = PlayerTable([f"p{index}" for index in range(n_players)])
    rng = np.random.default_rng(seed)
    worst = 0.0

    for _ in range(trials):
        model = init_params(kind, players, dim, scale=1.0, seed=int(rng.integers(2**32)))
        a, b = (int(player) for player in rng.choice(n_players, size=2, replace=False))
        n_a, n_b = (int(count) for count in rng.integers(0, 6, size=2))
        if n_a + n_b == 0:
            n_a = 1
        analytic = _tuple_gradients(model, a, b, n_a, n_b)

        for name, values in model.arrays().items():
            for index in np.ndindex(values.shape):
                original = values[index]
                values[index] = original + step
                upper = _tuple_log_likelihood(model, a, b, n_a, n_b)
                values[index] = original - step
                lower = _tuple_log_likelihood(model, a, b, n_a, n_b)
                values[index] = original
                numeric = (upper - lower) / (2 * step)
                exact = float(analytic[name][index])
                worst = max(worst, abs(exact - numeric) / max(1.0, abs(exact), abs(numeric)))

    LOGGER.info(f"Finite-difference check of {kind.value} (dim={dim}, trials={trials}): max relative error {worst:.3e}")
    return worst
