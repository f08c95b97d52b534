"""Module building cv cli command"""

from typing import Optional

import click
from click import Context

from src.commands.options import MODEL_CHOICE
from src.commands.options import build_train_config
from src.commands.options import emit
from src.commands.options import grid_from_flags
from src.commands.options import grid_options
from src.commands.options import output_options
from src.commands.options import train_options
from src.evaluation.cross_validation import cross_validate
from src.intransitivity.intransitivity import DEFAULT_CYCLE_CAP
from src.objects.dataset import read_dataset
from src.report.report import render_experiment


@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--model", "model_kind", help="Model to evaluate", type=MODEL_CHOICE, default="general", show_default=True)
@grid_options
@train_options
@click.option("--cap", help="Cycle cap of the attached statistics", default=DEFAULT_CYCLE_CAP, type=click.IntRange(min=0))
@output_options
@click.command("cv")
@click.pass_context
def cv(
    ctx: Context,
    dataset_path: str,
    model_kind: str,
    k: int,
    dims: Optional[list[int]],
    lambdas: Optional[list[float]],
    config_path: Optional[str],
    regularization: Optional[float],
    lambda1: Optional[float],
    lambda2: Optional[float],
    lambda3: Optional[float],
    lr: Optional[float],
    epochs: Optional[int],
    patience: Optional[int],
    eval_fraction: Optional[float],
    clip_norm: Optional[float],
    seed: Optional[int],
    cap: int,
    output_format: str,
    out: Optional[str],
) -> None:
    """k-fold cross-validation with a grid search over dimension and regularization."""
    cfg = build_train_config(
        config_path,
        regularization=regularization,
        lambda1=lambda1,
        lambda2=lambda2,
        lambda3=lambda3,
        lr=lr,
        epochs=epochs,
        patience=patience,
        eval_fraction=eval_fraction,
        clip_norm=clip_norm,
        seed=seed,
    )
    report = cross_validate(
        model_kind,
        read_dataset(dataset_path),
        k,
        grid=grid_from_flags(dims, lambdas),
        cfg=cfg,
        seed=cfg.seed,
        cap=cap,
    )
    emit(render_experiment(report, output_format), out)
