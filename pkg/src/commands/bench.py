"""Module building bench cli command"""

from typing import Optional

import click
from click import Context

from src.commands.options import build_train_config
from src.commands.options import emit
from src.commands.options import grid_from_flags
from src.commands.options import grid_options
from src.commands.options import output_options
from src.commands.options import parse_models
from src.commands.options import train_options
from src.evaluation.cross_validation import run_benchmark
from src.intransitivity.intransitivity import DEFAULT_CYCLE_CAP
from src.objects.models import ModelKind
from src.report.report import render_benchmark


@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--models",
    help="Comma-separated model kinds, one column each",
    default="naive,bt,bci,general",
    show_default=True,
    callback=parse_models,
)
@grid_options
@train_options
@click.option("--cap", help="Cycle cap of the attached statistics", default=DEFAULT_CYCLE_CAP, type=click.IntRange(min=0))
@output_options
@click.command("bench")
@click.pass_context
def bench(
    ctx: Context,
    dataset_path: str,
    models: list[ModelKind],
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
    """Cross-validate several models on one dataset and compare their test accuracy."""
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
    reports = run_benchmark(
        dataset_path,
        models,
        k,
        grid=grid_from_flags(dims, lambdas),
        seed=cfg.seed,
        cfg=cfg,
        cap=cap,
    )
    emit(render_benchmark(reports, output_format), out)
