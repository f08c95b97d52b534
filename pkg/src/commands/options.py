"""Options and helpers shared by the intransic subcommands"""

from itertools import product
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Optional

import click
from simple_logger.logger import get_logger

from src.evaluation.cross_validation import DEFAULT_DIMS
from src.evaluation.cross_validation import DEFAULT_LAMBDAS
from src.evaluation.cross_validation import GridPoint
from src.objects.configuration import Configuration
from src.objects.configuration import TrainConfig
from src.objects.models import ModelKind
from src.report.constants import OUTPUT_FORMATS

LOGGER = get_logger(__name__)

MODEL_CHOICE = click.Choice([kind.value for kind in ModelKind])


def parse_int_list(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[list[int]]:
    if value is None:
        return None
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f'"{value}" is not a comma-separated list of integers') from None


def parse_float_list(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[list[float]]:
    if value is None:
        return None
    try:
        return [float(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f'"{value}" is not a comma-separated list of numbers') from None


def parse_models(ctx: click.Context, param: click.Parameter, value: str) -> list[ModelKind]:
    try:
        return [ModelKind(item.strip()) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(
            f'"{value}" must list models among {", ".join(kind.value for kind in ModelKind)}',
        ) from None


def train_options(function: Callable[..., Any]) -> Callable[..., Any]:
    """
    Training hyperparameter flags. Flags left unset fall back to the --config file, then
    to $INTRANSIC_CONFIG, then to the TrainConfig defaults.
    """
    defaults = TrainConfig()
    options = [
        click.option(
            "--config",
            "config_path",
            help="JSON file holding training configuration fields",
            type=click.Path(exists=True, dir_okay=False),
        ),
        click.option(
            "--lambda",
            "regularization",
            help=(
                "Shared regularization weight of the three regularizers, "
                "replaced by the --lambdas grid in cv and bench "
                f"[default: {defaults.regularization}]"
            ),
            type=click.FLOAT,
        ),
        click.option(
            "--lambda1",
            help="Weight of the per-player norm regularizer, overrides the shared weight",
            type=click.FLOAT,
        ),
        click.option(
            "--lambda2",
            help="Weight of the interaction matrix regularizer, overrides the shared weight",
            type=click.FLOAT,
        ),
        click.option(
            "--lambda3",
            help="Weight of the intrinsic strength matrix regularizer, overrides the shared weight",
            type=click.FLOAT,
        ),
        click.option("--lr", help=f"SGD learning rate [default: {defaults.learning_rate}]", type=click.FLOAT),
        click.option("--epochs", help=f"Maximum number of epochs [default: {defaults.epochs}]", type=click.INT),
        click.option(
            "--patience",
            help=f"Epochs without validation improvement before stopping [default: {defaults.patience}]",
            type=click.INT,
        ),
        click.option(
            "--eval-fraction",
            help=(
                "Share of the training outcomes held out for early stopping and grid selection "
                f"[default: {defaults.eval_fraction}]"
            ),
            type=click.FLOAT,
        ),
        click.option(
            "--clip-norm",
            help=(
                "Maximum norm of one SGD step, 0 disables clipping and lets training diverge "
                f"[default: {defaults.clip_norm}]"
            ),
            type=click.FLOAT,
        ),
        click.option("--seed", help="Seed of every random choice [default: 0]", type=click.INT),
    ]
    for option in reversed(options):
        function = option(function)
    return function


def output_options(function: Callable[..., Any]) -> Callable[..., Any]:
    function = click.option(
        "--out",
        help="Also write the report to this file",
        type=click.Path(dir_okay=False, writable=True),
    )(function)
    return click.option(
        "--format",
        "output_format",
        help="Report format",
        type=click.Choice(OUTPUT_FORMATS),
        default="table",
        show_default=True,
    )(function)


def build_train_config(config_path: Optional[str], **overrides: Any) -> TrainConfig:
    """
    Merge the config file, $INTRANSIC_CONFIG and explicitly given flags.

    Args:
        config_path (Optional[str]): Path given with --config.
        **overrides: Flag values, None for flags that were not given.

    Returns:
        TrainConfig: The configuration used by the command.
    """
    renamed = {"lr": "learning_rate"}
    return Configuration(
        config_file_path=config_path,
        overrides={renamed.get(key, key): value for key, value in overrides.items()},
    ).train_config


def check_dim(kind: ModelKind, dim: int) -> None:
    if kind is not ModelKind.NAIVE and dim < kind.min_dim:
        raise click.BadParameter(f"the {kind.value} model needs dim >= {kind.min_dim}, got {dim}", param_hint="--dim")


def emit(text: str, out: Optional[str]) -> None:
    """Print a report and, when ``out`` is given, write it there too."""
    click.echo(text, nl=False)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        LOGGER.info(f"Report written to {out}")


def grid_options(function: Callable[..., Any]) -> Callable[..., Any]:
    """--k, --dims and --lambdas of the cross-validation commands."""
    function = click.option(
        "--lambdas",
        help=f"Comma-separated regularization weights of the grid [default: {','.join(map(str, DEFAULT_LAMBDAS))}]",
        callback=parse_float_list,
    )(function)
    function = click.option(
        "--dims",
        help=f"Comma-separated embedding dimensions of the grid [default: {','.join(map(str, DEFAULT_DIMS))}]",
        callback=parse_int_list,
    )(function)
    return click.option(
        "--k",
        help="Number of folds",
        default=3,
        show_default=True,
        type=click.IntRange(min=3),
    )(function)


def grid_from_flags(dims: Optional[list[int]], lambdas: Optional[list[float]]) -> list[GridPoint]:
    if dims is not None and not dims:
        raise click.BadParameter("at least one dimension is required", param_hint="--dims")
    if lambdas is not None and not lambdas:
        raise click.BadParameter("at least one regularization weight is required", param_hint="--lambdas")
    return list(product(dims or DEFAULT_DIMS, lambdas or DEFAULT_LAMBDAS))
