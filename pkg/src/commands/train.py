"""Module building train cli command"""

from typing import Optional

import click
from click import Context

from src.commands.options import MODEL_CHOICE
from src.commands.options import build_train_config
from src.commands.options import check_dim
from src.commands.options import train_options
from src.evaluation.accuracy import test_accuracy
from src.objects.dataset import read_dataset
from src.objects.models import ModelKind
from src.objects.models import save_model
from src.training.trainer import objective
from src.training.trainer import sgd_train


@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--model", "model_kind", help="Model to train", type=MODEL_CHOICE, default="general", show_default=True)
@click.option("--dim", help="Embedding dimension [default: 2]", type=click.INT)
@train_options
@click.option("--out", help="Where the checkpoint is written", required=True, type=click.Path(dir_okay=False))
@click.option("--trace", "trace_path", help="Write the per-epoch trace as CSV", type=click.Path(dir_okay=False))
@click.command("train")
@click.pass_context
def train(
    ctx: Context,
    dataset_path: str,
    model_kind: str,
    dim: Optional[int],
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
    out: str,
    trace_path: Optional[str],
) -> None:
    """Train a matchup model by regularized maximum likelihood and save a checkpoint."""
    kind = ModelKind(model_kind)
    cfg = build_train_config(
        config_path,
        dim=dim,
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
    check_dim(kind, cfg.dim)

    dataset = read_dataset(dataset_path)
    model, trace = sgd_train(kind, dataset, cfg)
    save_model(model, out)
    if trace_path:
        trace.to_csv(trace_path)

    click.echo(f"model={kind.value} epochs={trace.epochs} stop={trace.stop_reason.value if trace.stop_reason else '-'}")
    click.echo(f"objective={objective(model, dataset, cfg):.6f}")
    click.echo(f"train_accuracy={test_accuracy(model, dataset, cfg.seed):.4f}")
    click.echo(f"checkpoint={out}")
