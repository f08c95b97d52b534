"""Module building evaluate cli command"""

from typing import Optional

import click
from click import Context

from src.commands.options import emit
from src.commands.options import output_options
from src.evaluation.accuracy import test_accuracy
from src.objects.dataset import read_dataset
from src.objects.models import load_model
from src.report.report import to_json


# arguments stacked on a built command are appended in application order, bottom first
@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("checkpoint_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", help="Seed of the tie-breaking coin flips", default=0, show_default=True, type=click.INT)
@output_options
@click.command("evaluate")
@click.pass_context
def evaluate(
    ctx: Context,
    checkpoint_path: str,
    dataset_path: str,
    seed: int,
    output_format: str,
    out: Optional[str],
) -> None:
    """Average test accuracy of a checkpoint on a dataset."""
    model = load_model(checkpoint_path)
    dataset = read_dataset(dataset_path).remap(model.players)
    accuracy = test_accuracy(model, dataset, seed)

    if output_format == "json":
        text = to_json({
            "accuracy": accuracy,
            "dataset": dataset.name,
            "model": model.kind.value,
            "n_outcomes": dataset.total_outcomes,
        })
    else:
        text = f"dataset={dataset.name} model={model.kind.value} outcomes={dataset.total_outcomes} accuracy={accuracy:.4f}\n"
    emit(text, out)
