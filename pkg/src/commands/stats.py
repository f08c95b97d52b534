"""Module building stats cli command"""

from typing import Optional

import click
from click import Context

from src.commands.options import emit
from src.commands.options import output_options
from src.intransitivity.intransitivity import DEFAULT_CYCLE_CAP
from src.intransitivity.intransitivity import stats as intrans_stats
from src.objects.dataset import read_dataset
from src.report.report import render_intrans


@click.argument("dataset_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--players",
    "players_path",
    help="Player table (id,label) of the dataset, defaults to the <stem>.players.csv sidecar",
    type=click.Path(exists=True, dir_okay=False),
)
@click.option(
    "--cap",
    help="Maximum number of elementary cycles to enumerate",
    default=DEFAULT_CYCLE_CAP,
    show_default=True,
    type=click.IntRange(min=0),
)
@click.option("--unlimited", help="Enumerate every elementary cycle, ignoring --cap", is_flag=True)
@output_options
@click.command("stats")
@click.pass_context
def stats(
    ctx: Context,
    dataset_path: str,
    players_path: Optional[str],
    cap: int,
    unlimited: bool,
    output_format: str,
    out: Optional[str],
) -> None:
    """Intransitivity statistics of a dataset's majority-dominance graph."""
    dataset = read_dataset(dataset_path, players_path=players_path)
    report = intrans_stats(dataset, cap=None if unlimited else cap)
    emit(render_intrans(report, output_format), out)
