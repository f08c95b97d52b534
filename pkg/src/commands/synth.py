"""Module building synth cli command"""

import click
from click import Context

from src.commands.options import parse_int_list
from src.synth.synth import SynthSpec
from src.synth.synth import generate
from src.synth.synth import write_game


@click.option(
    "--cycles",
    help="Comma-separated sizes of the planted cyclic cliques",
    default="3",
    show_default=True,
    callback=parse_int_list,
)
@click.option("--per-pair", help="Matches played on every planted edge", default=100, show_default=True, type=click.INT)
@click.option(
    "--noise",
    help="Probability that the dominant player of an edge loses a match",
    default=0.0,
    show_default=True,
    type=click.FLOAT,
)
@click.option("--seed", help="Seed of the match outcomes", default=0, show_default=True, type=click.INT)
@click.option(
    "--shared-pivot",
    help="Player p0 belongs to every clique instead of the cliques being disjoint",
    is_flag=True,
)
@click.option("--out", help="Where the winner,loser dataset is written", required=True, type=click.Path(dir_okay=False))
@click.command("synth")
@click.pass_context
def synth(
    ctx: Context,
    cycles: list[int],
    per_pair: int,
    noise: float,
    seed: int,
    shared_pivot: bool,
    out: str,
) -> None:
    """Generate a dataset with planted cyclic cliques joined by transitive edges."""
    game = generate(
        SynthSpec(cycles=tuple(cycles), per_pair=per_pair, noise=noise, seed=seed, shared_pivot=shared_pivot),
    )
    write_game(game, out)
    click.echo(f"players={len(game.players)} outcomes={len(game.outcomes)} ground_truth_triangles={game.triangles}")
