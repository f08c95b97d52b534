import sys
import traceback
from typing import Any

import click
from click import Context
from simple_logger.logger import get_logger

from src.commands.bench import bench
from src.commands.cv import cv
from src.commands.evaluate import evaluate
from src.commands.stats import stats
from src.commands.synth import synth
from src.commands.train import train
from src.objects.exceptions import ConfigurationError
from src.objects.exceptions import DatasetError
from src.objects.exceptions import IntransicError
from src.objects.exceptions import SynthSpecError

LOGGER = get_logger(name="main-intransic")

# usage, input and configuration problems exit with 2, every other failure with 1
INPUT_ERRORS = (DatasetError, ConfigurationError, SynthSpecError, OSError)


class InputError(click.ClickException):
    exit_code = 2


class CommandFailure(click.ClickException):
    exit_code = 1


class IntransicGroup(click.Group):
    def invoke(self, ctx: Context) -> Any:
        try:
            return super().invoke(ctx)
        except (click.ClickException, click.exceptions.Exit, click.exceptions.Abort):
            raise
        except Exception as ex:
            if ctx.obj and ctx.obj.get("PDB"):
                ipdb = __import__("ipdb")  # Bypass debug-statements pre-commit hook
                traceback.print_exc()
                ipdb.post_mortem(sys.exc_info()[2])
            LOGGER.error(ex)
            if isinstance(ex, INPUT_ERRORS):
                raise InputError(str(ex)) from ex
            if isinstance(ex, IntransicError):
                raise CommandFailure(str(ex)) from ex
            raise


@click.group(cls=IntransicGroup)
@click.option(
    "--pdb",
    help="Drop to `ipdb` shell on exception",
    is_flag=True,
)
@click.pass_context
def main(ctx: Context, pdb: bool) -> None:
    """Measure intransitivity in pairwise matchup data and train matchup models."""
    ctx.ensure_object(dict)
    ctx.obj["PDB"] = pdb


main.add_command(stats)
main.add_command(train)
main.add_command(evaluate)
main.add_command(cv)
main.add_command(synth)
main.add_command(bench)

if __name__ == "__main__":
    main()
