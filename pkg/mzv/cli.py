"""The `mzv` command group."""

import click

from mzv import settings
from mzv.commands.algebra import antipode_cmd, coproduct_cmd, shuffle_cmd, stuffle_cmd
from mzv.commands.chen import chen
from mzv.commands.relations import eval_zeta_cmd, relations_cmd
from mzv.commands.verify import verify_cmd
from mzv.logging import setup_logging


@click.group()
@click.option(
    "--log-level",
    envvar="LOG_LEVEL",
    default=settings.LOG_LEVEL,
    show_default=True,
    type=click.Choice(
        ["TRACE", "DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False
    ),
    help="Diagnostics on stderr.",
)
def cli(log_level: str) -> None:
    """Shuffle and stuffle algebras of multiple zeta values."""
    setup_logging(log_level)


for command in (
    shuffle_cmd,
    stuffle_cmd,
    coproduct_cmd,
    antipode_cmd,
    verify_cmd,
    relations_cmd,
    eval_zeta_cmd,
    chen,
):
    cli.add_command(command)


def main() -> None:
    cli()
