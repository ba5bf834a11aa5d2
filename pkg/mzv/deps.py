"""
Shared plumbing for the `mzv` subcommands: common options, config
resolution, output and the mapping of library errors onto exit codes.
"""

from collections.abc import Callable
from functools import wraps
from typing import Any

import click
from loguru import logger
from pydantic import ValidationError

from mzv import settings
from mzv.errors import MzvError
from mzv.parserio import render
from mzv.schemas import CommandConfig, NumericMode, OutputFormat

# Verification failures; usage and parse errors exit with MzvError.exit_code.
EXIT_CHECK_FAILED = 1


# ---------------------------------------------------------------------------
# Options
# ---------------------------------------------------------------------------

format_option = click.option(
    "--format",
    "fmt",
    type=click.Choice([f.value for f in OutputFormat]),
    envvar="MZV_FORMAT",
    default=settings.output_format,
    show_default=True,
    help="Output format.",
)

terms_option = click.option(
    "--terms",
    type=click.IntRange(min=10),
    envvar="MZV_TERMS",
    default=settings.default_terms,
    show_default=True,
    help="Truncation N of the nested sums.",
)

mode_option = click.option(
    "--mode",
    type=click.Choice([m.value for m in NumericMode]),
    default=NumericMode.NESTED.value,
    show_default=True,
    help="nested: descending nested sums; fractions: Chen fraction box sums.",
)

jobs_option = click.option(
    "--jobs",
    type=click.IntRange(min=1),
    envvar="MZV_JOBS",
    default=settings.default_jobs,
    show_default=True,
    help="Independent checks run concurrently.",
)


# ---------------------------------------------------------------------------
# Config and output
# ---------------------------------------------------------------------------


def command_config(**options: Any) -> CommandConfig:
    """Validate one invocation's options; bad values are usage errors."""
    ctx = click.get_current_context()
    try:
        cfg = CommandConfig(command=ctx.command_path, **options)
    except ValidationError as exc:
        raise click.UsageError(str(exc), ctx) from exc
    ctx.obj = cfg
    return cfg


def emit(value: Any, cfg: CommandConfig) -> None:
    click.echo(render(value, cfg.format))


def handle_errors[**P, R](command: Callable[P, R]) -> Callable[P, R]:
    """Print library errors on stderr and exit with their code."""

    @wraps(command)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return command(*args, **kwargs)
        except MzvError as exc:
            logger.debug("{} failed: {}", command.__name__, exc.detail)
            click.echo(f"Error: {exc.detail}", err=True)
            click.get_current_context().exit(exc.exit_code)

    return wrapper
