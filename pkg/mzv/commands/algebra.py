import click

from mzv.deps import command_config, emit, format_option, handle_errors
from mzv.hopf import antipode, coproduct, hshuffle
from mzv.parserio import parse_hvector
from mzv.stuffle import stuffle


@click.command("shuffle")
@click.argument("a")
@click.argument("b")
@format_option
@handle_errors
def shuffle_cmd(a: str, b: str, fmt: str) -> None:
    """Print the shuffle product A ⧢̃ B."""
    cfg = command_config(format=fmt)
    emit(hshuffle(parse_hvector(a), parse_hvector(b)), cfg)


@click.command("stuffle")
@click.argument("a")
@click.argument("b")
@format_option
@handle_errors
def stuffle_cmd(a: str, b: str, fmt: str) -> None:
    """Print the stuffle product A ∗ B."""
    cfg = command_config(format=fmt)
    emit(stuffle(parse_hvector(a), parse_hvector(b)), cfg)


@click.command("coproduct")
@click.argument("a")
@format_option
@handle_errors
def coproduct_cmd(a: str, fmt: str) -> None:
    """Print Δ̃(A)."""
    cfg = command_config(format=fmt)
    emit(coproduct(parse_hvector(a)), cfg)


@click.command("antipode")
@click.argument("a")
@format_option
@handle_errors
def antipode_cmd(a: str, fmt: str) -> None:
    """Print S(A)."""
    cfg = command_config(format=fmt)
    emit(antipode(parse_hvector(a)), cfg)
