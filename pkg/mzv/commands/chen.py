from fractions import Fraction

import click

from mzv.chenfrac import chen_coproduct, eval_vector, mul_local, partial
from mzv.deps import command_config, emit, format_option, handle_errors
from mzv.parserio import parse_fracvector
from mzv.schemas import ChenEvaluation, OutputFormat, format_coefficient


@click.group("chen")
def chen() -> None:
    """Chen fractions ⟨s; x_i…⟩ written <[2,1];(1,3)>."""


@chen.command("product")
@click.argument("a")
@click.argument("b")
@format_option
@handle_errors
def product_cmd(a: str, b: str, fmt: str) -> None:
    """Locality product of two Chen fraction expressions."""
    cfg = command_config(format=fmt)
    emit(mul_local(parse_fracvector(a), parse_fracvector(b)), cfg)


@chen.command("partial")
@click.argument("variable", type=click.IntRange(min=1))
@click.argument("a")
@format_option
@handle_errors
def partial_cmd(variable: int, a: str, fmt: str) -> None:
    """−∂/∂x_VARIABLE of A, in the Chen basis."""
    cfg = command_config(format=fmt)
    emit(partial(variable, parse_fracvector(a)), cfg)


@chen.command("coproduct")
@click.argument("a")
@format_option
@handle_errors
def coproduct_cmd(a: str, fmt: str) -> None:
    cfg = command_config(format=fmt)
    emit(chen_coproduct(parse_fracvector(a)), cfg)


def _parse_assignment(
    ctx: click.Context, param: click.Parameter, values: tuple[str, ...]
) -> dict[int, Fraction]:
    assignment: dict[int, Fraction] = {}
    for item in values:
        variable, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError(item)
            assignment[int(variable)] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise click.BadParameter(f"expected i=p/q, got {item!r}") from None
    return assignment


@chen.command("eval")
@click.argument("a")
@click.option(
    "--assign",
    "-a",
    "assignment",
    multiple=True,
    callback=_parse_assignment,
    help="Variable value as i=p/q; repeat for each variable.",
)
@format_option
@handle_errors
def eval_cmd(a: str, assignment: dict[int, Fraction], fmt: str) -> None:
    """Evaluate A exactly at a rational point."""
    cfg = command_config(format=fmt)
    value = eval_vector(parse_fracvector(a), assignment)
    if cfg.format != OutputFormat.JSON:
        click.echo(str(value))
        return
    emit(
        ChenEvaluation(
            expression=a,
            assignment={v: format_coefficient(x) for v, x in assignment.items()},
            value=format_coefficient(value),
        ),
        cfg,
    )
