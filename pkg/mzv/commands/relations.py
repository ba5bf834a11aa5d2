import click

from mzv import settings
from mzv.deps import (
    EXIT_CHECK_FAILED,
    command_config,
    emit,
    format_option,
    handle_errors,
    mode_option,
    terms_option,
)
from mzv.hcore import HVector
from mzv.mzvnum import check_relations_numeric, zeta_star_numeric
from mzv.parserio import parse_hvector, relation_latex, to_model
from mzv.schemas import (
    CheckStatus,
    NumericReport,
    OutputFormat,
    RelationsOutput,
    ZetaEvaluation,
)
from mzv.stuffle import EDSGenerator, eds_generators


def _numeric_lines(report: NumericReport) -> list[str]:
    lines = [
        f"{r.status.value:<4}  {r.value:+.3e}  {r.generator}" for r in report.residuals
    ]
    lines.append(
        f"max |ζ_N| = {report.max_abs:.3e} at N={report.terms}, "
        f"tolerance {report.tolerance:g}: {report.status.value}"
    )
    return lines


def _generator_line(generator: EDSGenerator, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.LATEX:
        return relation_latex(generator)
    return generator.value.to_text()


@click.command("relations")
@click.option(
    "--max-weight",
    type=click.IntRange(min=3, max=7),
    default=5,
    show_default=True,
)
@click.option(
    "--check-numeric",
    is_flag=True,
    help="Evaluate every generator with truncated sums.",
)
@terms_option
@click.option(
    "--tol",
    type=click.FloatRange(min=0, min_open=True),
    envvar="MZV_TOL",
    default=settings.default_tolerance,
    show_default=True,
)
@format_option
@handle_errors
def relations_cmd(
    max_weight: int, check_numeric: bool, terms: int, tol: float, fmt: str
) -> None:
    """List extended double shuffle generators [s]∗[t] − [s]⧢̃[t]."""
    cfg = command_config(format=fmt, max_weight=max_weight, terms=terms, tol=tol)
    generators = eds_generators(max_weight)
    report = (
        check_relations_numeric(max_weight, cfg.numeric, generators)
        if check_numeric
        else None
    )

    if cfg.format == OutputFormat.JSON:
        emit(
            RelationsOutput(
                generators=[to_model(g) for g in generators], numeric=report
            ),
            cfg,
        )
    else:
        for generator in generators:
            click.echo(_generator_line(generator, cfg.format))
        if report is not None:
            for line in _numeric_lines(report):
                click.echo(line)
    if report is not None and report.status == CheckStatus.FAIL:
        click.get_current_context().exit(EXIT_CHECK_FAILED)


@click.command("eval-zeta")
@click.argument("expression")
@terms_option
@mode_option
@format_option
@handle_errors
def eval_zeta_cmd(expression: str, terms: int, mode: str, fmt: str) -> None:
    """Numeric ζ_N of an admissible expression such as '[3]-[2,1]'."""
    cfg = command_config(format=fmt, terms=terms, mode=mode)
    v: HVector = parse_hvector(expression)
    value = zeta_star_numeric(v, cfg.numeric)
    if cfg.format == OutputFormat.JSON:
        emit(
            ZetaEvaluation(
                expression=v.to_text(), value=value, terms=cfg.terms, mode=cfg.mode
            ),
            cfg,
        )
    else:
        click.echo(repr(value))
