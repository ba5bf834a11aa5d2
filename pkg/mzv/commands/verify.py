import click

from mzv import settings
from mzv.chenfrac import check_chen
from mzv.checks import CHECK_DESCRIPTIONS
from mzv.deps import (
    EXIT_CHECK_FAILED,
    command_config,
    emit,
    format_option,
    handle_errors,
    jobs_option,
)
from mzv.hopf import check_hopf
from mzv.schemas import CheckStatus, OutputFormat, VerificationReport


def _report_lines(report: VerificationReport) -> list[str]:
    lines = []
    for result in report.results:
        line = f"{result.status.value:<4}  {result.check:<20} weight {result.weight}"
        if result.status == CheckStatus.FAIL:
            line += f"  counterexample {result.counterexample}"
        lines.append(line)
    summary = "all checks passed"
    if not report.passed:
        summary = f"{len(report.failures)} of {len(report.results)} checks failed"
    lines.append(f"{summary} (seed {report.seed})")
    return lines


@click.command("verify")
@click.option(
    "--max-weight",
    type=click.IntRange(min=1),
    default=5,
    show_default=True,
    help="Exhaust every composition and Chen fraction up to this weight.",
)
@click.option(
    "--seed",
    type=int,
    envvar="MZV_SEED",
    default=settings.default_seed,
    show_default=True,
    help="Seed for the random evaluation points of the product oracle.",
)
@jobs_option
@format_option
@handle_errors
def verify_cmd(max_weight: int, seed: int, jobs: int, fmt: str) -> None:
    """Run the composition Hopf suite and the Chen fraction suite."""
    cfg = command_config(format=fmt, max_weight=max_weight, seed=seed, jobs=jobs)
    report = check_hopf(max_weight, jobs=cfg.jobs).merge(
        check_chen(max_weight, seed=cfg.seed, jobs=cfg.jobs)
    )
    if cfg.format == OutputFormat.JSON:
        emit(report, cfg)
    else:
        for line in _report_lines(report):
            click.echo(line)
        for failure in report.failures:
            description = CHECK_DESCRIPTIONS[failure.check]
            click.echo(f"{failure.check}: {description}", err=True)
    if not report.passed:
        click.get_current_context().exit(EXIT_CHECK_FAILED)
