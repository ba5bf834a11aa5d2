"""
Execution of independent verification checks.

Checks are zero-argument callables returning a CheckResult. With more than
one job they are fanned out to worker threads; gather preserves input order,
so the report never depends on scheduling.
"""

import asyncio
from collections.abc import Callable, Iterable, Sequence

from loguru import logger

from mzv.checks import CheckName
from mzv.schemas import CheckResult, CheckStatus

type Check = Callable[[], CheckResult]


def first_failure[T](
    check: CheckName,
    weight: int,
    cases: Iterable[T],
    holds: Callable[[T], bool],
    describe: Callable[[T], str] = str,
) -> CheckResult:
    """Evaluate `holds` on every case, stopping at the first counterexample."""
    for case in cases:
        if not holds(case):
            counterexample = describe(case)
            logger.warning(
                "Check {} failed at weight {}: {}", check, weight, counterexample
            )
            return CheckResult(
                check=check,
                weight=weight,
                status=CheckStatus.FAIL,
                counterexample=counterexample,
            )
    return CheckResult(check=check, weight=weight, status=CheckStatus.PASS)


async def gather_checks(checks: Sequence[Check], jobs: int) -> list[CheckResult]:
    semaphore = asyncio.Semaphore(jobs)

    async def _run(check: Check) -> CheckResult:
        async with semaphore:
            return await asyncio.to_thread(check)

    return list(await asyncio.gather(*(_run(c) for c in checks)))


def run_checks(checks: Sequence[Check], jobs: int = 1) -> list[CheckResult]:
    logger.info("Running {} checks with {} job(s)", len(checks), jobs)
    if jobs <= 1:
        return [check() for check in checks]
    return asyncio.run(gather_checks(checks, jobs))
