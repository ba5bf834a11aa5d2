from __future__ import annotations

import threading
import time
from functools import partial

import pytest

from mzv.checks import CHECK_DESCRIPTIONS, CHEN_CHECKS, HOPF_CHECKS, CheckName
from mzv.runner import first_failure, gather_checks, run_checks
from mzv.schemas import CheckResult, CheckStatus, VerificationReport


def passing(weight: int, delay: float = 0.0) -> CheckResult:
    time.sleep(delay)
    return CheckResult(check=CheckName.COASSOC, weight=weight, status=CheckStatus.PASS)


class TestFirstFailure:
    def test_all_cases_hold(self):
        result = first_failure(CheckName.GRADING, 2, [1, 2, 3], lambda n: n > 0)
        assert result.status == CheckStatus.PASS
        assert result.counterexample is None

    def test_stops_at_the_first_counterexample(self):
        seen = []

        def holds(n: int) -> bool:
            seen.append(n)
            return n < 2

        result = first_failure(
            CheckName.GRADING, 4, [1, 2, 3], holds, lambda n: f"#{n}"
        )
        assert result.status == CheckStatus.FAIL
        assert result.counterexample == "#2"
        assert result.weight == 4
        assert seen == [1, 2]


class TestRunChecks:
    def test_sequential(self):
        checks = [partial(passing, w) for w in range(3)]
        assert [r.weight for r in run_checks(checks)] == [0, 1, 2]

    def test_parallel_keeps_input_order(self):
        # later checks finish first
        checks = [partial(passing, w, 0.01 * (5 - w)) for w in range(5)]
        assert [r.weight for r in run_checks(checks, jobs=5)] == list(range(5))

    async def test_gather_respects_the_job_limit(self):
        lock = threading.Lock()
        running = peak = 0

        def tracked(weight: int) -> CheckResult:
            nonlocal running, peak
            with lock:
                running += 1
                peak = max(peak, running)
            time.sleep(0.01)
            with lock:
                running -= 1
            return passing(weight)

        results = await gather_checks([partial(tracked, w) for w in range(8)], jobs=2)
        assert len(results) == 8
        assert peak <= 2


class TestReport:
    def test_merge_keeps_the_first_seed(self):
        a = VerificationReport(results=[passing(0)])
        b = VerificationReport(results=[passing(1)], seed=5)
        merged = a.merge(b)
        assert merged.seed == 5
        assert [r.weight for r in merged.results] == [0, 1]

    def test_failures(self):
        failed = CheckResult(
            check=CheckName.ANTIPODE,
            weight=3,
            status=CheckStatus.FAIL,
            counterexample="[3]",
        )
        report = VerificationReport(results=[passing(0), failed])
        assert not report.passed
        assert report.failures == [failed]

    @pytest.mark.parametrize("name", list(CheckName))
    def test_every_check_is_described(self, name):
        assert CHECK_DESCRIPTIONS[name]

    def test_suites_partition_the_checks(self):
        assert set(HOPF_CHECKS) | set(CHEN_CHECKS) == set(CheckName)
        assert not set(HOPF_CHECKS) & set(CHEN_CHECKS)
