"""
Fixtures for log quieting, memo-cache resets and CLI invocation.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator

import pytest
from click.testing import CliRunner, Result
from loguru import logger

from mzv.cli import cli
from mzv.hcore import clear_caches

# ---------------------------------------------------------------------------
# Logging and memo tables
# ---------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def quiet_logs() -> Iterator[None]:
    """CLI runs install a sink on the runner's stderr; drop it afterwards."""
    logger.remove()
    yield
    logger.remove()


@pytest.fixture
def fresh_caches() -> Iterator[None]:
    """
    Empty every memo table around a test that patches the operators they
    are built from, so no mutated entry outlives it.
    """
    clear_caches()
    yield
    clear_caches()


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def invoke(runner: CliRunner) -> Callable[..., Result]:
    """invoke("coproduct", "[1,2]", env={"MZV_FORMAT": "json"})"""

    def _invoke(*args: str, env: dict[str, str] | None = None) -> Result:
        return runner.invoke(cli, list(args), env=env)

    return _invoke
