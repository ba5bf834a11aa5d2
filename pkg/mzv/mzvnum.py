"""
Double-precision evaluation of multiple zeta values by truncated sums.

ζ_N(s_1,…,s_k) = Σ_{N ≥ n_1 > ⋯ > n_k ≥ 1} n_1^{−s_1} ⋯ n_k^{−s_k}

is computed innermost-first with prefix accumulators, so a depth-k value costs
O(N·k). The fraction-sum cross-check sums Chen fraction values over the full
box [1, N]^k. It is restricted to depth ≤ 2, and at depth 2 to
N ≤ MAX_FRACTION_TERMS since the box has N² points.
"""

from collections.abc import Sequence

import numpy as np
from loguru import logger

from mzv.chenfrac import ChenFraction
from mzv.errors import DomainError
from mzv.hcore import (
    Composition,
    HVector,
    as_composition,
    composition_text,
    memo,
)
from mzv.schemas import (
    CheckStatus,
    NumericConfig,
    NumericMode,
    NumericReport,
    RelationResidual,
)
from mzv.stuffle import EDSGenerator, eds_generators, is_admissible

MAX_RELATION_WEIGHT = 7
MAX_FRACTION_DEPTH = 2
MAX_FRACTION_TERMS = 20_000
# elements per row block of the depth-2 box, about 32 MB of float64
_BOX_BLOCK = 1 << 22


def _require_admissible(s: Composition) -> None:
    if not s or not is_admissible(s):
        raise DomainError(f"ζ{composition_text(s)} diverges (needs s_1 >= 2)")


@memo(maxsize=256)
def _nested_sum(s: Composition, terms: int) -> float:
    n = np.arange(1, terms + 1, dtype=np.float64)
    # inner[n-1] holds the sum over the tail entries with n_j < n
    inner = np.ones(terms)
    for entry in reversed(s):
        summand = inner * n ** (-entry)
        inner = np.concatenate(([0.0], np.cumsum(summand)[:-1]))
    # smallest summands first
    return float(np.sum(summand[::-1]))


def zeta_truncated(s: Composition, cfg: NumericConfig) -> float:
    s = as_composition(s)
    _require_admissible(s)
    return _nested_sum(s, cfg.terms)


@memo(maxsize=64)
def _box_sum(s: Composition, terms: int) -> float:
    n = np.arange(1, terms + 1, dtype=np.float64)
    if len(s) == 1:
        return float(np.sum((n ** (-s[0]))[::-1]))
    a, b = s
    inner = n ** (-b)
    rows_per_block = max(1, _BOX_BLOCK // terms)
    total = 0.0
    # rows: the outer variable, largest first; columns: the innermost one
    for stop in range(terms, 0, -rows_per_block):
        rows = n[max(stop - rows_per_block, 0) : stop]
        block = np.add.outer(rows, n) ** (-a) @ inner
        total += float(np.sum(block[::-1]))
    return total


def zeta_via_fractions(
    s: Composition, variables: Sequence[int], cfg: NumericConfig
) -> float:
    """Σ over independent n ∈ [1, N]^k of ⟨s; x_{variables}⟩ at x = n."""
    fraction = ChenFraction(as_composition(s), tuple(variables))
    _require_admissible(fraction.exponents)
    if fraction.depth > MAX_FRACTION_DEPTH:
        raise DomainError(
            f"Fraction sums are limited to depth {MAX_FRACTION_DEPTH}, "
            f"got {fraction.depth}"
        )
    if fraction.depth == MAX_FRACTION_DEPTH and cfg.terms > MAX_FRACTION_TERMS:
        raise DomainError(
            f"Fraction sums cost N² terms; N is limited to {MAX_FRACTION_TERMS}, "
            f"got {cfg.terms}"
        )
    return _box_sum(fraction.exponents, cfg.terms)


def zeta_numeric(s: Composition, cfg: NumericConfig) -> float:
    if cfg.mode == NumericMode.FRACTIONS:
        return zeta_via_fractions(s, range(1, len(s) + 1), cfg)
    return zeta_truncated(s, cfg)


def zeta_star_numeric(v: HVector, cfg: NumericConfig) -> float:
    """Linear extension of ζ_N with 𝟏 ↦ 1."""
    for s in v.keys():
        if s and not is_admissible(s):
            raise DomainError(f"{composition_text(s)} is not admissible")
    return sum(
        (float(c) * (zeta_numeric(s, cfg) if s else 1.0) for s, c in v.items()),
        start=0.0,
    )


def check_relations_numeric(
    max_weight: int,
    cfg: NumericConfig,
    generators: Sequence[EDSGenerator] | None = None,
) -> NumericReport:
    """
    ζ_N of every generator up to `max_weight` against `cfg.tolerance`.

    The residual of a generator is pure truncation error. It shrinks like
    (log N)^(d-1)/N for support depth d, so deep generators need large N.
    """
    if max_weight > MAX_RELATION_WEIGHT:
        raise DomainError(
            f"Numeric relation checks stop at weight {MAX_RELATION_WEIGHT}"
        )
    residuals = []
    if generators is None:
        generators = eds_generators(max_weight)
    for generator in generators:
        value = zeta_star_numeric(generator.value, cfg)
        status = CheckStatus.PASS if abs(value) < cfg.tolerance else CheckStatus.FAIL
        residuals.append(
            RelationResidual(
                generator=generator.value.to_text(),
                value=value,
                tolerance=cfg.tolerance,
                status=status,
            )
        )
    max_abs = max((abs(r.value) for r in residuals), default=0.0)
    report = NumericReport(
        residuals=residuals,
        max_abs=max_abs,
        tolerance=cfg.tolerance,
        terms=cfg.terms,
        status=CheckStatus.PASS if max_abs < cfg.tolerance else CheckStatus.FAIL,
    )
    logger.info(
        "{} generators up to weight {} at N={}: max |ζ| = {:.3e} ({})",
        len(residuals),
        max_weight,
        cfg.terms,
        max_abs,
        report.status,
    )
    if report.status == CheckStatus.FAIL:
        worst = max(residuals, key=lambda r: abs(r.value))
        logger.warning(
            "Largest residual {:.3e} from {}; raise --terms to shrink it",
            worst.value,
            worst.generator,
        )
    return report
