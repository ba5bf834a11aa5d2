"""
Truncated multiple zeta sums and the numeric double shuffle check.
"""

from __future__ import annotations

import math
from unittest.mock import patch

import pytest

from mzv import mzvnum
from mzv.errors import DomainError
from mzv.hcore import hvec
from mzv.hopf import hshuffle
from mzv.mzvnum import (
    MAX_FRACTION_TERMS,
    check_relations_numeric,
    zeta_numeric,
    zeta_star_numeric,
    zeta_truncated,
    zeta_via_fractions,
)
from mzv.schemas import CheckStatus, NumericConfig, NumericMode
from mzv.stuffle import eds_generators, stuffle

from .factories import ONE

ZETA_2 = math.pi**2 / 6
ZETA_3 = 1.2020569031595942
ZETA_4 = math.pi**4 / 90
N2000 = NumericConfig(terms=2000)


class TestNestedSums:
    def test_zeta_two(self):
        value = zeta_truncated((2,), NumericConfig(terms=1000))
        assert value < ZETA_2
        assert ZETA_2 - value < 1.1e-3

    def test_small_truncation_by_hand(self):
        # ζ_10(2,1) = Σ_{10 ≥ n > m ≥ 1} 1/(n² m)
        expected = sum(
            1 / (n * n * m) for n in range(1, 11) for m in range(1, n)
        )
        assert zeta_truncated((2, 1), NumericConfig(terms=10)) == pytest.approx(
            expected, rel=1e-12
        )

    def test_euler_identity(self):
        assert abs(zeta_truncated((2, 1), N2000) - zeta_truncated((3,), N2000)) < 5e-3

    @pytest.mark.parametrize("s", [(2,), (3, 1), (2, 1, 1)])
    def test_monotone_in_the_truncation(self, s):
        values = [zeta_truncated(s, NumericConfig(terms=n)) for n in (10, 100, 1000)]
        assert values == sorted(values)
        assert len(set(values)) == len(values)

    @pytest.mark.parametrize("m, limit", [(2, ZETA_2), (3, ZETA_3), (4, ZETA_4)])
    @pytest.mark.parametrize("terms", [10, 100, 1000])
    def test_depth_one_tail_bound(self, m, limit, terms):
        tail = limit - zeta_truncated((m,), NumericConfig(terms=terms))
        assert 0 < tail < terms ** (1 - m) / (m - 1)

    @pytest.mark.parametrize("bad", [ONE, (1,), (1, 2)])
    def test_divergent_compositions(self, bad):
        with pytest.raises(DomainError):
            zeta_truncated(bad, N2000)

    def test_config_bounds(self):
        with pytest.raises(ValueError):
            NumericConfig(terms=9)
        with pytest.raises(ValueError):
            NumericConfig(tolerance=0)


class TestFractionSums:
    def test_depth_one_matches_nested(self):
        cfg = NumericConfig(terms=1000)
        assert zeta_via_fractions((2,), [1], cfg) == pytest.approx(
            zeta_truncated((2,), cfg), abs=1e-6
        )

    def test_depth_two_converges_slowly(self):
        # the box misses a tail of order (log N + 1)/N
        target = zeta_truncated((3,), N2000)
        coarse = zeta_via_fractions((2, 1), [1, 2], NumericConfig(terms=300))
        fine = zeta_via_fractions((2, 1), [1, 2], N2000)
        assert coarse < fine < target
        assert target - coarse < 3e-2
        assert target - fine < 1e-2

    def test_box_sum_by_hand(self):
        expected = sum(
            1 / ((n + m) ** 2 * m) for n in range(1, 51) for m in range(1, 51)
        )
        value = zeta_via_fractions((2, 1), [1, 2], NumericConfig(terms=50))
        assert value == pytest.approx(expected, rel=1e-12)

    def test_row_blocks_do_not_change_the_sum(self):
        whole = mzvnum._box_sum.__wrapped__((2, 2), 60)
        with patch("mzv.mzvnum._BOX_BLOCK", 7 * 60):
            blocked = mzvnum._box_sum.__wrapped__((2, 2), 60)
        assert blocked == pytest.approx(whole, rel=1e-12)

    def test_depth_two_terms_are_capped(self):
        cfg = NumericConfig(terms=MAX_FRACTION_TERMS + 1)
        with pytest.raises(DomainError, match="limited"):
            zeta_via_fractions((2, 1), [1, 2], cfg)
        assert zeta_via_fractions((2,), [1], cfg) == pytest.approx(
            zeta_truncated((2,), cfg), abs=1e-9
        )

    def test_depth_three_refused(self):
        with pytest.raises(DomainError):
            zeta_via_fractions((2, 1, 1), [1, 2, 3], N2000)

    def test_non_admissible_refused(self):
        with pytest.raises(DomainError):
            zeta_via_fractions((1, 2), [1, 2], N2000)

    def test_mode_dispatch(self):
        cfg = NumericConfig(terms=500, mode=NumericMode.FRACTIONS)
        assert zeta_numeric((3,), cfg) == zeta_via_fractions((3,), [1], cfg)
        assert zeta_numeric((3,), N2000) == zeta_truncated((3,), N2000)


class TestLinearExtension:
    def test_unit_is_one(self):
        assert zeta_star_numeric(hvec(ONE), N2000) == 1.0

    def test_weight_three_generator(self):
        assert abs(zeta_star_numeric(hvec((3,), (-1, (2, 1))), N2000)) < 5e-3

    def test_non_admissible_support(self):
        with pytest.raises(DomainError):
            zeta_star_numeric(hvec((2,), (1, 1)), N2000)

    def test_stuffle_is_exact_on_truncations(self):
        product = zeta_truncated((2,), N2000) * zeta_truncated((3,), N2000)
        stuffled = zeta_star_numeric(stuffle(hvec((2,)), hvec((3,))), N2000)
        assert abs(product - stuffled) < 5e-3

    def test_shuffle_agrees_within_tolerance(self):
        product = zeta_truncated((2,), N2000) * zeta_truncated((3,), N2000)
        shuffled = zeta_star_numeric(hshuffle(hvec((2,)), hvec((3,))), N2000)
        assert abs(product - shuffled) < 5e-3


class TestRelationsNumeric:
    def test_weight_three_passes(self):
        report = check_relations_numeric(3, NumericConfig(terms=2000, tolerance=5e-3))
        assert report.status == CheckStatus.PASS
        assert [r.generator for r in report.residuals] == ["[3]-[2,1]"]
        assert report.terms == 2000

    def test_weight_five_passes_with_enough_terms(self):
        report = check_relations_numeric(
            5, NumericConfig(terms=200_000, tolerance=2e-2)
        )
        assert report.status == CheckStatus.PASS
        assert report.max_abs < 2e-2
        assert all(r.status == CheckStatus.PASS for r in report.residuals)

    def test_deep_generators_need_more_than_the_default_terms(self):
        report = check_relations_numeric(5, NumericConfig(terms=2000, tolerance=2e-2))
        assert report.status == CheckStatus.FAIL
        worst = max(report.residuals, key=lambda r: abs(r.value))
        assert "[2,1,1,1]" in worst.generator
        finer = check_relations_numeric(5, NumericConfig(terms=200_000))
        assert finer.max_abs < report.max_abs

    def test_precomputed_generators(self):
        generators = eds_generators(4)[:1]
        report = check_relations_numeric(4, N2000, generators)
        assert [r.generator for r in report.residuals] == [
            generators[0].value.to_text()
        ]

    def test_truncation_dominates_tiny_tolerance(self):
        report = check_relations_numeric(3, NumericConfig(terms=10, tolerance=1e-9))
        assert report.status == CheckStatus.FAIL
        assert report.max_abs > 1e-9
        assert report.residuals[0].status == CheckStatus.FAIL

    def test_weight_cap(self):
        with pytest.raises(DomainError):
            check_relations_numeric(8, N2000)
