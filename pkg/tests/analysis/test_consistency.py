"""
Tests for verlindepy.analysis.consistency module.
"""

from unittest.mock import patch

import pytest

from verlindepy.analysis.consistency import (
    FAIL,
    PASS,
    SKIPPED,
    CheckReport,
    SweepConfig,
    check_remark_n1,
    check_schur,
    run_identity_suite,
    sweep_rows,
    sweep_tasks,
    table_row,
)
from verlindepy.core.validation import ConsistencyError, ValidationError
from verlindepy.formulas import verlinde


class TestCheckReport:
    """Tests for CheckReport bookkeeping."""

    def test_records_failure(self):
        def broken():
            raise ConsistencyError("boom")

        report = CheckReport(r=2, k_max=2, g_max=2)
        report.run("ok", lambda: True)
        report.run("bad", broken)
        report.skip("later")
        assert report.checks == {"ok": PASS, "bad": FAIL, "later": SKIPPED}
        assert report.messages["bad"] == "boom"
        assert report.first_failure == "bad"
        assert not report.passed

    def test_false_is_failure(self):
        report = CheckReport(r=2, k_max=2, g_max=2)
        report.run("no", lambda: False)
        assert report.first_failure == "no"


class TestIdentitySuite:
    """Tests for run_identity_suite."""

    def test_rank_two(self):
        report = run_identity_suite(2, 4, 2)
        assert report.passed, report.messages
        assert report.skipped_reason is None
        for name in ("schur_reduction", "pgl_identities", "level_one_closed_form", "fixed_point"):
            assert report.checks[name] == PASS

    def test_non_prime_rank(self):
        report = run_identity_suite(4, 4, 2, use_oracle=False)
        assert report.passed
        assert report.skipped_reason is not None
        assert report.checks["pgl_identities"] == SKIPPED
        assert report.checks["sl_integrality"] == PASS

    @pytest.mark.slow
    @pytest.mark.parametrize("r", [2, 3, 5])
    def test_desk_scale_with_oracle(self, r):
        report = run_identity_suite(r, 12, 3)
        assert report.passed, report.messages
        assert report.skipped_reason is None
        expected_skips = {"brute_scan"} if r == 5 else set()
        assert {n for n, v in report.checks.items() if v == SKIPPED} == expected_skips

    @pytest.mark.parametrize("r,k_max,g_max", [(6, 4, 2), (2, 13, 2), (2, 4, 4), (2, 4, 1)])
    def test_guards(self, r, k_max, g_max):
        with pytest.raises(ValidationError):
            run_identity_suite(r, k_max, g_max)

    def test_remark_n1_rule(self):
        assert check_remark_n1(3, 6)

    def test_schur_covers_every_level(self):
        calls = []
        original = verlinde.schur_character_check

        def record(ctx, point, d):
            calls.append((ctx.k, d))
            return original(ctx, point, d)

        with patch.object(verlinde, "schur_character_check", side_effect=record):
            assert check_schur(3, 4)
        levels = {k for k, _ in calls}
        assert levels == {0, 1, 2, 3, 4}
        assert (1, 0) in calls and (2, 0) in calls
        # d = 1, 2 only carry an SL component when 3 | k
        assert (4, 1) not in calls
        assert (3, 1) in calls and (3, 2) in calls


class TestSweeps:
    """Tests for sweep tables."""

    def test_tasks(self):
        tasks = sweep_tasks(SweepConfig(2, 4, [2]))
        assert len(tasks) == 8
        assert tasks[0] == (2, 0, 0, 2)
        assert (2, 1, 1, 2) not in tasks

    def test_row(self):
        row = table_row((2, 0, 4, 2))
        assert row["sl_dimension"] == "35"
        assert row["pgl_dimension"] == "5"
        assert "pgl_integrality" in row["checks"].split(";")

    def test_row_without_descent(self):
        row = table_row((2, 0, 2, 2))
        assert row["pgl_dimension"] == ""

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            SweepConfig(2, 4, [1])
        with pytest.raises(ValidationError):
            SweepConfig(2, 4, [2], jobs=0)

    @pytest.mark.slow
    def test_parallel_matches_serial(self):
        serial = sweep_rows(SweepConfig(3, 6, [2, 3]))
        parallel = sweep_rows(SweepConfig(3, 6, [2, 3], jobs=2))
        assert parallel == serial
