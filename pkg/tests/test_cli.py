"""
Tests for the verlindepy command line.
"""

import json
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from verlindepy import __version__
from verlindepy.analysis.consistency import FAIL, PASS, CheckReport
from verlindepy.cli import main
from verlindepy.core.constants import (
    EXIT_CHECK_FAILED,
    EXIT_INCONSISTENT,
    EXIT_INVALID_INPUT,
    EXIT_OK,
)
from verlindepy.core.validation import ConsistencyError


@pytest.fixture
def runner():
    return CliRunner()


def _json(result):
    assert result.exit_code == EXIT_OK, result.output
    return json.loads(result.output)


class TestQueries:
    """Tests for the single-query commands."""

    def test_sl_dim(self, runner):
        data = _json(runner.invoke(main, ["sl-dim", "--r", "2", "--d", "0", "--k", "4", "--g", "2"]))
        assert data["command"] == "sl-dim"
        assert data["results"][0]["value"] == "35"
        assert set(data["checks"].values()) == {"pass"}
        assert data["inputs"] == {"r": 2, "d": 0, "k": 4, "g": 2}

    def test_sl_dim_with_oracle(self, runner):
        data = _json(runner.invoke(
            main, ["sl-dim", "--r", "2", "--d", "1", "--k", "4", "--g", "2", "--float", "--bits", "128"]
        ))
        assert data["results"][0]["value"] == "19"
        assert data["checks"]["oracle_agreement"] == "pass"
        assert "float" in data["results"][0]

    def test_sl_sum(self, runner):
        data = _json(runner.invoke(main, ["sl-sum", "--r", "2", "--k", "4", "--g", "2"]))
        assert data["results"][0]["value"] == "54"

    def test_pgl_dim_and_total(self, runner):
        data = _json(runner.invoke(main, ["pgl-dim", "--r", "2", "--d", "1", "--k", "4", "--g", "2"]))
        assert data["results"][0]["value"] == "4"
        data = _json(runner.invoke(main, ["pgl-total", "--r", "2", "--k", "4", "--g", "2", "--float"]))
        assert data["results"][0]["value"] == "9"
        assert data["checks"]["sine_form_agreement"] == "pass"

    def test_trace(self, runner):
        data = _json(runner.invoke(main, ["trace", "--r", "2", "--d", "1", "--k", "4", "--g", "2"]))
        assert data["results"][0]["value"] == "3"

    def test_degree_warning(self, runner, tmp_path):
        out = tmp_path / "sl.json"
        result = runner.invoke(
            main, ["sl-dim", "--r", "2", "--d", "3", "--k", "4", "--g", "2", "--out", str(out)]
        )
        assert result.exit_code == EXIT_OK
        assert "reduced" in result.output
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["inputs"]["d"] == 1
        assert data["warnings"]

    def test_n1(self, runner, tmp_path):
        out = tmp_path / "n1.json"
        result = runner.invoke(main, ["n1", "--r", "3", "--k", "3", "--out", str(out)])
        assert result.exit_code == EXIT_OK
        payload = json.loads(out.read_text(encoding="utf-8"))["results"][0]
        assert payload["value"] == "8/3"
        assert payload["verdict"] == "not an integer"


class TestExitCodes:
    """Tests for the exit-code contract."""

    def test_invalid_power(self, runner):
        result = runner.invoke(main, ["sl-dim", "--r", "2", "--d", "1", "--k", "1", "--g", "2"])
        assert result.exit_code == EXIT_INVALID_INPUT
        assert "Invalid input" in result.output

    def test_genus_one_needs_formal(self, runner):
        result = runner.invoke(main, ["sl-dim", "--r", "2", "--d", "0", "--k", "4", "--g", "1"])
        assert result.exit_code == EXIT_INVALID_INPUT

    def test_non_prime_pgl(self, runner):
        result = runner.invoke(main, ["pgl-dim", "--r", "4", "--d", "0", "--k", "8", "--g", "2"])
        assert result.exit_code == EXIT_INVALID_INPUT

    def test_inconsistency(self, runner):
        with patch(
            "verlindepy.formulas.verlinde.sl_dimension",
            side_effect=ConsistencyError("mismatch"),
        ):
            result = runner.invoke(main, ["sl-dim", "--r", "2", "--d", "0", "--k", "4", "--g", "2"])
        assert result.exit_code == EXIT_INCONSISTENT
        assert "mismatch" in result.output

    def test_check_passes(self, runner, tmp_path):
        out = tmp_path / "check.json"
        result = runner.invoke(
            main, ["check", "--r", "2", "--k-max", "4", "--g-max", "2", "--no-oracle", "--out", str(out)]
        )
        assert result.exit_code == EXIT_OK, result.output
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["checks"]["pgl_identities"] == PASS

    def test_check_non_prime_rank(self, runner):
        result = runner.invoke(main, ["check", "--r", "4", "--k-max", "4", "--g-max", "2", "--no-oracle"])
        assert result.exit_code == EXIT_INVALID_INPUT
        assert "not prime" in result.output

    def test_check_failure(self, runner):
        report = CheckReport(r=2, k_max=4, g_max=2, checks={"bijection": PASS, "schur_reduction": FAIL})
        with patch("verlindepy.cli.run_identity_suite", return_value=report):
            result = runner.invoke(main, ["check", "--r", "2", "--k-max", "4"])
        assert result.exit_code == EXIT_CHECK_FAILED
        assert "schur_reduction" in result.output

    def test_check_guard(self, runner):
        result = runner.invoke(main, ["check", "--r", "7", "--k-max", "2"])
        assert result.exit_code == EXIT_INVALID_INPUT


class TestListings:
    """Tests for smatrix, orbits and table."""

    def test_smatrix_pgl(self, runner):
        data = _json(runner.invoke(main, ["smatrix", "--r", "2", "--k", "4", "--pgl", "--g", "2"]))
        assert [row["label"] for row in data["results"]] == ["(0)", "(2)^(1)", "(2)^(2)"]
        assert data["checks"]["cft_total"] == "9"

    def test_smatrix_genus_needs_pgl(self, runner):
        result = runner.invoke(main, ["smatrix", "--r", "2", "--k", "4", "--g", "2"])
        assert result.exit_code == EXIT_INVALID_INPUT
        assert "--pgl" in result.output

    def test_smatrix_sl_csv(self, runner):
        result = runner.invoke(main, ["smatrix", "--r", "2", "--k", "1", "--format", "csv"])
        assert result.exit_code == EXIT_OK
        lines = result.output.splitlines()
        assert lines[0].startswith("label,orbit_members,s0_squared")
        assert len(lines) == 3

    def test_orbits_markdown(self, runner):
        result = runner.invoke(main, ["orbits", "--r", "3", "--k", "2", "--format", "md"])
        assert result.exit_code == EXIT_OK
        assert result.output.splitlines()[0] == "| marks | exponents | N | center_class | in_root_lattice |"
        assert len(result.output.splitlines()) == 2 + 6

    def test_table_csv_to_file(self, runner, tmp_path):
        out = tmp_path / "table.csv"
        result = runner.invoke(
            main, ["table", "--r", "2", "--k-max", "4", "--g-list", "2", "--format", "csv", "--out", str(out)]
        )
        assert result.exit_code == EXIT_OK
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "r,d,k,g,sl_dimension,pgl_dimension,checks"
        assert len(lines) == 1 + 8

    def test_table_checks_come_from_rows(self, runner):
        data = _json(runner.invoke(main, ["table", "--r", "2", "--k-max", "4", "--g-list", "2"]))
        ran = set()
        for row in data["results"]:
            ran.update(row["checks"].split(";"))
        assert set(data["checks"]) == ran
        assert {"integrality", "pgl_integrality"} <= ran
        assert set(data["checks"].values()) == {"pass"}

    def test_table_bad_genus_list(self, runner):
        result = runner.invoke(main, ["table", "--r", "2", "--k-max", "4", "--g-list", "2,x"])
        assert result.exit_code == EXIT_INVALID_INPUT


class TestGroup:
    """Tests for group-level options."""

    def test_version(self, runner):
        result = runner.invoke(main, ["--version"])
        assert __version__ in result.output

    def test_verbose_configures_logging(self, runner):
        with patch("verlindepy.cli.logging.basicConfig") as basic:
            result = runner.invoke(main, ["-vv", "orbits", "--r", "2", "--k", "1"])
        assert result.exit_code == EXIT_OK
        assert basic.call_args.kwargs["level"] == 10
