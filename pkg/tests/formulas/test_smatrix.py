"""
Tests for verlindepy.formulas.smatrix module.
"""

from fractions import Fraction

import pytest

from verlindepy.analysis import oracle
from verlindepy.core.validation import ValidationError
from verlindepy.formulas import verlinde
from verlindepy.formulas.smatrix import cft_total, s_row_pgl, s_row_sl
from verlindepy.lattice.weights import LevelContext


class TestSLRow:
    """Tests for the S-row of SL_r."""

    def test_level_one(self):
        entries = s_row_sl(LevelContext(2, 1))
        assert [e.s0_squared.as_rational() for e in entries] == [Fraction(1, 2)] * 2

    def test_rank_two_level_four(self):
        entries = s_row_sl(LevelContext(2, 4))
        values = [e.s0_squared.as_rational() for e in entries]
        assert values == [
            Fraction(1, 12), Fraction(1, 4), Fraction(1, 3), Fraction(1, 4), Fraction(1, 12)
        ]

    def test_rank_two_sine_form(self):
        for j, entry in enumerate(s_row_sl(LevelContext(2, 4))):
            assert float(oracle.sl2_s0_sine(4, j) ** 2) == pytest.approx(
                float(entry.s0_squared.as_rational())
            )

    def test_float_column(self):
        for entry in s_row_sl(LevelContext(3, 2), with_float=True):
            exact = oracle.evaluate(entry.s0_squared)
            assert entry.s0_float ** 2 == pytest.approx(float(exact.real), rel=1e-12)
            assert abs(float(exact.imag)) < 1e-30

    def test_to_dict(self):
        data = s_row_sl(LevelContext(2, 1))[0].to_dict()
        assert data["s0_squared"] == "1/2"
        assert data["orbit_members"] == [[0]]


class TestPGLRow:
    """Tests for the resolved row of PGL_r."""

    def test_rank_two_level_four(self):
        entries = s_row_pgl(LevelContext(2, 4))
        assert [e.label for e in entries] == ["(0)", "(2)^(1)", "(2)^(2)"]
        assert all(e.s0_squared == Fraction(1, 3) for e in entries)
        assert entries[1].copy_index == 1
        assert entries[0].orbit_members[1].marks == (4,)

    def test_row_is_unitary(self):
        entries = s_row_pgl(LevelContext(3, 3), with_float=True)
        total = sum(float(oracle.evaluate(e.s0_squared).real) for e in entries)
        assert total == pytest.approx(1.0)
        assert sum(e.s0_float ** 2 for e in entries) == pytest.approx(1.0)

    def test_needs_descent(self):
        with pytest.raises(ValidationError):
            s_row_pgl(LevelContext(2, 2))


class TestCFTTotal:
    """Tests for the S-matrix form of the PGL total."""

    def test_rank_two(self):
        result = cft_total(2, 4, 2)
        assert result.value == 9
        assert "cft_identity" in result.checks

    @pytest.mark.parametrize("r,k,g", [(2, 8, 3), (3, 3, 2), (3, 6, 2), (5, 5, 2)])
    def test_matches_total(self, r, k, g):
        assert cft_total(r, k, g).value.denominator == 1

    def test_rejects_genus_one(self):
        with pytest.raises(ValidationError):
            cft_total(2, 4, 1)


def _cft_points():
    points = []
    for r in (2, 3, 5):
        step = 2 * r if r % 2 == 0 else r
        for k in range(0, 13, step):
            for g in (2, 3):
                points.append((r, k, g))
    return points


@pytest.mark.slow
@pytest.mark.parametrize("r,k,g", _cft_points())
def test_cft_total_equals_pgl_total(r, k, g):
    assert cft_total(r, k, g).value == verlinde.pgl_total(r, k, g).value
