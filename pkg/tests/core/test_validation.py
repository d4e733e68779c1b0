"""
Tests for verlindepy.core.validation module.
"""

import pytest

from verlindepy.core.validation import (
    ConsistencyError,
    ParameterValidator,
    PrecisionError,
    ValidationError,
)


class TestRanges:
    """Tests for rank, level, genus and degree checks."""

    def test_rank(self):
        ParameterValidator.validate_rank(2)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_rank(1)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_rank(True)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_rank(2.0)

    def test_level(self):
        ParameterValidator.validate_level(0)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_level(-1)

    def test_genus(self):
        assert ParameterValidator.validate_genus(2) == []
        with pytest.raises(ValidationError, match="formal"):
            ParameterValidator.validate_genus(1)
        warnings = ParameterValidator.validate_genus(1, formal=True)
        assert len(warnings) == 1
        with pytest.raises(ValidationError):
            ParameterValidator.validate_genus(0, formal=True)

    def test_normalize_degree(self):
        assert ParameterValidator.normalize_degree(3, 2) == (2, [])
        d, warnings = ParameterValidator.normalize_degree(3, 5)
        assert d == 2 and len(warnings) == 1
        d, warnings = ParameterValidator.normalize_degree(3, -1)
        assert d == 2 and warnings

    def test_range_and_positive(self):
        ParameterValidator.validate_range(3, "x", 1, 3)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_range(4, "x", 1, 3)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_positive(0, "jobs")


class TestHypotheses:
    """Tests for the hypotheses of the individual formulas."""

    def test_sl_hypotheses(self):
        ParameterValidator.validate_sl_hypotheses(4, 2, 2)
        ParameterValidator.validate_sl_hypotheses(4, 0, 5)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_sl_hypotheses(4, 1, 2)

    def test_prime_rank(self):
        ParameterValidator.validate_prime_rank(5)
        with pytest.raises(ValidationError, match="not prime"):
            ParameterValidator.validate_prime_rank(4)

    @pytest.mark.parametrize("r,k", [(2, 0), (2, 4), (2, 8), (3, 3), (3, 6), (5, 10)])
    def test_descent_ok(self, r, k):
        ParameterValidator.validate_descent(r, k)

    @pytest.mark.parametrize("r,k", [(2, 2), (2, 6), (3, 4), (4, 8)])
    def test_descent_fails(self, r, k):
        with pytest.raises(ValidationError):
            ParameterValidator.validate_descent(r, k)

    def test_trace_hypotheses(self):
        ParameterValidator.validate_trace_hypotheses(2, 1, 4)
        ParameterValidator.validate_trace_hypotheses(2, 0, 4)
        ParameterValidator.validate_trace_hypotheses(3, 1, 3)
        with pytest.raises(ValidationError, match="odd"):
            ParameterValidator.validate_trace_hypotheses(2, 1, 2)
        with pytest.raises(ValidationError, match="2r"):
            ParameterValidator.validate_trace_hypotheses(2, 0, 2)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_trace_hypotheses(3, 0, 4)

    def test_precision(self):
        ParameterValidator.validate_precision(64, 1e-20, 1e-30)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_precision(32, 1e-20, 1e-30)
        with pytest.raises(ValidationError):
            ParameterValidator.validate_precision(128, 0.0, 1e-30)


def test_precision_error_is_consistency_error():
    assert issubclass(PrecisionError, ConsistencyError)
