"""
Tests for verlindepy.core.polynomial module.
"""

from fractions import Fraction

import pytest
from sympy import Poly, Symbol, cyclotomic_poly

from verlindepy.core.polynomial import (
    cyclotomic_polynomial,
    degree,
    euler_phi,
    poly_divmod,
    poly_extended_gcd,
    poly_mul,
    poly_sub,
    reduce_modulo_cyclotomic,
    trim,
)


class TestBasics:
    """Tests for the list-of-coefficients helpers."""

    def test_trim_and_degree(self):
        assert trim([1, 2, 0, 0]) == [1, 2]
        assert trim([0, 0]) == []
        assert degree([0, 0]) == -1
        assert degree([3, 0, 5, 0]) == 2

    def test_mul_and_sub(self):
        # (1 + x)(1 - x) = 1 - x^2
        assert poly_mul([1, 1], [1, -1]) == [1, 0, -1]
        assert poly_mul([], [1, 2]) == []
        assert poly_sub([1, 2, 3], [1]) == [0, 2, 3]

    def test_divmod_exact(self):
        quot, rem = poly_divmod([-1, 0, 1], [-1, 1])
        assert quot == [1, 1]
        assert rem == []

    def test_divmod_with_remainder(self):
        # x^2 + 1 = x * x + 1
        quot, rem = poly_divmod([1, 0, 1], [0, 1])
        assert quot == [0, 1]
        assert rem == [1]

    def test_divmod_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            poly_divmod([1, 2], [0])

    def test_extended_gcd_gives_inverse(self):
        a = [2, 1]  # 2 + x
        b = list(cyclotomic_polynomial(5))
        g, s = poly_extended_gcd(a, b)
        assert len(trim(g)) == 1
        _, rem = poly_divmod(poly_sub(poly_mul(s, a), g), b)
        assert rem == []


class TestCyclotomic:
    """Tests for the cached cyclotomic polynomials."""

    def test_small_orders(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(2) == (1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    @pytest.mark.parametrize("n", [3, 8, 9, 15, 20, 21, 30, 36, 45, 60, 105])
    def test_matches_sympy(self, n):
        x = Symbol("x")
        expected = [int(c) for c in reversed(Poly(cyclotomic_poly(n, x), x).all_coeffs())]
        assert list(cyclotomic_polynomial(n)) == expected

    def test_euler_phi(self):
        assert euler_phi(7) == 6
        assert euler_phi(12) == 4
        assert euler_phi(1) == 1

    def test_invalid_order(self):
        with pytest.raises(ValueError):
            cyclotomic_polynomial(0)

    def test_reduction(self):
        # x^2 = -1 modulo x^2 + 1; x^4 = 1
        assert reduce_modulo_cyclotomic([0, 0, 1], 4) == [-1, 0]
        assert reduce_modulo_cyclotomic([0, 0, 0, 0, 1], 4) == [1, 0]
        # 1 + x + x^2 = 0 in order 3
        assert reduce_modulo_cyclotomic([1, 1, 1], 3) == [0, 0]

    def test_reduction_keeps_fractions(self):
        out = reduce_modulo_cyclotomic([Fraction(1, 2), 0, 0, 1], 3)
        assert out == [Fraction(3, 2), 0]
