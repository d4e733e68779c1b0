# verlindepy/core/validation.py
"""
Exceptions and validation functions for dimension queries.
"""

from math import gcd
from typing import List, Tuple

from sympy import isprime

from .constants import MIN_PRECISION_BITS


class ValidationError(Exception):
    """An input violates a range or a hypothesis of the formulas."""

    pass


class ConsistencyError(Exception):
    """Two independent computations that must agree do not."""

    pass


class PrecisionError(ConsistencyError):
    """The floating oracle cannot resolve a value at the configured precision."""

    pass


class ParameterValidator:
    """Validates ranks, levels, genera and the hypotheses of each formula."""

    @staticmethod
    def validate_positive(value, name: str, min_value=0) -> None:
        """Validate that a value is greater than ``min_value``."""
        if value <= min_value:
            raise ValidationError(
                f"{name} must be greater than {min_value}, got {value}"
            )

    @staticmethod
    def validate_range(value, name: str, min_val, max_val) -> None:
        """Validate that a value is within a closed range."""
        if not (min_val <= value <= max_val):
            raise ValidationError(
                f"{name} must be between {min_val} and {max_val}, got {value}"
            )

    @staticmethod
    def validate_integer(value, name: str) -> None:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} must be an integer, got {value!r}")

    @staticmethod
    def validate_rank(r: int) -> None:
        ParameterValidator.validate_integer(r, "Rank r")
        if r < 2:
            raise ValidationError(f"Rank r must be at least 2, got {r}")

    @staticmethod
    def validate_level(k: int) -> None:
        ParameterValidator.validate_integer(k, "Level k")
        if k < 0:
            raise ValidationError(f"Level k must be non-negative, got {k}")

    @staticmethod
    def validate_genus(g: int, formal: bool = False) -> List[str]:
        """
        Validate the genus.

        Dimension statements need g >= 2; g = 1 is only accepted as a formal
        evaluation.

        Returns:
            List of warning messages
        """
        ParameterValidator.validate_integer(g, "Genus g")
        if g >= 2:
            return []
        if g == 1 and formal:
            return ["g = 1 evaluates a formal value, not a dimension"]
        if g == 1:
            raise ValidationError(
                "Genus g = 1 is only available as a formal evaluation "
                "(the result is not a dimension)"
            )
        raise ValidationError(f"Genus g must be at least 1, got {g}")

    @staticmethod
    def normalize_degree(r: int, d: int) -> Tuple[int, List[str]]:
        """
        Reduce the degree class modulo r.

        Returns:
            (reduced degree, list of warning messages)
        """
        ParameterValidator.validate_integer(d, "Degree d")
        reduced = d % r
        if reduced != d:
            return reduced, [
                f"Degree d={d} reduced modulo r={r} to {reduced}"
            ]
        return reduced, []

    @staticmethod
    def validate_sl_hypotheses(r: int, d: int, k: int) -> None:
        """Powers of D must be multiples of r / gcd(r, d)."""
        step = r // gcd(r, d)
        if k % step:
            raise ValidationError(
                f"k={k} is not a multiple of r/gcd(r,d)={step} "
                f"(only powers of D that are multiples of r/gcd(r,d) are defined)"
            )

    @staticmethod
    def validate_prime_rank(r: int) -> None:
        if not isprime(r):
            raise ValidationError(
                f"Rank r={r} is not prime (the quotient-group formulas assume r prime)"
            )

    @staticmethod
    def validate_descent(r: int, k: int) -> None:
        """D^k descends to the quotient iff r | k (r odd) or 2r | k (r even)."""
        ParameterValidator.validate_prime_rank(r)
        step = 2 * r if r % 2 == 0 else r
        if k % step:
            raise ValidationError(
                f"k={k} is not a multiple of {step}: D^k does not descend to the "
                f"quotient by the r-torsion (need r | k for r odd, 2r | k for r even)"
            )

    @staticmethod
    def validate_trace_hypotheses(r: int, d: int, k: int) -> None:
        """
        Hypotheses for the trace of an order-r element, in powers of D.

        Coprime d: the line-bundle exponent k/r must be an integer, even when r is
        even. d = 0: r | k, and 2r | k when r is even.
        """
        ParameterValidator.validate_prime_rank(r)
        ParameterValidator.validate_sl_hypotheses(r, d, k)
        if k % r:
            raise ValidationError(f"k={k} is not a multiple of r={r}")
        if r % 2 == 0 and k % (2 * r):
            if d == 0:
                raise ValidationError(
                    f"k={k} is not a multiple of 2r={2 * r} (degree 0, r even)"
                )
            raise ValidationError(
                f"k/r={k // r} is odd; r even requires an even line-bundle exponent"
            )

    @staticmethod
    def validate_precision(bits: int, tol_abs: float, tol_rel: float) -> None:
        ParameterValidator.validate_integer(bits, "Precision bits")
        if bits < MIN_PRECISION_BITS:
            raise ValidationError(
                f"Precision must be at least {MIN_PRECISION_BITS} bits, got {bits}"
            )
        ParameterValidator.validate_positive(tol_abs, "Absolute tolerance")
        ParameterValidator.validate_positive(tol_rel, "Relative tolerance")
