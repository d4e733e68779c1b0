# verlindepy/formulas/query.py
"""
Query and result containers for the dimension formulas.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Tuple

from ..core.constants import LABEL_DIMENSION, LABEL_FORMAL
from ..core.validation import ParameterValidator


@dataclass(frozen=True)
class ModuliQuery:
    """Rank r, degree class d, power k of D and genus g of one computation."""

    r: int
    d: int
    k: int
    g: int

    @classmethod
    def from_raw(
        cls, r: int, d: int, k: int, g: int, formal: bool = False
    ) -> Tuple["ModuliQuery", List[str]]:
        """
        Validate ranges, reduce d modulo r and build a query.

        Returns:
            (query, list of warning messages)
        """
        ParameterValidator.validate_rank(r)
        ParameterValidator.validate_level(k)
        warnings = ParameterValidator.validate_genus(g, formal=formal)
        d, degree_warnings = ParameterValidator.normalize_degree(r, d)
        return cls(r, d, k, g), warnings + degree_warnings

    @property
    def delta(self) -> int:
        """gcd(r, d)."""
        return gcd(self.r, self.d)

    @property
    def is_formal(self) -> bool:
        return self.g < 2

    def check_sl(self) -> None:
        ParameterValidator.validate_sl_hypotheses(self.r, self.d, self.k)

    def check_pgl(self) -> None:
        ParameterValidator.validate_descent(self.r, self.k)

    def is_sl_valid(self) -> bool:
        return self.k % (self.r // self.delta) == 0

    def to_dict(self) -> Dict[str, int]:
        return {"r": self.r, "d": self.d, "k": self.k, "g": self.g}


@dataclass
class DimResult:
    """Exact value of one formula together with the checks it passed."""

    value: Fraction
    formula: str
    query: Dict[str, int] = field(default_factory=dict)
    checks: List[str] = field(default_factory=list)
    formal: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    @property
    def label(self) -> str:
        return LABEL_FORMAL if self.formal else LABEL_DIMENSION

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready form; exact values are strings."""
        data: Dict[str, Any] = dict(self.query)
        data.update(
            {
                "formula": self.formula,
                "label": self.label,
                "value": str(self.value),
                "is_integer": self.is_integer,
                "checks": list(self.checks),
            }
        )
        if self.details:
            data["details"] = {
                key: str(val) if isinstance(val, Fraction) else val
                for key, val in self.details.items()
            }
        return data
