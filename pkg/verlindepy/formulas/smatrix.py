# verlindepy/formulas/smatrix.py
"""
First row of the S-matrix for SL_r and the resolved row for PGL_r.

Only squared magnitudes are exact: |S_{0 lambda}|^2 = |delta(t_lambda)|^2 /
(r (k+r)^(r-1)). The PGL row keeps one entry per free orbit of the centre,
scaled by r^2, and r copies of the fixed weight (k/r) rho.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..analysis import oracle
from ..core.constants import FORMULA_CFT
from ..core.cyclotomic import CycloElem
from ..core.validation import ConsistencyError, ParameterValidator
from ..lattice.weights import (
    DominantWeight,
    LevelContext,
    center_orbits_on_Pk_prime,
    enumerate_Pk,
    weight_to_orbit,
)
from .query import DimResult
from .verlinde import VerlindeCalculator, default_calculator, vandermonde_sq

logger = logging.getLogger(__name__)


@dataclass
class SEntry:
    """One entry of an S-row, with its exact squared magnitude."""

    label: str
    weight: DominantWeight
    s0_squared: CycloElem
    orbit_members: Tuple[DominantWeight, ...] = ()
    multiplicity_note: str = ""
    copy_index: Optional[int] = None
    s0_float: Optional[float] = field(default=None, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        rational = self.s0_squared.as_rational()
        return {
            "label": self.label,
            "orbit_members": [list(w.marks) for w in self.orbit_members],
            "s0_squared": str(rational) if rational is not None else self.s0_squared.to_dict(),
            "s0_float": self.s0_float,
            "multiplicity_note": self.multiplicity_note,
        }


def _s0_squared(ctx: LevelContext, weight: DominantWeight) -> CycloElem:
    scale = Fraction(1, ctx.r * ctx.M ** (ctx.r - 1))
    return vandermonde_sq(ctx, weight_to_orbit(ctx, weight)) * scale


def _sum(entries: List[SEntry], order: int) -> CycloElem:
    total = CycloElem(order)
    for e in entries:
        total = total + e.s0_squared
    return total


def s_row_sl(ctx: LevelContext, with_float: bool = False) -> List[SEntry]:
    """
    |S_{0 lambda}|^2 for every dominant weight of level at most k.

    Raises:
        ConsistencyError: if an entry is not real or the row is not unitary
    """
    magnitudes = oracle.s_row_magnitudes(ctx) if with_float else None
    entries = []
    for idx, weight in enumerate(enumerate_Pk(ctx)):
        value = _s0_squared(ctx, weight)
        if not value.is_real():
            raise ConsistencyError(f"|S_0{weight}|^2 is not real: {value}")
        entries.append(
            SEntry(
                label=str(weight),
                weight=weight,
                s0_squared=value,
                orbit_members=(weight,),
                multiplicity_note="1",
                s0_float=float(magnitudes[idx]) if magnitudes is not None else None,
            )
        )
    total = _sum(entries, ctx.N)
    if total != 1:
        raise ConsistencyError(f"S-row of r={ctx.r} k={ctx.k} sums to {total}, not 1")
    logger.debug("S-row r=%d k=%d is unitary", ctx.r, ctx.k)
    return entries


def s_row_pgl(ctx: LevelContext, with_float: bool = False) -> List[SEntry]:
    """
    Resolved row: r^2 |S_{0 lambda}|^2 per free centre orbit of root-lattice
    weights, then r copies nu^(1..r) of |S_{0,(k/r) rho}|^2.
    """
    ParameterValidator.validate_descent(ctx.r, ctx.k)
    orbits = center_orbits_on_Pk_prime(ctx)
    entries = []
    for members in orbits.orbits:
        values = [_s0_squared(ctx, w) for w in members]
        if any(v != values[0] for v in values[1:]):
            raise ConsistencyError(
                f"|S_0 lambda|^2 is not constant on the orbit {[str(w) for w in members]}"
            )
        value = values[0] * (ctx.r * ctx.r)
        entries.append(
            SEntry(
                label=str(members[0]),
                weight=members[0],
                s0_squared=value,
                orbit_members=members,
                multiplicity_note=f"orbit of {len(members)}",
                s0_float=_float_entry(ctx, members[0], ctx.r) if with_float else None,
            )
        )
    fixed_value = _s0_squared(ctx, orbits.fixed)
    for i in range(1, ctx.r + 1):
        entries.append(
            SEntry(
                label=f"{orbits.fixed}^({i})",
                weight=orbits.fixed,
                s0_squared=fixed_value,
                orbit_members=(orbits.fixed,),
                multiplicity_note=f"fixed point copy {i}",
                copy_index=i,
                s0_float=_float_entry(ctx, orbits.fixed, 1) if with_float else None,
            )
        )
    return entries


def _float_entry(ctx: LevelContext, weight: DominantWeight, factor: int) -> float:
    return float(factor * oracle.s0_float(ctx, weight))


def cft_total(
    r: int, k: int, g: int, calculator: Optional[VerlindeCalculator] = None
) -> DimResult:
    """
    Sum of |S'_{0 lambda}|^(2-2g) over the resolved PGL row.

    Evaluated in the field of order k + r through the engine's cached
    |delta|^(2-2g) values, then compared with the PGL total.
    """
    calc = calculator or default_calculator()
    ParameterValidator.validate_rank(r)
    ParameterValidator.validate_level(k)
    ParameterValidator.validate_descent(r, k)
    ParameterValidator.validate_genus(g)
    ctx = LevelContext(r, k)
    orbits = center_orbits_on_Pk_prime(ctx)
    # |S'|^2 = r^2 |delta|^2 / (r M^(r-1)) on free orbits, |delta|^2 / (r M^(r-1)) on copies
    norm = Fraction(r, ctx.M ** (r - 1))
    total = CycloElem(ctx.M)
    for members in orbits.orbits:
        point = weight_to_orbit(ctx, members[0])
        total = total + calc.orbit_weight(ctx, point, g) * norm ** (1 - g)
    fixed_point = weight_to_orbit(ctx, orbits.fixed)
    fixed_norm = Fraction(1, r * ctx.M ** (r - 1))
    total = total + calc.orbit_weight(ctx, fixed_point, g) * (r * fixed_norm ** (1 - g))
    value = total.as_rational()
    if value is None:
        raise ConsistencyError(f"S-matrix sum r={r} k={k} g={g} is not rational")
    expected = calc.pgl_total(r, k, g).value
    if value != expected:
        raise ConsistencyError(
            f"S-matrix sum {value} differs from the PGL total {expected} "
            f"(r={r}, k={k}, g={g})"
        )
    logger.info("S-matrix sum equals the PGL total for r=%d k=%d g=%d", r, k, g)
    return DimResult(
        value=value,
        formula=FORMULA_CFT,
        query={"r": r, "k": k, "g": g},
        checks=["cft_identity", "integrality"],
        details={"free_orbits": len(orbits.orbits), "fixed_copies": r},
    )
