# verlindepy/analysis/oracle.py
"""
High-precision floating evaluation and brute-force enumerations.

Everything here is independent of the exact pipeline in ``verlindepy.formulas``:
roots of unity are evaluated numerically with mpmath, phases are rebuilt from
their definition, and orbits are found by a direct scan. The results are only
ever compared against exact values, never substituted for them.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional

import mpmath
import numpy as np

from ..core.constants import (
    BRUTE_SCAN_MAX_LEVEL,
    BRUTE_SCAN_MAX_RANK,
    DEFAULT_PRECISION_BITS,
    DEFAULT_TOL_ABS,
    DEFAULT_TOL_REL,
)
from ..core.cyclotomic import CycloElem
from ..core.validation import (
    ConsistencyError,
    ParameterValidator,
    PrecisionError,
    ValidationError,
)
from ..formulas.query import ModuliQuery
from ..lattice.weights import (
    DominantWeight,
    LevelContext,
    OrbitPoint,
    canonicalize,
    enumerate_Pk,
    enumerate_Tk,
    weight_to_orbit,
)

logger = logging.getLogger(__name__)


@dataclass
class PrecisionConfig:
    """Working precision and comparison tolerances of the oracle."""

    bits: int = DEFAULT_PRECISION_BITS
    tol_abs: float = DEFAULT_TOL_ABS
    tol_rel: float = DEFAULT_TOL_REL

    def __post_init__(self):
        ParameterValidator.validate_precision(self.bits, self.tol_abs, self.tol_rel)

    def tolerance(self, exact) -> mpmath.mpf:
        return mpmath.mpf(self.tol_abs) + mpmath.mpf(self.tol_rel) * abs(
            _to_mpf(exact)
        )


def _config(cfg: Optional[PrecisionConfig]) -> PrecisionConfig:
    return cfg if cfg is not None else PrecisionConfig()


def _to_mpf(value) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


# ---- numeric building blocks ------------------------------------------------


def evaluate(x: CycloElem, cfg: Optional[PrecisionConfig] = None) -> mpmath.mpc:
    """Numeric value of a cyclotomic element at zeta_N = exp(2 pi i / N)."""
    cfg = _config(cfg)
    with mpmath.workprec(cfg.bits):
        total = mpmath.mpc(0)
        for i, c in enumerate(x.coeffs):
            if c:
                total += _to_mpf(c) * mpmath.expjpi(mpmath.mpf(2 * i) / x.order)
        return +total


def vandermonde_sq_float(point: OrbitPoint) -> mpmath.mpf:
    """prod_{i<j} 4 sin^2(pi (a_i - a_j) / N) at the current working precision."""
    value = mpmath.mpf(1)
    exps = point.exponents
    for i in range(len(exps)):
        for j in range(i + 1, len(exps)):
            value *= 4 * mpmath.sinpi(mpmath.mpf(exps[i] - exps[j]) / point.N) ** 2
    return value


def _phase(r: int, center_class: int, d: int) -> mpmath.mpc:
    # ((-1)^(r-1) exp(2 pi i c / r))^(-d)
    return mpmath.expjpi(-d * ((r - 1) + mpmath.mpf(2 * center_class) / r))


def _orbit_sum(ctx: LevelContext, g: int, d: int, restricted: bool) -> mpmath.mpf:
    total = mpmath.mpc(0)
    points = sorted(enumerate_Tk(ctx), key=lambda p: p.exponents)
    for p in points:
        if restricted and p.center_class != ctx.target_class:
            continue
        phase = mpmath.mpf(1) if d == 0 else _phase(ctx.r, p.center_class, d)
        total += phase * vandermonde_sq_float(p) ** (1 - g)
    return total.real


# ---- floating counterparts of the exact formulas ------------------------------


def float_eval_sl(query: ModuliQuery, cfg: Optional[PrecisionConfig] = None) -> mpmath.mpf:
    """Numeric SL dimension; validity as for the exact evaluation."""
    cfg = _config(cfg)
    query.check_sl()
    r, g = query.r, query.g
    ctx = LevelContext(r, query.k)
    with mpmath.workprec(cfg.bits):
        scale = mpmath.mpf(r) ** (g - 1) * mpmath.mpf(ctx.M) ** ((r - 1) * (g - 1))
        return scale * _orbit_sum(ctx, g, query.d, restricted=False)


def float_eval_sl_sum(r: int, k: int, g: int, cfg: Optional[PrecisionConfig] = None):
    cfg = _config(cfg)
    if k % r:
        raise ValidationError(f"k={k} is not a multiple of r={r}")
    ctx = LevelContext(r, k)
    with mpmath.workprec(cfg.bits):
        scale = mpmath.mpf(r) ** g * mpmath.mpf(ctx.M) ** ((r - 1) * (g - 1))
        return scale * _orbit_sum(ctx, g, 0, restricted=True)


def float_eval_pgl(query: ModuliQuery, cfg: Optional[PrecisionConfig] = None) -> mpmath.mpf:
    """Numeric PGL component: r^-2g dim + (1 - r^-2g) (k/r + 1)^((r-1)(g-1))."""
    cfg = _config(cfg)
    query.check_pgl()
    r, k, g = query.r, query.k, query.g
    sl = float_eval_sl(query, cfg)
    with mpmath.workprec(cfg.bits):
        weight = mpmath.mpf(r) ** (-2 * g)
        trace = (mpmath.mpf(k) / r + 1) ** ((r - 1) * (g - 1))
        return weight * sl + (1 - weight) * trace


def float_eval_pgl_total(r: int, k: int, g: int, cfg: Optional[PrecisionConfig] = None):
    cfg = _config(cfg)
    ParameterValidator.validate_descent(r, k)
    ctx = LevelContext(r, k)
    with mpmath.workprec(cfg.bits):
        restricted = _orbit_sum(ctx, g, 0, restricted=True)
        base = (mpmath.mpf(k) / r + 1) ** ((r - 1) * (g - 1))
        rr = mpmath.mpf(r)
        return rr ** (1 - 2 * g) * base * (rr ** (r * (g - 1)) * restricted + rr ** (2 * g) - 1)


def sl2_sine_formula(d: int, k: int, g: int, cfg: Optional[PrecisionConfig] = None):
    """Rank-2 SL dimension as ((k+2)/2)^(g-1) sum_l (-1)^(d(l+1)) sin^(2-2g)(l pi/(k+2))."""
    cfg = _config(cfg)
    M = k + 2
    with mpmath.workprec(cfg.bits):
        total = mpmath.mpf(0)
        for l in range(1, M):
            sign = -1 if (d * (l + 1)) % 2 else 1
            total += sign * mpmath.sinpi(mpmath.mpf(l) / M) ** (2 - 2 * g)
        return (mpmath.mpf(M) / 2) ** (g - 1) * total


def pgl2_sine_formula(k: int, g: int, cfg: Optional[PrecisionConfig] = None):
    """
    PGL_2 total for 4 | k:
    2^(1-2g) (k/2+1)^(g-1) (sum over odd 0 < l < k+2 of sin^(2-2g)(l pi/(k+2)) + 2^(2g) - 1).
    """
    cfg = _config(cfg)
    ParameterValidator.validate_level(k)
    if k % 4:
        raise ValidationError(f"k={k} is not divisible by 4")
    if g < 2:
        raise ValidationError(f"Genus g must be at least 2, got {g}")
    M = k + 2
    with mpmath.workprec(cfg.bits):
        total = mpmath.mpf(0)
        for l in range(1, M, 2):
            total += mpmath.sinpi(mpmath.mpf(l) / M) ** (2 - 2 * g)
        two = mpmath.mpf(2)
        return two ** (1 - 2 * g) * (mpmath.mpf(k) / 2 + 1) ** (g - 1) * (
            total + two ** (2 * g) - 1
        )


# ---- S-row magnitudes --------------------------------------------------------


def s0_float(
    ctx: LevelContext, weight: DominantWeight, cfg: Optional[PrecisionConfig] = None
) -> mpmath.mpf:
    """|S_{0 lambda}| = |delta(t_lambda)| / (sqrt(r) (k+r)^((r-1)/2))."""
    cfg = _config(cfg)
    point = weight_to_orbit(ctx, weight)
    with mpmath.workprec(cfg.bits):
        return mpmath.sqrt(vandermonde_sq_float(point)) / (
            mpmath.sqrt(ctx.r) * mpmath.mpf(ctx.M) ** (mpmath.mpf(ctx.r - 1) / 2)
        )


def sl2_s0_sine(k: int, j: int, cfg: Optional[PrecisionConfig] = None) -> mpmath.mpf:
    """Rank-2 form S_{0j} = sin((j+1) pi/(k+2)) / sqrt(k/2 + 1)."""
    cfg = _config(cfg)
    with mpmath.workprec(cfg.bits):
        return mpmath.sinpi(mpmath.mpf(j + 1) / (k + 2)) / mpmath.sqrt(
            mpmath.mpf(k) / 2 + 1
        )


def s_row_magnitudes(ctx: LevelContext) -> np.ndarray:
    """Double-precision |S_{0 lambda}| for every weight, in enumeration order."""
    exps = np.array(
        [weight_to_orbit(ctx, w).exponents for w in enumerate_Pk(ctx)], dtype=np.int64
    )
    i, j = np.triu_indices(ctx.r, k=1)
    diffs = (exps[:, i] - exps[:, j]) / ctx.N
    squares = np.prod(4.0 * np.sin(np.pi * diffs) ** 2, axis=1)
    return np.sqrt(squares / (ctx.r * float(ctx.M) ** (ctx.r - 1)))


# ---- comparison ----------------------------------------------------------------


def confirm(exact, approx, cfg: Optional[PrecisionConfig] = None, what: str = "value"):
    """
    Check |approx - exact| <= tol_abs + tol_rel |exact|.

    Returns:
        the absolute difference

    Raises:
        ConsistencyError: when the oracle disagrees beyond tolerance
    """
    cfg = _config(cfg)
    with mpmath.workprec(cfg.bits):
        diff = abs(_to_mpf(approx) - _to_mpf(exact))
        if diff > cfg.tolerance(exact):
            raise ConsistencyError(
                f"Oracle disagrees on {what}: exact {exact}, "
                f"float {mpmath.nstr(approx, 30)} (difference {mpmath.nstr(diff, 5)})"
            )
    logger.debug("oracle confirms %s = %s", what, exact)
    return diff


def round_to_integer(approx, cfg: Optional[PrecisionConfig] = None) -> int:
    """Nearest integer, provided the value is within tol_abs of it."""
    cfg = _config(cfg)
    with mpmath.workprec(cfg.bits):
        value = _to_mpf(approx)
        nearest = int(mpmath.nint(value))
        if abs(value - nearest) > mpmath.mpf(cfg.tol_abs):
            raise PrecisionError(
                f"{mpmath.nstr(value, 30)} is not within {cfg.tol_abs} of an integer "
                f"at {cfg.bits} bits"
            )
    return nearest


# ---- brute force ---------------------------------------------------------------


def brute_scan_Tk(ctx: LevelContext) -> List[OrbitPoint]:
    """
    Admissible orbits by a direct scan.

    Looks at every r-element set of residues mod N that share one class mod r,
    keeps those summing to 0 mod N, and canonicalises. Guarded to small r, k.
    """
    if ctx.r > BRUTE_SCAN_MAX_RANK or ctx.k > BRUTE_SCAN_MAX_LEVEL:
        raise ValidationError(
            f"Brute scan limited to r <= {BRUTE_SCAN_MAX_RANK}, "
            f"k <= {BRUTE_SCAN_MAX_LEVEL} (got r={ctx.r}, k={ctx.k})"
        )
    found = set()
    for c in range(ctx.r):
        residues = range(c, ctx.N, ctx.r)
        for chosen in combinations(residues, ctx.r):
            if sum(chosen) % ctx.N == 0:
                found.add(canonicalize(chosen, ctx.N))
    points = [OrbitPoint(e, ctx.N) for e in sorted(found)]
    logger.debug("brute scan r=%d k=%d: %d orbits", ctx.r, ctx.k, len(points))
    return points


def sym_power_trace_brute(r: int, k: int) -> Fraction:
    """Sum of zeta_r^(sum of entries) over all size-k multisets of 0..r-1."""
    ParameterValidator.validate_positive(r, "r")
    ParameterValidator.validate_level(k)
    counts: Dict[int, int] = {}
    for multiset in combinations_with_replacement(range(r), k):
        e = sum(multiset) % r
        counts[e] = counts.get(e, 0) + 1
    value = CycloElem.from_exponents(r, counts).as_rational()
    if value is None:
        raise ConsistencyError(f"Symmetric power trace r={r} k={k} is not rational")
    return value
