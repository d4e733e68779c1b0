# verlindepy/formulas/verlinde.py
"""
Exact evaluation of the Verlinde-type dimension and trace formulas.

All public values are expressed in powers k of the determinant bundle D. The
sums over diagonal matrices are evaluated in the cyclotomic field: every
squared Vandermonde modulus |delta(t)|^2 lives in the subfield of order k + r,
where the engine evaluates it once per affine class of gap sets and moves it
around by Galois conjugation. Phases live in the field of order r(k + r).
"""

import logging
from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from ..analysis import oracle
from ..core.constants import (
    FORMULA_N1,
    FORMULA_PGL,
    FORMULA_PGL_TOTAL,
    FORMULA_SL,
    FORMULA_SL_SUM,
    FORMULA_TRACE,
)
from ..core.cyclotomic import CycloElem, root_of_unity
from ..core.validation import ConsistencyError, ParameterValidator, ValidationError
from ..lattice.weights import LevelContext, OrbitPoint, enumerate_Tk
from .query import DimResult, ModuliQuery

logger = logging.getLogger(__name__)


# ---- orbit-level quantities ------------------------------------------------


def gap_set(ctx: LevelContext, point: OrbitPoint) -> Tuple[int, ...]:
    """Exponent differences divided by r, read mod k + r, relative to the last one."""
    last = point.exponents[-1]
    return tuple(((a - last) // ctx.r) % ctx.M for a in point.exponents)


def _chord_product(gaps: Sequence[int], M: int) -> CycloElem:
    """prod_{i<j} (2 - x^u - x^-u), u = gaps_i - gaps_j, in the field of order M."""
    result = CycloElem.scalar(M, 1)
    for i in range(len(gaps)):
        for j in range(i + 1, len(gaps)):
            u = (gaps[i] - gaps[j]) % M
            terms: Dict[int, int] = {0: 2}
            for e in (u, (-u) % M):
                terms[e] = terms.get(e, 0) - 1
            result = result * CycloElem.from_exponents(M, terms)
    return result


def vandermonde_sq_subfield(ctx: LevelContext, point: OrbitPoint) -> CycloElem:
    """|delta(t)|^2 as an element of the field of order k + r."""
    return _chord_product(gap_set(ctx, point), ctx.M)


def vandermonde_sq(ctx: LevelContext, point: OrbitPoint) -> CycloElem:
    """|delta(t)|^2 = delta(t) conj(delta(t)) in the field of order N."""
    return vandermonde_sq_subfield(ctx, point).embed(ctx.N)


def _leibniz(rows: Sequence[int], exponents: Sequence[int], N: int) -> CycloElem:
    """det[t_j^rows_i] expanded over permutations."""
    terms: Dict[int, int] = {}
    size = len(exponents)
    for perm in permutations(range(size)):
        inversions = sum(
            1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j]
        )
        e = sum(rows[i] * exponents[perm[i]] for i in range(size)) % N
        terms[e] = terms.get(e, 0) + (-1 if inversions % 2 else 1)
    return CycloElem.from_exponents(N, terms)


def vandermonde(ctx: LevelContext, point: OrbitPoint) -> CycloElem:
    """delta(t) = prod_{i<j} (t_i - t_j)."""
    return _leibniz(range(ctx.r - 1, -1, -1), point.exponents, ctx.N)


def phase_exponent(ctx: LevelContext, center_class: int, d: int) -> int:
    """e with zeta_N^e = ((-1)^(r-1) zeta_r^c)^(-d)."""
    base = ctx.M * center_class
    if ctx.r % 2 == 0:
        base += ctx.N // 2
    return (-d * base) % ctx.N


def schur_character_check(ctx: LevelContext, point: OrbitPoint, d: int) -> bool:
    """
    Compare the Schur determinant with ((-1)^(r-1) zeta)^(-d) delta(t).

    Rows of the determinant carry the powers k+r-1, ..., k+d, d-1, ..., 0.
    The comparison is made without dividing by delta(t), which is nonzero.
    """
    if not 0 <= d < ctx.r:
        raise ValidationError(f"Degree d={d} must lie in [0, {ctx.r})")
    rows = list(range(ctx.k + ctx.r - 1, ctx.k + d - 1, -1)) + list(range(d - 1, -1, -1))
    determinant = _leibniz(rows, point.exponents, ctx.N)
    phase = root_of_unity(ctx.N, phase_exponent(ctx, point.center_class, d))
    return determinant == phase * vandermonde(ctx, point)


def _units(M: int) -> List[int]:
    return [a for a in range(1, M) if gcd(a, M) == 1] or [1]


def affine_class(gaps: Sequence[int], M: int) -> Tuple[Tuple[int, ...], int]:
    """
    Smallest sorted image of the gap set under x -> a x + b, a a unit mod M.

    Returns:
        (class key, unit a) with key = a * gaps + b
    """
    best: Optional[Tuple[Tuple[int, ...], int]] = None
    for a in _units(M):
        scaled = [(a * x) % M for x in gaps]
        for pivot in scaled:
            key = tuple(sorted((y - pivot) % M for y in scaled))
            if best is None or key < best[0]:
                best = (key, a)
    assert best is not None
    return best


# ---- the engine --------------------------------------------------------------


class VerlindeCalculator:
    """
    Evaluates the formulas with caches shared across queries.

    Args:
        use_class_cache: evaluate |delta|^(2-2g) once per affine class of gap
            sets and transport it by Galois conjugation; when False every orbit
            is evaluated directly
    """

    def __init__(self, use_class_cache: bool = True):
        self.use_class_cache = use_class_cache
        self._class_values: Dict[Tuple[int, Tuple[int, ...], int], CycloElem] = {}
        self._class_sums: Dict[Tuple[int, int, int], Dict[int, CycloElem]] = {}
        self._orbits: Dict[Tuple[int, int], List[OrbitPoint]] = {}
        self.cache_hits = 0
        self.cache_misses = 0

    def clear_cache(self) -> None:
        self._class_values.clear()
        self._class_sums.clear()
        self._orbits.clear()
        self.cache_hits = self.cache_misses = 0

    def orbits(self, ctx: LevelContext) -> List[OrbitPoint]:
        key = (ctx.r, ctx.k)
        if key not in self._orbits:
            self._orbits[key] = enumerate_Tk(ctx)
        return self._orbits[key]

    def orbit_weight(self, ctx: LevelContext, point: OrbitPoint, g: int) -> CycloElem:
        """|delta(t)|^(2-2g) in the field of order k + r."""
        gaps = gap_set(ctx, point)
        if not self.use_class_cache:
            return _chord_product(gaps, ctx.M) ** (1 - g)
        key, unit = affine_class(gaps, ctx.M)
        cache_key = (ctx.M, key, g)
        value = self._class_values.get(cache_key)
        if value is None:
            self.cache_misses += 1
            value = _chord_product(key, ctx.M) ** (1 - g)
            self._class_values[cache_key] = value
        else:
            self.cache_hits += 1
        if unit == 1:
            return value
        return value.galois(pow(unit, -1, ctx.M))

    def class_sums(self, ctx: LevelContext, g: int) -> Dict[int, CycloElem]:
        """Sum of |delta|^(2-2g) over the orbits of each centre class."""
        key = (ctx.r, ctx.k, g)
        if key not in self._class_sums:
            sums = {c: CycloElem(ctx.M) for c in range(ctx.r)}
            for point in self.orbits(ctx):
                c = point.center_class
                sums[c] = sums[c] + self.orbit_weight(ctx, point, g)
            self._class_sums[key] = sums
            logger.debug(
                "r=%d k=%d g=%d: class sums ready (%d cached classes)",
                ctx.r, ctx.k, g, len(self._class_values),
            )
        return self._class_sums[key]

    def phased_sum(self, ctx: LevelContext, g: int, d: int) -> Fraction:
        """Sum over all orbits of ((-1)^(r-1) t^(k+r))^(-d) / |delta(t)|^(2g-2)."""
        total = CycloElem(ctx.N)
        for c, w in self.class_sums(ctx, g).items():
            if w.is_zero():
                continue
            phase = root_of_unity(ctx.N, phase_exponent(ctx, c, d))
            total = total + w.embed(ctx.N) * phase
        return _rational(total, f"orbit sum r={ctx.r} k={ctx.k} g={g} d={d}")

    def unsigned_sum(self, ctx: LevelContext, g: int) -> Fraction:
        total = CycloElem(ctx.M)
        for w in self.class_sums(ctx, g).values():
            total = total + w
        return _rational(total, f"unsigned orbit sum r={ctx.r} k={ctx.k} g={g}")

    def prime_sum(self, ctx: LevelContext, g: int) -> Fraction:
        """Sum of |delta|^(2-2g) over t^(k+r) = (-1)^(r-1) I."""
        w = self.class_sums(ctx, g)[ctx.target_class]
        return _rational(w, f"restricted orbit sum r={ctx.r} k={ctx.k} g={g}")

    # ---- SL_r -------------------------------------------------------------

    def sl_dimension(self, q: ModuliQuery, formal: bool = False) -> DimResult:
        _genus_warnings(q.g, formal)
        q.check_sl()
        ctx = LevelContext(q.r, q.k)
        raw = self.phased_sum(ctx, q.g, q.d)
        value = Fraction(q.r) ** (q.g - 1) * Fraction(ctx.M) ** ((q.r - 1) * (q.g - 1)) * raw
        checks = ["rational_total"]
        if q.d == 0:
            if self.unsigned_sum(ctx, q.g) != raw:
                raise ConsistencyError(
                    f"Degree-0 sum differs from the unsigned sum for {q.to_dict()}"
                )
            checks.append("phase_independence")
        if q.g >= 2:
            _require_integer(value, f"SL dimension {q.to_dict()}")
            checks.append("integrality")
        return DimResult(
            value=value,
            formula=FORMULA_SL,
            query=q.to_dict(),
            checks=checks,
            formal=q.g < 2,
            details={"orbit_sum": raw},
        )

    def sl_dimension_sum(self, r: int, k: int, g: int, formal: bool = False) -> DimResult:
        _genus_warnings(g, formal)
        ParameterValidator.validate_rank(r)
        ParameterValidator.validate_level(k)
        if k % r:
            raise ValidationError(
                f"k={k} is not a multiple of r={r}: not every degree admits D^k"
            )
        ctx = LevelContext(r, k)
        restricted = self.prime_sum(ctx, g)
        value = Fraction(r) ** g * Fraction(ctx.M) ** ((r - 1) * (g - 1)) * restricted
        components = [
            self.sl_dimension(ModuliQuery(r, d, k, g), formal).value for d in range(r)
        ]
        if sum(components) != value:
            raise ConsistencyError(
                f"Sum over degrees {sum(components)} differs from the restricted "
                f"sum {value} (r={r}, k={k}, g={g})"
            )
        checks = ["degree_sum_identity"]
        if g >= 2:
            _require_integer(value, f"SL degree sum r={r} k={k} g={g}")
            checks.append("integrality")
        logger.info("degree sum identity holds for r=%d k=%d g=%d: %s", r, k, g, value)
        return DimResult(
            value=value,
            formula=FORMULA_SL_SUM,
            query={"r": r, "k": k, "g": g},
            checks=checks,
            formal=g < 2,
            details={"components": [str(c) for c in components]},
        )

    # ---- traces and PGL_r --------------------------------------------------

    def trace_alpha(self, q: ModuliQuery, formal: bool = False) -> Fraction:
        """Trace of an order-r element of the r-torsion, in powers of D."""
        _genus_warnings(q.g, formal)
        ParameterValidator.validate_trace_hypotheses(q.r, q.d, q.k)
        k_line = q.k * q.delta // q.r
        return trace_in_line_bundle_power(q.r, q.d, k_line, q.g)

    def pgl_dimension(self, q: ModuliQuery, formal: bool = False) -> DimResult:
        _genus_warnings(q.g, formal)
        q.check_pgl()
        sl = self.sl_dimension(q, formal)
        trace = self.trace_alpha(q, formal)
        r, g = q.r, q.g
        scale = Fraction(r) ** (2 * g)
        line_one = sl.value / scale + (1 - 1 / scale) * trace
        base = (Fraction(q.k, r) + 1) ** ((r - 1) * (g - 1))
        raw = sl.details["orbit_sum"]
        line_two = base / scale * (Fraction(r) ** (r * (g - 1)) * raw + scale - 1)
        average = (sl.value + (scale - 1) * trace) / scale
        if not line_one == line_two == average:
            raise ConsistencyError(
                f"PGL expressions disagree for {q.to_dict()}: "
                f"{line_one}, {line_two}, {average}"
            )
        checks = sl.checks + ["line_agreement", "averaging"]
        if g >= 2:
            _require_integer(line_one, f"PGL dimension {q.to_dict()}")
            checks.append("pgl_integrality")
        logger.info("PGL component %s = %s", q.to_dict(), line_one)
        return DimResult(
            value=line_one,
            formula=FORMULA_PGL,
            query=q.to_dict(),
            checks=checks,
            formal=g < 2,
            details={
                "sl_dimension": sl.value,
                "trace": trace,
                "line_two": line_two,
                "average": average,
            },
        )

    def pgl_total(self, r: int, k: int, g: int, formal: bool = False) -> DimResult:
        _genus_warnings(g, formal)
        ParameterValidator.validate_rank(r)
        ParameterValidator.validate_level(k)
        ParameterValidator.validate_descent(r, k)
        ctx = LevelContext(r, k)
        restricted = self.prime_sum(ctx, g)
        base = (Fraction(k, r) + 1) ** ((r - 1) * (g - 1))
        value = (
            Fraction(r) ** (1 - 2 * g)
            * base
            * (Fraction(r) ** (r * (g - 1)) * restricted + Fraction(r) ** (2 * g) - 1)
        )
        components = [
            self.pgl_dimension(ModuliQuery(r, d, k, g), formal).value for d in range(r)
        ]
        if sum(components) != value:
            raise ConsistencyError(
                f"Sum of PGL components {sum(components)} differs from the total "
                f"{value} (r={r}, k={k}, g={g})"
            )
        checks = ["total_identity"]
        if g >= 2:
            _require_integer(value, f"PGL total r={r} k={k} g={g}")
            checks.append("integrality")
        return DimResult(
            value=value,
            formula=FORMULA_PGL_TOTAL,
            query={"r": r, "k": k, "g": g},
            checks=checks,
            formal=g < 2,
            details={"components": [str(c) for c in components]},
        )

    def remark_n1(self, r: int, k: int) -> DimResult:
        """
        Closed form 1 + ((k+1)^(r-1) - 1)/r^2 of the genus-one PGL count.

        The formal genus-one value of the component formula is reported next
        to it. The two agree for r = 2 and are checked there.
        """
        ParameterValidator.validate_rank(r)
        ParameterValidator.validate_level(k)
        ParameterValidator.validate_descent(r, k)
        closed = n1_closed_form(r, k)
        formal_value = self.pgl_dimension(ModuliQuery(r, 0, k, 1), formal=True).value
        agrees = closed == formal_value
        if r == 2 and not agrees:
            raise ConsistencyError(
                f"Genus-one closed form {closed} differs from the formal value "
                f"{formal_value} (k={k})"
            )
        checks = ["integrality_rule"] + (["formal_agreement"] if agrees else [])
        return DimResult(
            value=closed,
            formula=FORMULA_N1,
            query={"r": r, "k": k, "g": 1},
            checks=checks,
            formal=True,
            details={
                "formal_pgl_value": formal_value,
                "agrees_with_formal_evaluation": agrees,
                "r_squared_divides_k": k % (r * r) == 0,
            },
        )

    def trace_result(self, q: ModuliQuery) -> DimResult:
        value = self.trace_alpha(q)
        return DimResult(
            value=value,
            formula=FORMULA_TRACE,
            query=q.to_dict(),
            checks=["trace_hypotheses"],
            details={"line_bundle_power": q.k * q.delta // q.r},
        )


# ---- helpers ---------------------------------------------------------------


def _genus_warnings(g: int, formal: bool) -> None:
    # formal=True means the caller asked for the genus-one value
    for message in ParameterValidator.validate_genus(g, formal=formal):
        logger.debug(message)


def _rational(value: CycloElem, what: str) -> Fraction:
    result = value.as_rational()
    if result is None:
        raise ConsistencyError(f"{what} is not rational: {value}")
    return result


def _require_integer(value: Fraction, what: str) -> None:
    if value.denominator != 1 or value < 0:
        raise ConsistencyError(f"{what} is not a non-negative integer: {value}")


def trace_in_line_bundle_power(r: int, d: int, k_line: int, g: int) -> Fraction:
    """
    Trace of an order-r element on sections of the k_line-th power of L_d.

    For d coprime to r the value is (k_line + 1)^((r-1)(g-1)); for d = 0 it is
    (k_line/r + 1)^((r-1)(g-1)) and needs r | k_line.
    """
    exponent = (r - 1) * (g - 1)
    if d % r == 0:
        if k_line % r:
            raise ValidationError(f"Degree 0 needs r={r} to divide {k_line}")
        return (Fraction(k_line, r) + 1) ** exponent
    if gcd(r, d) != 1:
        raise ValidationError(f"Degree d={d} is neither 0 nor coprime to r={r}")
    return Fraction(k_line + 1) ** exponent


def n1_closed_form(r: int, k: int) -> Fraction:
    """1 + ((k+1)^(r-1) - 1)/r^2."""
    return 1 + Fraction((k + 1) ** (r - 1) - 1, r * r)


def sym_power_trace(r: int, k: int) -> Fraction:
    """Trace of S^k of diag(1, zeta_r, ..., zeta_r^(r-1)): 1 if r | k, else 0."""
    ParameterValidator.validate_positive(r, "r")
    ParameterValidator.validate_level(k)
    return Fraction(1 if k % r == 0 else 0)


sym_power_trace_brute = oracle.sym_power_trace_brute


def sym_power_trace_series(r: int, k: int) -> Fraction:
    """
    Same trace from the series identity s(T) lambda(-T) = 1.

    The exterior-power traces are the elementary symmetric functions of the
    r-th roots of unity, computed exactly.
    """
    ParameterValidator.validate_positive(r, "r")
    ParameterValidator.validate_level(k)
    one = CycloElem.scalar(r, 1)
    elementary = [one]
    for i in range(r):
        x = root_of_unity(r, i)
        elementary = [
            (elementary[j] if j < len(elementary) else CycloElem(r))
            + (x * elementary[j - 1] if j >= 1 else CycloElem(r))
            for j in range(len(elementary) + 1)
        ]
    complete = [one]
    for n in range(1, k + 1):
        h = CycloElem(r)
        for j in range(1, min(n, r) + 1):
            term = elementary[j] * complete[n - j]
            h = h + term if j % 2 else h - term
        complete.append(h)
    return _rational(complete[k], f"symmetric power trace r={r} k={k}")



# ---- module-level API on a shared engine -------------------------------------

_calculator = VerlindeCalculator()


def default_calculator() -> VerlindeCalculator:
    return _calculator


def sl_dimension(q: ModuliQuery, formal: bool = False) -> DimResult:
    return _calculator.sl_dimension(q, formal)


def sl_dimension_sum(r: int, k: int, g: int, formal: bool = False) -> DimResult:
    return _calculator.sl_dimension_sum(r, k, g, formal)


def trace_alpha(q: ModuliQuery, formal: bool = False) -> Fraction:
    return _calculator.trace_alpha(q, formal)


def pgl_dimension(q: ModuliQuery, formal: bool = False) -> DimResult:
    return _calculator.pgl_dimension(q, formal)


def pgl_total(r: int, k: int, g: int, formal: bool = False) -> DimResult:
    return _calculator.pgl_total(r, k, g, formal)


def remark_n1(r: int, k: int) -> DimResult:
    return _calculator.remark_n1(r, k)


def pgl2_sine_formula(k: int, g: int, cfg: Optional["oracle.PrecisionConfig"] = None):
    """Rank-2 sine form of the PGL total, evaluated by the oracle."""
    return oracle.pgl2_sine_formula(k, g, cfg)
