# verlindepy/analysis/consistency.py
"""
Identity suite and sweep tables.

The suite re-derives every value through independent routes (other formulas,
brute-force enumeration, the floating oracle) and records a verdict per
identity. Sweeps produce one row per valid (d, k, g) and may fan out over
worker processes.
"""

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Tuple

from sympy import isprime

from ..core.constants import (
    BRUTE_SCAN_MAX_LEVEL,
    BRUTE_SCAN_MAX_RANK,
    CHECK_MAX_GENUS,
    CHECK_MAX_LEVEL,
    CHECK_MAX_RANK,
    SYM_POWER_MAX_LEVEL,
)
from ..core.polynomial import warm_up
from ..core.validation import ConsistencyError, ParameterValidator, ValidationError
from ..formulas import verlinde
from ..formulas.query import ModuliQuery
from ..formulas.smatrix import cft_total, s_row_sl
from ..lattice.weights import (
    LevelContext,
    center_action,
    center_orbits_on_Pk_prime,
    enumerate_Pk,
    enumerate_Tk,
    fixed_point_weight,
    is_root_lattice,
    orbit_to_weight,
    rotate_weight,
    weight_to_orbit,
)
from . import oracle

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

TABLE_COLUMNS = ("r", "d", "k", "g", "sl_dimension", "pgl_dimension", "checks")


@dataclass
class SweepConfig:
    """Range of a table sweep or of the identity suite."""

    r: int
    k_max: int
    g_list: List[int] = field(default_factory=lambda: [2, 3])
    jobs: int = 1

    def __post_init__(self):
        ParameterValidator.validate_rank(self.r)
        ParameterValidator.validate_level(self.k_max)
        for g in self.g_list:
            ParameterValidator.validate_genus(g)
        ParameterValidator.validate_positive(self.jobs, "jobs")

    @property
    def g_max(self) -> int:
        return max(self.g_list) if self.g_list else 1


@dataclass
class CheckReport:
    """Verdict per identity, in the order the identities ran."""

    r: int
    k_max: int
    g_max: int
    checks: Dict[str, str] = field(default_factory=dict)
    messages: Dict[str, str] = field(default_factory=dict)
    skipped_reason: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(v != FAIL for v in self.checks.values())

    @property
    def first_failure(self) -> Optional[str]:
        for name, verdict in self.checks.items():
            if verdict == FAIL:
                return name
        return None

    def run(self, name: str, check: Callable[[], bool]) -> None:
        try:
            ok = check()
            message = "" if ok else "identity returned False"
        except ConsistencyError as exc:
            ok, message = False, str(exc)
        self.checks[name] = PASS if ok else FAIL
        if message:
            self.messages[name] = message
        log = logger.info if ok else logger.error
        log("check %s: %s", name, self.checks[name])

    def skip(self, name: str) -> None:
        self.checks[name] = SKIPPED


# ---- individual identities ---------------------------------------------------


def check_enumeration(r: int, k_max: int) -> bool:
    for k in range(k_max + 1):
        ctx = LevelContext(r, k)
        points = enumerate_Tk(ctx)
        if len(points) != comb(k + r - 1, r - 1) or len(set(points)) != len(points):
            raise ConsistencyError(f"Orbit count wrong for r={r} k={k}: {len(points)}")
    return True


def check_bijection(r: int, k_max: int) -> bool:
    for k in range(k_max + 1):
        ctx = LevelContext(r, k)
        for w in enumerate_Pk(ctx):
            back = orbit_to_weight(ctx, weight_to_orbit(ctx, w))
            if back != w:
                raise ConsistencyError(f"Weight {w} comes back as {back} (r={r}, k={k})")
    return True


def check_brute_scan(r: int, k_max: int) -> bool:
    for k in range(min(k_max, BRUTE_SCAN_MAX_LEVEL) + 1):
        ctx = LevelContext(r, k)
        if set(enumerate_Tk(ctx)) != set(oracle.brute_scan_Tk(ctx)):
            raise ConsistencyError(f"Brute scan disagrees for r={r} k={k}")
    return True


def check_root_lattice(r: int, k_max: int) -> bool:
    for k in range(k_max + 1):
        ctx = LevelContext(r, k)
        for w in enumerate_Pk(ctx):
            in_prime = weight_to_orbit(ctx, w).center_class == ctx.target_class
            if is_root_lattice(ctx, w) != in_prime:
                raise ConsistencyError(f"Root-lattice test disagrees at {w} (r={r}, k={k})")
    return True


def check_center_action(r: int, k_max: int) -> bool:
    """Rotation of weights matches the centre action, has order r, keeps |delta|^2."""
    for k in range(k_max + 1):
        ctx = LevelContext(r, k)
        for w in enumerate_Pk(ctx):
            p = weight_to_orbit(ctx, w)
            moved = center_action(ctx, p)
            if moved != weight_to_orbit(ctx, rotate_weight(ctx, w)):
                raise ConsistencyError(f"Rotation of {w} does not match the centre action")
            if verlinde.vandermonde_sq_subfield(ctx, moved) != verlinde.vandermonde_sq_subfield(ctx, p):
                raise ConsistencyError(f"Centre action changes |delta|^2 at {w}")
            q = p
            for _ in range(r):
                q = center_action(ctx, q)
            if q != p:
                raise ConsistencyError(f"Centre action does not have order dividing r at {w}")
    return True


def check_schur(r: int, k_max: int) -> bool:
    """Every orbit at every level, for each degree class with an SL component."""
    for k in range(k_max + 1):
        ctx = LevelContext(r, k)
        degrees = [d for d in range(r) if ModuliQuery(r, d, k, 2).is_sl_valid()]
        for p in enumerate_Tk(ctx):
            for d in degrees:
                if not verlinde.schur_character_check(ctx, p, d):
                    raise ConsistencyError(
                        f"Schur determinant mismatch at {p.exponents}, d={d} (r={r}, k={k})"
                    )
    return True


def check_sl_values(
    r: int, k_max: int, genera: List[int], cfg: Optional[oracle.PrecisionConfig]
) -> bool:
    """Integrality of every component, with oracle confirmation."""
    for k in range(k_max + 1):
        for d in range(r):
            q0 = ModuliQuery(r, d, k, 2)
            if not q0.is_sl_valid():
                continue
            for g in genera:
                q = ModuliQuery(r, d, k, g)
                exact = verlinde.sl_dimension(q).value
                if cfg is not None:
                    oracle.confirm(exact, oracle.float_eval_sl(q, cfg), cfg, f"SL {q.to_dict()}")
                    if r == 2:
                        oracle.confirm(
                            exact, oracle.sl2_sine_formula(d, k, g, cfg), cfg,
                            f"SL sine form {q.to_dict()}",
                        )
    return True


def check_degree_sum(
    r: int, k_max: int, genera: List[int], cfg: Optional[oracle.PrecisionConfig]
) -> bool:
    for k in range(0, k_max + 1, r):
        for g in genera:
            total = verlinde.sl_dimension_sum(r, k, g).value
            if cfg is not None:
                oracle.confirm(total, oracle.float_eval_sl_sum(r, k, g, cfg), cfg, "SL sum")
    return True


def check_level_one(genera: List[int]) -> bool:
    for g in genera:
        value = verlinde.sl_dimension(ModuliQuery(2, 0, 1, g)).value
        if value != 2 ** g:
            raise ConsistencyError(f"Level-one rank-two value {value} != 2^{g}")
    return True


def check_sym_power(r: int) -> bool:
    for k in range(SYM_POWER_MAX_LEVEL + 1):
        closed = verlinde.sym_power_trace(r, k)
        brute = verlinde.sym_power_trace_brute(r, k)
        series = verlinde.sym_power_trace_series(r, k)
        if not closed == brute == series:
            raise ConsistencyError(
                f"Symmetric power trace r={r} k={k}: {closed}, {brute}, {series}"
            )
    return True


def check_unitarity(r: int, k_max: int) -> bool:
    for k in range(k_max + 1):
        s_row_sl(LevelContext(r, k))
    return True


def _descent_levels(r: int, k_max: int) -> List[int]:
    step = 2 * r if r % 2 == 0 else r
    return list(range(0, k_max + 1, step))


def check_pgl(
    r: int, k_max: int, genera: List[int], cfg: Optional[oracle.PrecisionConfig]
) -> bool:
    """Component lines, averaging, total and S-matrix identities."""
    for k in _descent_levels(r, k_max):
        for g in genera:
            for d in range(r):
                q = ModuliQuery(r, d, k, g)
                value = verlinde.pgl_dimension(q).value
                if cfg is not None:
                    oracle.confirm(value, oracle.float_eval_pgl(q, cfg), cfg, f"PGL {q.to_dict()}")
            total = verlinde.pgl_total(r, k, g).value
            cft_total(r, k, g)
            if cfg is not None:
                oracle.confirm(total, oracle.float_eval_pgl_total(r, k, g, cfg), cfg, "PGL total")
                if r == 2 and k % 4 == 0:
                    oracle.confirm(total, oracle.pgl2_sine_formula(k, g, cfg), cfg, "sine form")
    return True


def check_fixed_point(r: int, k_max: int) -> bool:
    for k in _descent_levels(r, k_max):
        ctx = LevelContext(r, k)
        orbits = center_orbits_on_Pk_prime(ctx)
        if any(len(o) != r for o in orbits.orbits):
            raise ConsistencyError(f"Centre orbit of wrong size for r={r} k={k}")
        value = verlinde.vandermonde_sq_subfield(ctx, weight_to_orbit(ctx, fixed_point_weight(ctx)))
        if value != r ** r:
            raise ConsistencyError(f"|delta|^2 at the fixed point is {value}, not r^r")
    return True


def check_remark_n1(r: int, k_max: int) -> bool:
    """Integer exactly when r^2 | k; the full evaluation runs up to k_max."""
    for k in _descent_levels(r, 4 * r * r):
        value = verlinde.n1_closed_form(r, k)
        if k <= k_max:
            value = verlinde.remark_n1(r, k).value
        if (value.denominator == 1) != (k % (r * r) == 0):
            raise ConsistencyError(f"Genus-one count for r={r} k={k} is {value}")
    return True


# ---- the suite -----------------------------------------------------------------


def run_identity_suite(
    r: int,
    k_max: int,
    g_max: int,
    cfg: Optional[oracle.PrecisionConfig] = None,
    use_oracle: bool = True,
) -> CheckReport:
    """
    Run every identity for one rank.

    Quotient-group identities need r prime; for other ranks they are marked
    skipped and ``skipped_reason`` says why.
    """
    ParameterValidator.validate_rank(r)
    ParameterValidator.validate_level(k_max)
    ParameterValidator.validate_range(r, "Rank r", 2, CHECK_MAX_RANK)
    ParameterValidator.validate_range(k_max, "k_max", 0, CHECK_MAX_LEVEL)
    ParameterValidator.validate_range(g_max, "g_max", 2, CHECK_MAX_GENUS)
    genera = list(range(2, g_max + 1))
    oracle_cfg = (cfg or oracle.PrecisionConfig()) if use_oracle else None
    warm_up({r * (k + r) for k in range(k_max + 1)} | {k + r for k in range(k_max + 1)})

    report = CheckReport(r=r, k_max=k_max, g_max=g_max)
    report.run("enumeration_count", lambda: check_enumeration(r, k_max))
    report.run("bijection", lambda: check_bijection(r, k_max))
    if r <= BRUTE_SCAN_MAX_RANK:
        report.run("brute_scan", lambda: check_brute_scan(r, k_max))
    else:
        report.skip("brute_scan")
    report.run("root_lattice", lambda: check_root_lattice(r, k_max))
    report.run("center_action", lambda: check_center_action(r, k_max))
    report.run("schur_reduction", lambda: check_schur(r, k_max))
    report.run("sl_integrality", lambda: check_sl_values(r, k_max, genera, oracle_cfg))
    report.run("degree_sum_identity", lambda: check_degree_sum(r, k_max, genera, oracle_cfg))
    if r == 2:
        report.run("level_one_closed_form", lambda: check_level_one(genera))
    report.run("sym_power_trace", lambda: check_sym_power(r))
    report.run("s_row_unitarity", lambda: check_unitarity(r, k_max))

    pgl_checks = ("pgl_identities", "fixed_point", "remark_n1_integrality")
    if not isprime(r):
        report.skipped_reason = (
            f"r={r} is not prime: quotient-group identities skipped, SL identities ran"
        )
        for name in pgl_checks:
            report.skip(name)
        return report
    report.run("pgl_identities", lambda: check_pgl(r, k_max, genera, oracle_cfg))
    report.run("fixed_point", lambda: check_fixed_point(r, k_max))
    report.run("remark_n1_integrality", lambda: check_remark_n1(r, k_max))
    return report


# ---- sweep tables --------------------------------------------------------------


def _pgl_valid(r: int, k: int) -> bool:
    try:
        ParameterValidator.validate_descent(r, k)
    except ValidationError:
        return False
    return True


def table_row(task: Tuple[int, int, int, int]) -> Dict[str, str]:
    """One row of the sweep table; exact values as strings."""
    r, d, k, g = task
    q = ModuliQuery(r, d, k, g)
    sl = verlinde.sl_dimension(q)
    row = {
        "r": str(r),
        "d": str(d),
        "k": str(k),
        "g": str(g),
        "sl_dimension": str(sl.value),
        "pgl_dimension": "",
    }
    checks = list(sl.checks)
    if _pgl_valid(r, k):
        pgl = verlinde.pgl_dimension(q)
        row["pgl_dimension"] = str(pgl.value)
        checks = pgl.checks
    row["checks"] = ";".join(checks)
    return row


def sweep_tasks(config: SweepConfig) -> List[Tuple[int, int, int, int]]:
    """Valid (r, d, k, g) in deterministic order: k, then d, then g."""
    tasks = []
    for k in range(config.k_max + 1):
        for d in range(config.r):
            if not ModuliQuery(config.r, d, k, 2).is_sl_valid():
                continue
            for g in config.g_list:
                tasks.append((config.r, d, k, g))
    return tasks


def sweep_rows(config: SweepConfig) -> List[Dict[str, str]]:
    """Rows for every valid query; parallel when ``config.jobs > 1``."""
    tasks = sweep_tasks(config)
    warm_up({config.r * (k + config.r) for k in range(config.k_max + 1)})
    if config.jobs == 1 or len(tasks) < 2:
        return [table_row(t) for t in tasks]

    rows: List[Optional[Dict[str, str]]] = [None] * len(tasks)
    with ProcessPoolExecutor(max_workers=config.jobs) as executor:
        futures = {executor.submit(table_row, t): i for i, t in enumerate(tasks)}
        for future in as_completed(futures):
            rows[futures[future]] = future.result()
    logger.info("swept %d queries on %d workers", len(tasks), config.jobs)
    return [row for row in rows if row is not None]

