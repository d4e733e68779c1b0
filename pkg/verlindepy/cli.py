# verlindepy/cli.py
"""Console script for verlindepy."""

import functools
import logging
import sys
import time
from typing import Any, Callable, Dict, List, Optional

import click
import mpmath

from . import __version__
from .analysis import oracle
from .analysis.consistency import (
    TABLE_COLUMNS,
    SweepConfig,
    run_identity_suite,
    sweep_rows,
)
from .core.constants import (
    DEFAULT_PRECISION_BITS,
    DEFAULT_TOL_ABS,
    DEFAULT_TOL_REL,
    EXIT_CHECK_FAILED,
    EXIT_INCONSISTENT,
    EXIT_INVALID_INPUT,
    OUTPUT_FORMATS,
)
from .core.validation import ConsistencyError, ParameterValidator, ValidationError
from .formulas import verlinde
from .formulas.query import DimResult, ModuliQuery
from .formulas.smatrix import cft_total, s_row_pgl, s_row_sl
from .lattice.weights import LevelContext, describe_orbits
from .utils.saver import OutputRecord, render, write_output

logger = logging.getLogger(__name__)

S_ROW_COLUMNS = ("label", "orbit_members", "s0_squared", "s0_float", "multiplicity_note")
ORBIT_COLUMNS = ("marks", "exponents", "N", "center_class", "in_root_lattice")


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    logging.basicConfig(
        level=logging.DEBUG if verbosity > 1 else logging.INFO,
        stream=sys.stderr,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )


def _guarded(func: Callable) -> Callable:
    """Map library exceptions onto exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"Invalid input: {exc}", err=True)
            sys.exit(EXIT_INVALID_INPUT)
        except ConsistencyError as exc:
            click.echo(f"Internal inconsistency: {exc}", err=True)
            sys.exit(EXIT_INCONSISTENT)
        except OSError as exc:
            click.echo(f"I/O error: {exc}", err=True)
            sys.exit(EXIT_CHECK_FAILED)

    return wrapper


def _precision_options(func: Callable) -> Callable:
    func = click.option("--tol-rel", type=float, default=DEFAULT_TOL_REL, show_default=True)(func)
    func = click.option("--tol-abs", type=float, default=DEFAULT_TOL_ABS, show_default=True)(func)
    func = click.option(
        "--bits", type=int, default=DEFAULT_PRECISION_BITS, show_default=True,
        help="Working precision of the floating oracle.",
    )(func)
    return func


def _output_options(func: Callable) -> Callable:
    func = click.option(
        "--out", type=click.Path(dir_okay=False), default=None,
        help="Write to a file instead of standard output.",
    )(func)
    func = click.option(
        "--format", "fmt", type=click.Choice(OUTPUT_FORMATS), default="json", show_default=True
    )(func)
    return func


def _warn(messages: List[str]) -> None:
    for message in messages:
        click.echo(f"Warning: {message}", err=True)


def _emit(record: OutputRecord, fmt: str, out: Optional[str], columns=None) -> None:
    text = render(record, fmt, columns)
    if write_output(text, out) is None:
        click.echo(text, nl=False)


def _checks(result: DimResult) -> Dict[str, str]:
    return {name: "pass" for name in result.checks}


def _single(
    command: str,
    inputs: Dict[str, Any],
    compute: Callable[[], DimResult],
    warnings: List[str],
    fmt: str,
    out: Optional[str],
    approx: Optional[Callable[[], Any]] = None,
    cfg: Optional[oracle.PrecisionConfig] = None,
) -> None:
    started = time.perf_counter()
    result = compute()
    payload = result.to_dict()
    checks = _checks(result)
    if approx is not None:
        value = approx()
        oracle.confirm(result.value, value, cfg, command)
        payload["float"] = mpmath.nstr(value, 30)
        checks["oracle_agreement"] = "pass"
    record = OutputRecord(
        command=command,
        inputs=inputs,
        results=[payload],
        checks=checks,
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
        warnings=warnings,
    )
    _emit(record, fmt, out)


@click.group()
@click.option("-v", "--verbose", count=True, help="Log progress to stderr (-vv for debug).")
@click.version_option(__version__)
def main(verbose: int):
    """Exact Verlinde-type dimension formulas for SL_r and PGL_r."""
    _configure_logging(verbose)


@main.command("sl-dim")
@click.option("--r", "r", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@click.option("--float", "with_float", is_flag=True, help="Confirm with the floating oracle.")
@click.option("--formal", is_flag=True, help="Allow g = 1 as a formal value.")
@_precision_options
@_output_options
@_guarded
def sl_dim(r, d, k, g, with_float, formal, bits, tol_abs, tol_rel, fmt, out):
    """Dimension of sections of D^k on the SL_r moduli space of degree d."""
    query, warnings = ModuliQuery.from_raw(r, d, k, g, formal=formal)
    _warn(warnings)
    cfg = oracle.PrecisionConfig(bits, tol_abs, tol_rel)
    _single(
        "sl-dim", query.to_dict(),
        lambda: verlinde.sl_dimension(query, formal),
        warnings, fmt, out,
        approx=(lambda: oracle.float_eval_sl(query, cfg)) if with_float else None,
        cfg=cfg,
    )


@main.command("sl-sum")
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@click.option("--float", "with_float", is_flag=True)
@_precision_options
@_output_options
@_guarded
def sl_sum(r, k, g, with_float, bits, tol_abs, tol_rel, fmt, out):
    """Sum of the SL_r dimensions over all degrees."""
    ParameterValidator.validate_genus(g)
    cfg = oracle.PrecisionConfig(bits, tol_abs, tol_rel)
    _single(
        "sl-sum", {"r": r, "k": k, "g": g},
        lambda: verlinde.sl_dimension_sum(r, k, g),
        [], fmt, out,
        approx=(lambda: oracle.float_eval_sl_sum(r, k, g, cfg)) if with_float else None,
        cfg=cfg,
    )


@main.command("pgl-dim")
@click.option("--r", "r", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@click.option("--float", "with_float", is_flag=True)
@click.option("--formal", is_flag=True, help="Allow g = 1 as a formal value.")
@_precision_options
@_output_options
@_guarded
def pgl_dim(r, d, k, g, with_float, formal, bits, tol_abs, tol_rel, fmt, out):
    """Dimension on the PGL_r component of degree d (r prime)."""
    query, warnings = ModuliQuery.from_raw(r, d, k, g, formal=formal)
    _warn(warnings)
    cfg = oracle.PrecisionConfig(bits, tol_abs, tol_rel)
    _single(
        "pgl-dim", query.to_dict(),
        lambda: verlinde.pgl_dimension(query, formal),
        warnings, fmt, out,
        approx=(lambda: oracle.float_eval_pgl(query, cfg)) if with_float else None,
        cfg=cfg,
    )


@main.command("pgl-total")
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@click.option("--float", "with_float", is_flag=True)
@_precision_options
@_output_options
@_guarded
def pgl_total(r, k, g, with_float, bits, tol_abs, tol_rel, fmt, out):
    """Dimension summed over all PGL_r components."""
    ParameterValidator.validate_genus(g)
    cfg = oracle.PrecisionConfig(bits, tol_abs, tol_rel)
    started = time.perf_counter()
    result = verlinde.pgl_total(r, k, g)
    payload = result.to_dict()
    checks = _checks(result)
    if with_float:
        value = oracle.float_eval_pgl_total(r, k, g, cfg)
        oracle.confirm(result.value, value, cfg, "pgl-total")
        payload["float"] = mpmath.nstr(value, 30)
        checks["oracle_agreement"] = "pass"
        if r == 2 and k % 4 == 0:
            sine = oracle.pgl2_sine_formula(k, g, cfg)
            oracle.confirm(result.value, sine, cfg, "rank-2 sine form")
            payload["sine_form"] = mpmath.nstr(sine, 30)
            checks["sine_form_agreement"] = "pass"
    record = OutputRecord(
        command="pgl-total",
        inputs={"r": r, "k": k, "g": g},
        results=[payload],
        checks=checks,
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
    )
    _emit(record, fmt, out)


@main.command("trace")
@click.option("--r", "r", type=int, required=True)
@click.option("--d", "d", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--g", "g", type=int, required=True)
@_output_options
@_guarded
def trace(r, d, k, g, fmt, out):
    """Trace of an order-r element of the r-torsion on the sections."""
    query, warnings = ModuliQuery.from_raw(r, d, k, g)
    _warn(warnings)
    _single(
        "trace", query.to_dict(),
        lambda: verlinde.default_calculator().trace_result(query),
        warnings, fmt, out,
    )


@main.command("n1")
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@_output_options
@_guarded
def n1(r, k, fmt, out):
    """Genus-one closed form and its integrality verdict."""
    started = time.perf_counter()
    result = verlinde.remark_n1(r, k)
    payload = result.to_dict()
    payload["verdict"] = "integer" if result.is_integer else "not an integer"
    record = OutputRecord(
        command="n1",
        inputs={"r": r, "k": k},
        results=[payload],
        checks=_checks(result),
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
    )
    _emit(record, fmt, out)


@main.command("smatrix")
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@click.option("--pgl", is_flag=True, help="Resolved row for the quotient group.")
@click.option("--g", "g", type=int, default=None, help="Also sum |S'|^(2-2g); requires --pgl.")
@_output_options
@_guarded
def smatrix(r, k, pgl, g, fmt, out):
    """First row of the S-matrix, squared magnitudes."""
    if g is not None and not pgl:
        raise ValidationError("--g sums the resolved row and requires --pgl")
    started = time.perf_counter()
    ctx = LevelContext(r, k)
    entries = s_row_pgl(ctx, with_float=True) if pgl else s_row_sl(ctx, with_float=True)
    checks = {"s_row_unitarity": "pass"} if not pgl else {"orbit_constancy": "pass"}
    results = [e.to_dict() for e in entries]
    inputs: Dict[str, Any] = {"r": r, "k": k, "pgl": pgl}
    if pgl and g is not None:
        total = cft_total(r, k, g)
        inputs["g"] = g
        checks.update(_checks(total))
        checks["cft_total"] = str(total.value)
    record = OutputRecord(
        command="smatrix",
        inputs=inputs,
        results=results,
        checks=checks,
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
    )
    _emit(record, fmt, out, S_ROW_COLUMNS)


@main.command("orbits")
@click.option("--r", "r", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@_output_options
@_guarded
def orbits(r, k, fmt, out):
    """Dominant weights with their orbit points."""
    started = time.perf_counter()
    ctx = LevelContext(r, k)
    rows = describe_orbits(ctx)
    record = OutputRecord(
        command="orbits",
        inputs={"r": r, "k": k},
        results=rows,
        checks={"count": "pass" if len(rows) == ctx.count else "fail"},
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
    )
    _emit(record, fmt, out, ORBIT_COLUMNS)


def _parse_genera(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError(f"Cannot parse genus list {text!r}")


def _row_checks(rows: List[Dict[str, str]]) -> Dict[str, str]:
    """Every check that ran on some row, in first-seen order; failures raise."""
    names: Dict[str, str] = {}
    for row in rows:
        for name in filter(None, row["checks"].split(";")):
            names.setdefault(name, "pass")
    return names


@main.command("table")
@click.option("--r", "r", type=int, required=True)
@click.option("--k-max", type=int, required=True)
@click.option("--g-list", default="2,3", show_default=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@_output_options
@_guarded
def table(r, k_max, g_list, jobs, fmt, out):
    """Sweep every valid (d, k, g) and tabulate SL and PGL values."""
    started = time.perf_counter()
    config = SweepConfig(r=r, k_max=k_max, g_list=_parse_genera(g_list), jobs=jobs)
    rows = sweep_rows(config)
    record = OutputRecord(
        command="table",
        inputs={"r": r, "k_max": k_max, "g_list": config.g_list, "jobs": jobs},
        results=rows,
        checks=_row_checks(rows),
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
    )
    _emit(record, fmt, out, TABLE_COLUMNS)


@main.command("check")
@click.option("--r", "r", type=int, required=True)
@click.option("--k-max", type=int, default=8, show_default=True)
@click.option("--g-max", type=int, default=3, show_default=True)
@click.option("--no-oracle", is_flag=True, help="Skip the floating confirmations.")
@_precision_options
@_output_options
@_guarded
def check(r, k_max, g_max, no_oracle, bits, tol_abs, tol_rel, fmt, out):
    """Run the identity suite; exit 0 only if every identity holds."""
    started = time.perf_counter()
    cfg = oracle.PrecisionConfig(bits, tol_abs, tol_rel)
    report = run_identity_suite(r, k_max, g_max, cfg, use_oracle=not no_oracle)
    record = OutputRecord(
        command="check",
        inputs={"r": r, "k_max": k_max, "g_max": g_max, "oracle": not no_oracle},
        results=[{"identity": name, "verdict": verdict, "message": report.messages.get(name, "")}
                 for name, verdict in report.checks.items()],
        checks=dict(report.checks),
        timing_ms=round((time.perf_counter() - started) * 1000, 3),
        warnings=[report.skipped_reason] if report.skipped_reason else [],
    )
    _emit(record, fmt, out, ("identity", "verdict", "message"))
    if not report.passed:
        click.echo(f"Identity failed: {report.first_failure}", err=True)
        sys.exit(EXIT_CHECK_FAILED)
    if report.skipped_reason:
        click.echo(f"Warning: {report.skipped_reason}", err=True)
        sys.exit(EXIT_INVALID_INPUT)


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
