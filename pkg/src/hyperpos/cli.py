"""Command-line interface.

Every command prints one JSON record ``{command, inputs, result,
diagnostics}`` (keys sorted, floats rounded to 12 significant digits) so
that identical invocations give byte-identical output.  ``table`` and
``region-map`` emit CSV (or JSON lines) instead.

Exit codes: 0 success, 1 failed verification, 2 domain error,
3 convergence error, 64 usage error.  Global flags can also be set through
``HYPERPOS_TOL``, ``HYPERPOS_MAX_TERMS`` and ``HYPERPOS_SEED``; flags win.

Usage:
    hyperpos eval psi --alpha 0.5 --beta -0.5 --x 6.2831853
    hyperpos classify askey --alpha 0 --beta -0.34 --exact
    hyperpos root beta --alpha 0
    hyperpos table --from -0.5 --to 0.4 --step 0.1 --format csv
    hyperpos verify whipple --seed 7 --n 200
    hyperpos region-map askey --resolution 200 --out askey.csv
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Any

import click

from . import bessel, regions, roots, verification
from .errors import ConvergenceError, DomainError
from .series import DEFAULT_MAX_TERMS, DEFAULT_TOL, HyperParams, SeriesValue, eval_pfq_auto

__all__ = ["cli", "main", "OutputRecord", "format_float", "EXIT_CODES"]

ENV_PREFIX = "HYPERPOS"
EXIT_CODES = {"ok": 0, "verify_failed": 1, "domain": 2, "convergence": 3, "usage": 64}
SIG_DIGITS = 12


def format_float(x: float) -> float | str:
    """Shortest repr of x rounded to 12 significant digits; non-finite as text."""
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.{SIG_DIGITS}g}")


def _plain(obj: Any) -> Any:
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    try:
        return format_float(float(obj))
    except (TypeError, ValueError):
        return str(obj)


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    result: Any
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "diagnostics": self.diagnostics,
        }
        return json.dumps(_plain(body), sort_keys=True, ensure_ascii=False)


def _emit(record: OutputRecord) -> None:
    click.echo(record.to_json())


def _series_diagnostics(sv: SeriesValue) -> dict:
    return {
        "terms_used": sv.terms_used,
        "abs_error_estimate": sv.abs_error_estimate,
        "precision_bits": sv.precision_bits,
        "cancellation": sv.cancellation,
    }


def _write_atomic(path: str, text: str) -> None:
    """Write to a sibling temp file and rename, so failures leave no partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".hyperpos-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_plain(v) for v in row])
    return buf.getvalue()


@dataclass(frozen=True)
class Settings:
    tol: float
    max_terms: int
    seed: int


# ----------------------------------------------------------------- root group


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--tol", type=float, default=DEFAULT_TOL, show_default=True, help="Series stopping tolerance.")
@click.option("--max-terms", type=int, default=DEFAULT_MAX_TERMS, show_default=True, help="Series term cap.")
@click.option("--seed", type=int, default=7, show_default=True, help="Default seed for verify suites.")
@click.pass_context
def cli(ctx: click.Context, tol: float, max_terms: int, seed: int) -> None:
    """Positivity of 1F2 functions and integrals of Bessel functions."""
    if not tol > 0 or max_terms < 1:
        raise click.UsageError("--tol must be positive and --max-terms at least 1")
    ctx.obj = Settings(tol, max_terms, seed)


# ----------------------------------------------------------------------- eval


@cli.group("eval")
def eval_group() -> None:
    """Evaluate a function at one point."""


def _series(settings: Settings, params: HyperParams, z: float) -> SeriesValue:
    return eval_pfq_auto(params, z, tol=settings.tol, max_terms=settings.max_terms)


@eval_group.command("f12")
@click.option("--a", "a", type=float, required=True)
@click.option("--b", "b", type=float, required=True)
@click.option("--c", "c", type=float, required=True)
@click.option("--x", "x", type=float, required=True)
@click.pass_obj
def eval_f12(settings: Settings, a: float, b: float, c: float, x: float) -> None:
    """Phi(x) = 1F2(a; b, c; -x^2/4)."""
    regions.F12Point(a, b, c)
    sv = _series(settings, HyperParams((a,), (b, c)), -x * x / 4)
    _emit(OutputRecord("eval f12", {"a": a, "b": b, "c": c, "x": x}, sv.value, _series_diagnostics(sv)))


@eval_group.command("bessel")
@click.option("--alpha", type=float, required=True)
@click.option("--x", "x", type=float, required=True)
def eval_bessel(alpha: float, x: float) -> None:
    """J_alpha(x)."""
    _emit(OutputRecord("eval bessel", {"alpha": alpha, "x": x}, bessel.bessel_j(alpha, x)))


@eval_group.command("jj")
@click.option("--alpha", type=float, required=True)
@click.option("--x", "x", type=float, required=True)
@click.pass_obj
def eval_jj(settings: Settings, alpha: float, x: float) -> None:
    """Normalized Bessel function 0F1(alpha+1; -x^2/4)."""
    if not alpha > -1:
        raise DomainError(f"Bessel order must exceed -1, got {alpha!r}")
    sv = _series(settings, HyperParams((), (alpha + 1,)), -x * x / 4)
    _emit(OutputRecord("eval jj", {"alpha": alpha, "x": x}, sv.value, _series_diagnostics(sv)))


@eval_group.command("psi")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--x", "x", type=float, required=True)
@click.pass_obj
def eval_psi(settings: Settings, alpha: float, beta: float, x: float) -> None:
    """Normalized integral of t^-beta J_alpha: the 1F2 factor alone."""
    p = regions.askey_to_f12(regions.AskeyPoint(alpha, beta))
    sv = _series(settings, HyperParams((p.a,), (p.b, p.c)), -x * x / 4)
    _emit(
        OutputRecord("eval psi", {"alpha": alpha, "beta": beta, "x": x}, sv.value, _series_diagnostics(sv))
    )


@eval_group.command("sigma")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--gamma", type=float, required=True)
@click.option("--x", "x", type=float, required=True)
@click.pass_obj
def eval_sigma(settings: Settings, alpha: float, beta: float, gamma: float, x: float) -> None:
    """Normalized weighted integral with kernel (x^2-t^2)^gamma."""
    p = regions.gasper_to_f12(regions.GasperPoint(alpha, beta, gamma))
    sv = _series(settings, HyperParams((p.a,), (p.b, p.c)), -x * x / 4)
    inputs = {"alpha": alpha, "beta": beta, "gamma": gamma, "x": x}
    _emit(OutputRecord("eval sigma", inputs, sv.value, _series_diagnostics(sv)))


@eval_group.command("integral")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--x", "x", type=float, required=True)
@click.option("--gamma", type=float, default=None, help="Weight exponent; omit for the plain integral.")
def eval_integral(alpha: float, beta: float, x: float, gamma: float | None) -> None:
    """int_0^x [(x^2-t^2)^gamma] t^-beta J_alpha(t) dt from its 1F2 closed form."""
    inputs = {"alpha": alpha, "beta": beta, "x": x}
    if gamma is None:
        value = roots.integral_closed_form(alpha, beta, x)
        oracle = roots.integral_quadrature(alpha, beta, x)
        diagnostics = {"quadrature": oracle, "abs_difference": abs(value - oracle)}
    else:
        inputs["gamma"] = gamma
        value = roots.weighted_integral_closed_form(alpha, beta, gamma, x)
        diagnostics = {}
    _emit(OutputRecord("eval integral", inputs, value, diagnostics))


# ------------------------------------------------------------------- classify


@cli.group("classify")
def classify_group() -> None:
    """Label a parameter point with a positivity verdict."""


def _label_result(label: regions.RegionLabel) -> dict:
    out = {"verdict": label.verdict, "justification": label.justification}
    if label.gasper_original is not None:
        out["gasper_original"] = label.gasper_original
    return out


@classify_group.command("f12")
@click.option("--a", "a", type=float, required=True)
@click.option("--b", "b", type=float, required=True)
@click.option("--c", "c", type=float, required=True)
def classify_f12(a: float, b: float, c: float) -> None:
    label = regions.classify_f12(regions.F12Point(a, b, c))
    _emit(OutputRecord("classify f12", {"a": a, "b": b, "c": c}, _label_result(label)))


@classify_group.command("askey")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--exact", is_flag=True, help="Settle leftover points with the beta(alpha) threshold.")
def classify_askey(alpha: float, beta: float, exact: bool) -> None:
    mode = regions.ClassifyMode.EXACT if exact else regions.ClassifyMode.THEOREMS_ONLY
    label = regions.classify_askey(regions.AskeyPoint(alpha, beta), mode)
    inputs = {"alpha": alpha, "beta": beta, "mode": mode}
    _emit(OutputRecord("classify askey", inputs, _label_result(label)))


@classify_group.command("gasper")
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--gamma", type=float, required=True)
def classify_gasper(alpha: float, beta: float, gamma: float) -> None:
    label = regions.classify_gasper(regions.GasperPoint(alpha, beta, gamma))
    inputs = {"alpha": alpha, "beta": beta, "gamma": gamma}
    _emit(OutputRecord("classify gasper", inputs, _label_result(label)))


# ----------------------------------------------------------------------- root


@cli.group("root")
def root_group() -> None:
    """Solve for the positivity thresholds."""


def _root_record(command: str, inputs: dict, r: roots.RootResult) -> OutputRecord:
    diagnostics = {"bracket": list(r.bracket), "residual": r.residual, "iterations": r.iterations}
    return OutputRecord(command, inputs, r.value, diagnostics)


@root_group.command("beta")
@click.option("--alpha", type=float, required=True)
@click.option("--tol", type=float, default=roots.ROOT_TOL, show_default=True)
def root_beta(alpha: float, tol: float) -> None:
    """beta(alpha), the zero of A(beta) for -1 < alpha <= 1/2."""
    _emit(_root_record("root beta", {"alpha": alpha, "tol": tol}, roots.beta_root(alpha, tol)))


@root_group.command("alphabar")
@click.option("--tol", type=float, default=roots.ALPHA_BAR_TOL, show_default=True)
def root_alphabar(tol: float) -> None:
    """The zero of G(alpha) = A(beta = alpha)."""
    _emit(_root_record("root alphabar", {"tol": tol}, roots.alpha_bar(tol)))


# ---------------------------------------------------------------------- table

TABLE_HEADER = ["alpha", "beta_of_alpha", "upper_bound", "gap"]


def table_alphas(start: float, stop: float, step: float) -> list[float]:
    """start, start+step, ... up to stop (inclusive up to rounding), 12 digits."""
    if not step > 0:
        raise click.UsageError("--step must be positive")
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, SIG_DIGITS) for i in range(count)]


@cli.command("table")
@click.option("--from", "start", type=float, default=-0.5, show_default=True)
@click.option("--to", "stop", type=float, default=0.4, show_default=True)
@click.option("--step", type=float, default=0.1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def table(start: float, stop: float, step: float, fmt: str, out: str | None) -> None:
    """Table of beta(alpha), the bound -(alpha+1)/3 and their gap."""
    rows = roots.beta_table(table_alphas(start, stop, step))
    if fmt == "csv":
        text = _csv_text(TABLE_HEADER, [[r.alpha, r.beta_of_alpha, r.upper_bound, r.gap] for r in rows])
    else:
        text = "".join(
            OutputRecord(
                "table",
                {"alpha": r.alpha},
                {"beta_of_alpha": r.beta_of_alpha, "upper_bound": r.upper_bound, "gap": r.gap},
            ).to_json()
            + "\n"
            for r in rows
        )
    if out:
        _write_atomic(out, text)
    else:
        click.echo(text, nl=False)


# --------------------------------------------------------------------- verify


@cli.command("verify")
@click.argument("suite", type=click.Choice(sorted(verification.SUITES)))
@click.option("--seed", type=int, default=None, help="Overrides the global --seed.")
@click.option("--n", "n", type=int, default=None, help="Number of draws (suite default if omitted).")
@click.pass_obj
def verify(settings: Settings, suite: str, seed: int | None, n: int | None) -> int:
    """Run a self-check suite; exit status 1 if any case fails."""
    seed = settings.seed if seed is None else seed
    report = verification.run_suite(suite, seed, n)
    diagnostics = dict(report.notes)
    diagnostics["failure_count"] = len(report.failures)
    result = {"passed": report.passed, "cases": report.cases, "worst": report.worst}
    _emit(OutputRecord(f"verify {suite}", {"seed": seed, "n": n}, result, diagnostics))
    return EXIT_CODES["ok"] if report.passed else EXIT_CODES["verify_failed"]


# ----------------------------------------------------------------- region-map

REGION_HEADER = ["axis1", "axis2", "verdict", "justification"]


@cli.command("region-map")
@click.argument("kind", type=click.Choice(["f12", "askey", "gasper"]))
@click.option("--a", "a", type=float, default=None, help="Fixed a for the f12 map.")
@click.option("--gamma", type=float, default=None, help="Fixed gamma for the gasper map.")
@click.option("--resolution", type=int, default=200, show_default=True)
@click.option("--range1", type=(float, float), default=None, help="Range of the first axis.")
@click.option("--range2", type=(float, float), default=None, help="Range of the second axis.")
@click.option("--exact", is_flag=True, help="Askey map only: resolve leftovers with beta(alpha).")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def region_map(
    kind: str,
    a: float | None,
    gamma: float | None,
    resolution: int,
    range1: tuple | None,
    range2: tuple | None,
    exact: bool,
    out: str | None,
) -> None:
    """Classify a rectangular grid and write it as CSV."""
    if resolution < 2:
        raise click.UsageError("--resolution must be at least 2")
    if kind == "f12" and a is None:
        raise click.UsageError("region-map f12 needs --a")
    if kind == "gasper" and gamma is None:
        raise click.UsageError("region-map gasper needs --gamma")
    mode = regions.ClassifyMode.EXACT if exact else regions.ClassifyMode.THEOREMS_ONLY
    grid = regions.region_grid(kind, resolution, range1, range2, a=a, gamma=gamma, mode=mode)
    rows = [[u, v, lab.verdict.value, lab.justification.value] for u, v, lab in grid.cells()]
    text = _csv_text(REGION_HEADER, rows)
    if out is None:
        click.echo(text, nl=False)
        return
    _write_atomic(out, text)
    counts: dict = {}
    for row in rows:
        counts[row[2]] = counts.get(row[2], 0) + 1
    inputs = {"kind": kind, "resolution": resolution, **grid.fixed, "axes": list(grid.axis_names)}
    _emit(OutputRecord("region-map", inputs, {"out": out, "cells": len(rows)}, {"verdicts": counts}))


# ----------------------------------------------------------------- entry point


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and translate errors into the documented exit codes."""
    try:
        rv = cli.main(
            args=argv,
            prog_name="hyperpos",
            standalone_mode=False,
            auto_envvar_prefix=ENV_PREFIX,
        )
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return EXIT_CODES["usage"]
    except click.ClickException as exc:
        exc.show()
        return EXIT_CODES["usage"]
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_CODES["usage"]
    except DomainError as exc:
        click.echo(f"domain error: {exc}", err=True)
        return EXIT_CODES["domain"]
    except ConvergenceError as exc:
        click.echo(f"convergence error: {exc}", err=True)
        return EXIT_CODES["convergence"]
    return rv if isinstance(rv, int) else EXIT_CODES["ok"]


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
