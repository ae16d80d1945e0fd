# src/orchestrator/verify.py
"""Invariant suite behind `verify`: plan -> execute -> verify -> Markdown report."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import scipy.special

from src.contracts.errors import BellToolkitError
from src.contracts.types import CheckResult, QuadratureScheme, QuadratureSpec, SuiteReport
from src.numerics import continuum
from src.numerics.optimize import kernel, matvec_fft, matvec_naive, optimal_state
from src.numerics.special import digamma, gamma_fn
from src.orchestrator.sweeps import default_d_grid, violation_table
from src.quantum.bell import (
    bell_functional,
    bell_value,
    chsh_identity_check,
    chsh_value,
    closed_form,
    quantum_distributions,
    random_no_signalling_quadruple,
    random_state,
    tsirelson_lhs,
)
from src.quantum.classical import lhv_minimum, lhv_value, strategy_distributions
from src.quantum.states import approximate_state, entropy_ratio_sweep, maximally_entangled
from src.reports.run_log import failed_checks, write_checks_jsonl
from src.reports.tables import frame_to_markdown

logger = logging.getLogger(__name__)

CHECKS_FILE = "verify_checks.jsonl"
REPORT_FILE = "verify_report.md"


# --- Data Structures ---

@dataclass
class VerifyContext:
    seed: int = 42
    full: bool = False
    workers: int = 1
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    tables: Dict[str, Any] = field(default_factory=dict)

    def rng(self, stream: int) -> np.random.Generator:
        """Independent generator per suite so suites do not shift each other's draws."""
        return np.random.default_rng([self.seed, stream])


@dataclass
class SuitePlan:
    name: str
    run: Callable[[VerifyContext, "Recorder"], None]


class Recorder:
    def __init__(self, suite: str):
        self.suite = suite
        self.checks: List[CheckResult] = []

    def check(self, name: str, passed: bool, value: Optional[float] = None, detail: str = "") -> bool:
        passed = bool(passed)
        self.checks.append(CheckResult(suite=self.suite, name=name, passed=passed, value=value, detail=detail))
        return passed

    def close(self, name: str, got: float, want: float, tol: float, relative: bool = False) -> bool:
        err = abs(got - want)
        if relative:
            err /= abs(want)
        return self.check(name, err <= tol, value=err, detail=f"got {got!r}, want {want!r}, tol {tol:g}")


# --- suites ---

def _headline(ctx: VerifyContext, rec: Recorder) -> None:
    want = tsirelson_lhs()
    res = optimal_state(2)
    rec.close("optimal A_2 = (3 - sqrt 2)/2", res.bell_value, want, 1e-10)
    phi = maximally_entangled(2)
    rec.close("maximally entangled state attains A_2", bell_value(phi, 2).value, want, 1e-10)
    rec.close("closed form at the optimum", closed_form(res.eigenvector).value, want, 1e-10)


def _oracle(ctx: VerifyContext, rec: Recorder) -> None:
    rng = ctx.rng(1)
    n = 100
    for d in range(2, 17 if ctx.full else 9):
        worst = 0.0
        for _ in range(n):
            state = random_state(d, rng)
            worst = max(worst, abs(bell_value(state, d).value - closed_form(state).value))
        rec.check(f"bell_value == closed_form, d={d}, {n} states", worst <= 1e-10, value=worst)


def _classical(ctx: VerifyContext, rec: Recorder) -> None:
    for d in (1, 2, 3, 4, 8):
        value, witness = lhv_minimum(d)
        rec.check(f"lhv_minimum({d}) = 1", value == 1, value=float(value), detail=f"witness {witness.as_tuple()}")
        lhs = bell_functional(strategy_distributions(witness, d))
        rec.check(f"witness value matches functional, d={d}", lhv_value(witness) == round(lhs), value=lhs)


def _chsh(ctx: VerifyContext, rec: Recorder) -> None:
    rng = ctx.rng(2)
    worst = 0.0
    for _ in range(100):
        _, _, resid = chsh_identity_check(random_no_signalling_quadruple(rng))
        worst = max(worst, abs(resid))
    rec.check("S = 6 - 4 lhs on 100 no-signalling quadruples", worst <= 1e-12, value=worst)
    s = chsh_value(quantum_distributions(maximally_entangled(2)))
    rec.close("S at the quantum optimum = 2 sqrt 2", s, 2.0 * math.sqrt(2.0), 1e-10)


def _toeplitz(ctx: VerifyContext, rec: Recorder) -> None:
    rng = ctx.rng(3)
    sizes = [1, 2, 3, 17, 64, 100, 257, 1024, 4096]
    for d in sizes:
        k = kernel(d)
        v = rng.standard_normal(d)
        err = float(np.max(np.abs(matvec_fft(k, v) - matvec_naive(k, v))))
        rec.check(f"matvec_fft == matvec_naive, d={d}", err <= 1e-10, value=err)

    dense = optimal_state(128, method="dense").eigenvalue
    for method in ("power", "lanczos"):
        got = optimal_state(128, method=method).eigenvalue
        rec.close(f"{method} eigenvalue matches dense, d=128", got, dense, 1e-10)

    res = optimal_state(10 ** 5)
    rec.check("optimal_state(1e5) residual <= 1e-9", res.residual <= 1e-9, value=res.residual)


def _tightness(ctx: VerifyContext, rec: Recorder) -> None:
    df = violation_table(default_d_grid(), workers=ctx.workers)
    ctx.tables["violation"] = df
    a_opt = df["A_optimal"].to_numpy()
    a_apx = df["A_approximate"].to_numpy()
    rec.check("A_d(optimal) > 0", bool(np.all(a_opt > 0)), value=float(a_opt.min()))
    rec.check("A_d(optimal) strictly decreasing", bool(np.all(np.diff(a_opt) < 0)), value=float(np.diff(a_opt).max()))
    gap = float(np.min(a_apx - a_opt))
    rec.check("A_d(approximate) >= A_d(optimal)", gap >= -1e-12, value=gap)


def _entropy(ctx: VerifyContext, rec: Recorder) -> None:
    rows = entropy_ratio_sweep([10 ** p for p in range(2, 8)])
    ratios = np.array([r for _, r in rows])
    ctx.tables["entropy_ratio"] = rows
    rec.check("approximate-state ratio strictly decreasing", bool(np.all(np.diff(ratios) < 0)), value=float(np.diff(ratios).max()))
    rec.check("approximate-state ratio > 1/2", bool(np.all(ratios > 0.5)), value=float(ratios.min()))
    # sum_k 1/((k+1)(d-k)) = 2 H_d / (d + 1)
    d = 1000
    lam = approximate_state(d).coefficients
    harmonic = math.fsum(1.0 / np.arange(1, d + 1))
    rec.close("approximate state matches 1/sqrt((k+1)(d-k)) normalization", lam[0] ** 2, (1.0 / d) / (2.0 * harmonic / (d + 1)), 1e-12, relative=True)


def _special(ctx: VerifyContext, rec: Recorder) -> None:
    gamma_e = float(np.euler_gamma)
    rec.close("digamma(1) = -gamma", digamma(1.0), -gamma_e, 1e-12)
    rec.close("digamma(1/2) = -gamma - 2 ln 2", digamma(0.5), -gamma_e - 2.0 * math.log(2.0), 1e-12)
    worst = max(abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) for z in (0.1, 0.5, 1.5, 7.3))
    rec.check("digamma recurrence residual <= 1e-13", worst <= 1e-13, value=worst)
    grid = np.linspace(0.01, 50.0, 200)
    worst = max(abs(digamma(z) - float(scipy.special.psi(z))) for z in grid)
    rec.check("digamma matches scipy on (0.01, 50]", worst <= 1e-12, value=worst)
    worst = max(
        abs(gamma_fn(z) * gamma_fn(1.0 - z) * math.sin(math.pi * z) / math.pi - 1.0)
        for z in np.linspace(0.05, 0.95, 19)
    )
    rec.check("gamma reflection identity", worst <= 1e-12, value=worst)
    worst = max(abs(gamma_fn(z) / float(scipy.special.gamma(z)) - 1.0) for z in grid)
    rec.check("gamma matches scipy on (0.01, 50]", worst <= 1e-13, value=worst)


def _continuum(ctx: VerifyContext, rec: Recorder) -> None:
    quad = ctx.quad
    for delta in (0.01, 0.05, 0.1, 0.2):
        rec.close(f"normalization, delta={delta}", continuum.normalization(continuum.make_ansatz(delta), quad), 1.0, 1e-8)

    deltas = (0.2, 0.1, 0.05, 0.02)
    ms = [continuum.m_functional(continuum.make_ansatz(x), quad) for x in deltas]
    ctx.tables["continuum"] = list(zip(deltas, ms))
    rec.check("M(f_delta) <= 2", max(ms) <= 2.0 + quad.target_abs_err, value=max(ms))
    rec.check("M(f_delta) increases as delta decreases", all(b > a for a, b in zip(ms, ms[1:])), value=ms[-1] - ms[0])

    for eps in (0.1, 0.25, 0.5):
        rec.close(f"closed form at delta=1e-8, eps={eps}", continuum.i_delta_closed_form(1e-8, eps), 2.0, 1e-6)

    rec.close(
        "corner bound quadrature matches digamma form, (0.1, 0.25)",
        continuum.corner_bound(0.1, 0.25, quad),
        continuum.corner_bound_exact(0.1, 0.25),
        1e-6,
    )
    chain = continuum.i_delta_chain_check(0.1, 0.25, quad)
    rec.check("I_delta >= corner >= bound >= closed form >= 0, (0.1, 0.25)", chain.holds(quad.target_abs_err), value=chain.i_delta)

    m_gauss = continuum.m_functional(continuum.make_ansatz(0.1), quad)
    m_ts = continuum.m_functional(
        continuum.make_ansatz(0.1),
        QuadratureSpec(scheme=QuadratureScheme.TANH_SINH, points=quad.points, target_abs_err=1e-8),
    )
    rec.close("gauss and tanh-sinh agree on M(f_0.1)", m_ts, m_gauss, 1e-8)


# --- 1. Planner ---

def planner_lite(full: bool = False) -> List[SuitePlan]:
    """Fixed suite order; `full` adds d = 9..16 to the oracle."""
    return [
        SuitePlan("headline", _headline),
        SuitePlan("oracle", _oracle),
        SuitePlan("classical", _classical),
        SuitePlan("chsh", _chsh),
        SuitePlan("toeplitz", _toeplitz),
        SuitePlan("tightness", _tightness),
        SuitePlan("entropy", _entropy),
        SuitePlan("special", _special),
        SuitePlan("continuum", _continuum),
    ]


# --- 2. Executor ---

def executor(plan: List[SuitePlan], ctx: VerifyContext) -> Dict[str, List[CheckResult]]:
    results: Dict[str, List[CheckResult]] = {}
    for step in plan:
        logger.info("running suite: %s", step.name)
        rec = Recorder(step.name)
        try:
            step.run(ctx, rec)
        except BellToolkitError as e:
            rec.check("suite raised", False, detail=f"{type(e).__name__}: {e}")
        except Exception as e:
            logger.exception("suite %s crashed", step.name)
            rec.check("suite crashed", False, detail=f"{type(e).__name__}: {e}")
        results[step.name] = rec.checks
    return results


# --- 3. Verifier ---

def verifier(results: Dict[str, List[CheckResult]], tables: Optional[Dict[str, Any]] = None) -> SuiteReport:
    issues: List[str] = []
    checks: List[CheckResult] = []
    for suite, suite_checks in results.items():
        if not suite_checks:
            issues.append(f"{suite}: no checks recorded.")
        checks.extend(suite_checks)
        for c in failed_checks(suite_checks):
            issues.append(f"{suite}: {c.name} failed ({c.detail or c.value}).")
    return SuiteReport(passed=not issues, issues=issues, check_count=len(checks), checks=checks, tables=dict(tables or {}))


# --- Markdown ---

def _fmt_value(x: Optional[float]) -> str:
    if x is None:
        return "-"
    return f"{x:.3e}"


def generate_markdown(report: SuiteReport, seed: int, full: bool) -> str:
    md = "# Verification report\n\n"
    md += "## Summary\n"
    md += f"- **Result**: {'PASS' if report.passed else 'FAIL'}\n"
    md += f"- Checks: {report.check_count} ({sum(c.passed for c in report.checks)} passed)\n"
    md += f"- Seed: {seed}; grids: {'full' if full else 'quick'}\n\n"

    suites = list(dict.fromkeys(c.suite for c in report.checks))
    for suite in suites:
        md += f"## {suite}\n\n"
        md += "| Check | Result | Value |\n"
        md += "|---|---|---:|\n"
        for c in report.checks:
            if c.suite != suite:
                continue
            md += f"| {c.name} | {'pass' if c.passed else '**FAIL**'} | {_fmt_value(c.value)} |\n"
        md += "\n"

    violation = report.tables.get("violation")
    if violation is not None:
        md += "## Violation sweep\n\n"
        md += frame_to_markdown(violation) + "\n"

    if report.issues:
        md += "## Issues\n"
        for issue in report.issues:
            md += f"- {issue}\n"
    return md


# --- 4. Orchestrator Main ---

def run_verify(output_dir: str | Path, seed: int = 42, full: bool = False, workers: int = 1) -> SuiteReport:
    ctx = VerifyContext(seed=seed, full=full, workers=workers)
    results = executor(planner_lite(full), ctx)
    report = verifier(results, ctx.tables)

    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_checks_jsonl(out / CHECKS_FILE, report.checks)
    (out / REPORT_FILE).write_text(generate_markdown(report, seed, full), encoding="utf-8")

    if report.passed:
        logger.info("verify: all %d checks passed", report.check_count)
    else:
        for issue in report.issues:
            logger.error("verify: %s", issue)
    return report
