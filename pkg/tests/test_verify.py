# tests/test_verify.py
from __future__ import annotations

import pytest

from src.contracts.errors import QuadratureNotConverged
from src.contracts.types import CheckResult
from src.orchestrator.verify import (
    CHECKS_FILE,
    REPORT_FILE,
    Recorder,
    SuitePlan,
    VerifyContext,
    executor,
    generate_markdown,
    planner_lite,
    run_verify,
    verifier,
)
from src.reports.run_log import load_checks_jsonl


def test_plan_order():
    names = [s.name for s in planner_lite()]
    assert names == ["headline", "oracle", "classical", "chsh", "toeplitz", "tightness", "entropy", "special", "continuum"]


def test_recorder_close():
    rec = Recorder("demo")
    assert rec.close("near", 1.0 + 1e-12, 1.0, 1e-10)
    assert not rec.close("far", 1.1, 1.0, 1e-10)
    assert [c.passed for c in rec.checks] == [True, False]
    assert rec.checks[1].value == pytest.approx(0.1)


def test_executor_turns_errors_into_failed_checks():
    def broken(ctx, rec):
        rec.check("first", True)
        raise QuadratureNotConverged("levels disagree", estimate=1.0, error_estimate=1e-3)

    results = executor([SuitePlan("broken", broken)], VerifyContext())
    assert [c.name for c in results["broken"]] == ["first", "suite raised"]
    report = verifier(results)
    assert not report.passed
    assert report.check_count == 2
    assert "QuadratureNotConverged" in report.issues[0]


def test_executor_keeps_going_after_a_crash():
    def crashing(ctx, rec):
        raise ValueError("shape mismatch")

    def fine(ctx, rec):
        rec.check("ok", True)

    results = executor([SuitePlan("crashing", crashing), SuitePlan("fine", fine)], VerifyContext())
    assert results["crashing"][0].name == "suite crashed"
    assert "ValueError: shape mismatch" in results["crashing"][0].detail
    assert [c.passed for c in results["fine"]] == [True]
    assert not verifier(results).passed


def test_verifier_flags_empty_suites():
    report = verifier({"empty": []})
    assert not report.passed
    assert report.issues == ["empty: no checks recorded."]


def test_markdown_lists_failures():
    checks = [
        CheckResult(suite="a", name="ok", passed=True, value=0.0),
        CheckResult(suite="a", name="bad", passed=False, value=1.0, detail="off by one"),
    ]
    report = verifier({"a": checks})
    md = generate_markdown(report, seed=7, full=False)
    assert "**Result**: FAIL" in md
    assert "| bad | **FAIL** | 1.000e+00 |" in md
    assert "- a: bad failed (off by one)." in md


def test_rng_streams_are_seeded():
    a = VerifyContext(seed=42).rng(1).standard_normal(3)
    b = VerifyContext(seed=42).rng(1).standard_normal(3)
    c = VerifyContext(seed=42).rng(2).standard_normal(3)
    assert (a == b).all()
    assert not (a == c).all()


def test_verify_passes(tmp_path):
    report = run_verify(tmp_path, seed=42)
    assert report.passed, report.issues
    assert (tmp_path / REPORT_FILE).read_text(encoding="utf-8").startswith("# Verification report")
    checks = load_checks_jsonl(tmp_path / CHECKS_FILE)
    assert len(checks) == report.check_count
    names = {c.name for c in checks}
    assert "optimal_state(1e5) residual <= 1e-9" in names
    assert "bell_value == closed_form, d=8, 100 states" in names
    assert {c.suite for c in checks} == {s.name for s in planner_lite()}


@pytest.mark.slow
def test_verify_is_deterministic(tmp_path):
    run_verify(tmp_path / "a", seed=42)
    run_verify(tmp_path / "b", seed=42)
    for name in (CHECKS_FILE, REPORT_FILE):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


@pytest.mark.slow
def test_full_verify_passes(tmp_path):
    report = run_verify(tmp_path, seed=42, full=True)
    assert report.passed, report.issues
