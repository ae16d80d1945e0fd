# tests/test_run_log.py
from __future__ import annotations

import numpy as np
import pandas as pd

from src.contracts.types import CheckResult, JointDistribution
from src.reports.run_log import failed_checks, load_checks_jsonl, write_checks_jsonl
from src.reports.tables import (
    ENTROPY_COLUMNS,
    distribution_frame,
    entropy_frame,
    frame_to_markdown,
    write_csv,
    write_distribution_tables,
)

CHECKS = [
    CheckResult(suite="special", name="digamma(1)", passed=True, value=1e-16),
    CheckResult(suite="classical", name="lhv_minimum(3) = 1", passed=False, value=2.0, detail="witness (0, 0, 0, 0)"),
]


def test_write_then_load(tmp_path):
    path = tmp_path / "out" / "checks.jsonl"
    write_checks_jsonl(path, CHECKS)
    assert load_checks_jsonl(path) == CHECKS
    # rewriting replaces the previous run
    write_checks_jsonl(path, CHECKS[:1])
    assert load_checks_jsonl(path) == CHECKS[:1]


def test_keys_sorted_for_stable_bytes(tmp_path):
    path = tmp_path / "checks.jsonl"
    write_checks_jsonl(path, CHECKS[:1])
    line = path.read_text(encoding="utf-8").strip()
    assert line.index('"detail"') < line.index('"name"') < line.index('"passed"') < line.index('"suite"')


def test_load_skips_bad_lines(tmp_path):
    path = tmp_path / "checks.jsonl"
    write_checks_jsonl(path, CHECKS[:1])
    with path.open("a", encoding="utf-8") as f:
        f.write("not json\n\n{\"unexpected\": 1}\n")
    assert load_checks_jsonl(path) == CHECKS[:1]
    assert load_checks_jsonl(tmp_path / "missing.jsonl") == []


def test_failed_checks():
    assert failed_checks(CHECKS) == [CHECKS[1]]
    assert failed_checks(CHECKS[:1]) == []


def test_entropy_csv_leaves_missing_values_empty(tmp_path):
    df = entropy_frame([(4, 1.2, 1.1, 0.86, 0.79), (10 ** 7, None, 9.0, None, 0.56)])
    path = write_csv(df, tmp_path / "entropy.csv")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(ENTROPY_COLUMNS)
    assert lines[2] == "10000000,,9.0,,0.56"


def test_frame_to_markdown():
    md = frame_to_markdown(pd.DataFrame({"d": [2, 4], "A": [0.5, float("nan")]}))
    assert md.splitlines()[0] == "| d | A |"
    assert md.splitlines()[-1] == "| 4 | - |"


def test_distribution_table_clamps_rounding_negatives(tmp_path):
    probs = np.array([[0.5 + 1e-13, -1e-13], [0.0, 0.5]])
    dist = JointDistribution(d=2, setting_pair=(1, 2), probs=probs)
    df = distribution_frame(dist)
    assert list(df.columns) == ["k", "0", "1"]
    assert df.loc[0, "1"] == 0.0
    # the record keeps the raw value
    assert dist.probs[0, 1] == -1e-13
    paths = write_distribution_tables({(1, 2): dist}, tmp_path)
    assert [p.name for p in paths] == ["joint_12.csv"]
    assert paths[0].read_text(encoding="utf-8").splitlines()[0] == "k,0,1"
