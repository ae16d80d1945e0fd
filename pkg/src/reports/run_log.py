# src/reports/run_log.py

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, Iterable, List

from src.contracts.types import CheckResult


def check_record(check: CheckResult) -> Dict[str, Any]:
    rec = asdict(check)
    if rec["value"] is not None:
        rec["value"] = float(rec["value"])
    return rec


def write_checks_jsonl(path: str | Path, checks: Iterable[CheckResult]) -> None:
    """Write one JSON object per check, replacing any previous run.

    Keys are sorted so that identical runs give identical files.
    """
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as f:
        for check in checks:
            f.write(json.dumps(check_record(check), ensure_ascii=False, sort_keys=True) + "\n")


def load_checks_jsonl(path: str | Path) -> List[CheckResult]:
    p = Path(path)
    if not p.exists():
        return []
    out: List[CheckResult] = []
    for line in p.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            out.append(CheckResult(**rec))
        except (json.JSONDecodeError, TypeError):
            continue
    return out


def failed_checks(checks: Iterable[CheckResult]) -> List[CheckResult]:
    return [c for c in checks if not c.passed]
