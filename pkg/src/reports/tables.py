# src/reports/tables.py
from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.contracts.types import JointDistribution, SettingPair, ViolationPoint

VIOLATION_COLUMNS = ["d", "A_optimal", "A_approximate", "eigenvalue", "iterations", "residual"]
ENTROPY_COLUMNS = ["d", "entropy_optimal", "entropy_approx", "ratio_optimal", "ratio_approx"]
CONTINUUM_COLUMNS = ["delta", "M_f", "I_delta_closed", "epsilon"]

EntropyRow = Tuple[int, Optional[float], float, Optional[float], float]
ContinuumRow = Tuple[float, Optional[float], float, float]


def violation_frame(points: Iterable[ViolationPoint]) -> pd.DataFrame:
    rows = [
        {
            "d": p.d,
            "A_optimal": p.a_optimal,
            "A_approximate": p.a_approximate,
            "eigenvalue": p.eigenvalue,
            "iterations": p.iterations,
            "residual": p.residual,
        }
        for p in points
    ]
    return pd.DataFrame(rows, columns=VIOLATION_COLUMNS)


def entropy_frame(rows: Iterable[EntropyRow]) -> pd.DataFrame:
    """Missing optimal-state values (d beyond the eigen budget) stay NaN."""
    df = pd.DataFrame(list(rows), columns=ENTROPY_COLUMNS)
    df["d"] = df["d"].astype("int64")
    return df


def continuum_frame(rows: Iterable[ContinuumRow]) -> pd.DataFrame:
    return pd.DataFrame(list(rows), columns=CONTINUUM_COLUMNS)


def write_csv(df: pd.DataFrame, path: str | Path) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(p, index=False, na_rep="", lineterminator="\n")
    return p


def distribution_frame(dist: JointDistribution) -> pd.DataFrame:
    """P(k, l | a, b) with row k and one column per l; rounding negatives clamped to 0."""
    df = pd.DataFrame(dist.clamped(), columns=[str(l) for l in range(dist.d)])
    df.insert(0, "k", np.arange(dist.d, dtype=np.int64))
    return df


def write_distribution_tables(dists: Mapping[SettingPair, JointDistribution], out_dir: str | Path) -> List[Path]:
    """One CSV per setting pair, `joint_<a><b>.csv`, in setting order."""
    out = Path(out_dir)
    return [write_csv(distribution_frame(dists[pair]), out / f"joint_{pair[0]}{pair[1]}.csv") for pair in sorted(dists)]


# ---------- Markdown ----------
def _fmt_cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        if math.isnan(x):
            return "-"
        return f"{x:.10g}"
    return str(x)


def frame_to_markdown(df: pd.DataFrame, max_rows: Optional[int] = None) -> str:
    cols: Sequence[str] = list(df.columns)
    md = "| " + " | ".join(cols) + " |\n"
    md += "|" + "---:|" * len(cols) + "\n"
    body: List[str] = []
    view = df if max_rows is None else df.head(max_rows)
    for row in view.itertuples(index=False):
        body.append("| " + " | ".join(_fmt_cell(v) for v in row) + " |")
    md += "\n".join(body)
    if body:
        md += "\n"
    return md
