# src/orchestrator/sweeps.py
"""Sweep drivers behind the CLI: evaluate a grid, keep input order, return a table."""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

import pandas as pd

from src.contracts.errors import InvalidDimension
from src.contracts.types import QuadratureSpec
from src.numerics import continuum
from src.numerics.optimize import DEFAULT_MAX_ITER, DEFAULT_TOL, MAX_SWEEP_D, optimal_state, violation_point
from src.quantum.states import approximate_state, entropy
from src.reports.tables import ContinuumRow, EntropyRow, continuum_frame, entropy_frame, violation_frame

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_d_grid() -> List[int]:
    """Powers of two 2..2^14 plus 10^3, 10^4, 10^5, sorted."""
    grid = {2 ** p for p in range(1, 15)} | {10 ** 3, 10 ** 4, 10 ** 5}
    return sorted(grid)


def run_ordered(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> List[R]:
    """fn over items, results in input order; workers > 1 uses a thread pool."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def violation_table(
    d_values: Iterable[int],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: str = "power",
    workers: int = 1,
) -> pd.DataFrame:
    d_values = [int(d) for d in d_values]
    points = run_ordered(lambda d: violation_point(d, tol=tol, max_iter=max_iter, method=method), d_values, workers)
    logger.info("violation sweep: %d points, d=%d..%d", len(points), min(d_values), max(d_values))
    return violation_frame(points)


def _entropy_row(d: int, log_base: str, tol: float, max_iter: int, method: str) -> EntropyRow:
    norm = math.log(d) if log_base == "natural" else math.log2(d)
    approx = entropy(approximate_state(d), log_base=log_base)
    if d > MAX_SWEEP_D:
        return (d, None, approx, None, approx / norm)
    opt = entropy(optimal_state(d, tol=tol, max_iter=max_iter, method=method).eigenvector, log_base=log_base)
    return (d, opt, approx, opt / norm, approx / norm)


def entropy_table(
    d_values: Iterable[int],
    log_base: str = "natural",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: str = "power",
    workers: int = 1,
) -> pd.DataFrame:
    """Entropy of the optimal and approximate states; optimal columns stay empty above MAX_SWEEP_D."""
    d_values = [int(d) for d in d_values]
    if any(d < 2 for d in d_values):
        raise InvalidDimension(f"entropy ratio needs d >= 2, got {min(d_values)}")
    rows = run_ordered(lambda d: _entropy_row(d, log_base, tol, max_iter, method), d_values, workers)
    skipped = [d for d in d_values if d > MAX_SWEEP_D]
    if skipped:
        logger.info("entropy sweep: optimal state skipped for d=%s (above %d)", skipped, MAX_SWEEP_D)
    logger.info("entropy sweep: %d points (%s log)", len(rows), log_base)
    return entropy_frame(rows)


def continuum_table(
    deltas: Iterable[float],
    epsilon: float = continuum.DEFAULT_EPSILON,
    quad: Optional[QuadratureSpec] = None,
    workers: int = 1,
) -> pd.DataFrame:
    quad = quad or continuum.DEFAULT_QUAD
    deltas = [float(x) for x in deltas]

    def row(delta: float) -> ContinuumRow:
        m = continuum.m_functional(continuum.make_ansatz(delta), quad)
        return (delta, m, continuum.i_delta_closed_form(delta, epsilon), epsilon)

    rows = run_ordered(row, deltas, workers)
    logger.info("continuum sweep: %d deltas, epsilon=%s, %s quadrature", len(rows), epsilon, quad.scheme.value)
    return continuum_frame(rows)
