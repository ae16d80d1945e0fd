# src/quantum/states.py
from __future__ import annotations

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import entr

from src.contracts.errors import EmptyVector, InvalidArgument, InvalidDimension, NegativeCoefficient, ZeroVector
from src.contracts.types import SchmidtState

logger = logging.getLogger(__name__)

LOG_BASES = ("natural", "base2")

# above this size the normalization sum is accumulated with math.fsum
COMPENSATED_SUM_MIN_D = 1_000_000


def make_state(coefficients: Sequence[float]) -> SchmidtState:
    """Rescale non-negative coefficients to a unit-norm Schmidt state."""
    lam = np.asarray(coefficients, dtype=float).ravel()
    if lam.size == 0:
        raise EmptyVector("Schmidt coefficients must be non-empty.")
    if not np.all(np.isfinite(lam)):
        raise InvalidArgument("Schmidt coefficients must be finite.")
    if np.any(lam < 0):
        raise NegativeCoefficient(f"Schmidt coefficients must be >= 0 (min={lam.min()!r}).")
    norm = float(np.linalg.norm(lam))
    if norm == 0.0:
        raise ZeroVector("at least one Schmidt coefficient must be positive.")
    return SchmidtState(lam / norm)


def maximally_entangled(d: int) -> SchmidtState:
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    return SchmidtState(np.full(d, 1.0 / math.sqrt(d)))


def approximate_state(d: int) -> SchmidtState:
    """lambda_k ∝ 1/sqrt((k+1)(d-k)), palindromic by construction."""
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    k = np.arange(d, dtype=np.int64)
    # integer product is symmetric under k -> d-1-k, so the floats are too
    denom = ((k + 1) * (d - k)).astype(float)
    inv = 1.0 / denom
    if d >= COMPENSATED_SUM_MIN_D:
        total = math.fsum(inv)
    else:
        total = float(np.sum(inv))
    lam = np.sqrt(inv / total)
    return SchmidtState(lam)


def entropy(state: SchmidtState, log_base: str = "natural") -> float:
    """-sum lambda_k^2 log lambda_k^2 with 0 log 0 = 0."""
    if log_base not in LOG_BASES:
        raise InvalidArgument(f"log_base must be one of {LOG_BASES}, got {log_base!r}")
    p = state.coefficients ** 2
    value = float(np.sum(entr(p)))
    if log_base == "base2":
        value /= math.log(2.0)
    return value


def entropy_ratio(state: SchmidtState) -> float:
    """E(psi) / log d, independent of the log base."""
    if state.d < 2:
        raise InvalidDimension("entropy ratio needs d >= 2 (log d = 0)")
    return entropy(state) / math.log(state.d)


def entropy_ratio_sweep(d_values: Sequence[int]) -> List[Tuple[int, float]]:
    out: List[Tuple[int, float]] = []
    for d in d_values:
        d = int(d)
        if d < 2:
            raise InvalidDimension(f"entropy ratio needs d >= 2, got {d}")
        ratio = entropy_ratio(approximate_state(d))
        logger.debug("entropy ratio d=%d ratio=%.15f", d, ratio)
        out.append((d, ratio))
    return out
