# src/quantum/classical.py
"""Local-realistic side of the functional: deterministic strategies and their minimum.

The functional is linear in the joint probabilities and every local hidden
variable model is a convex mixture of deterministic strategies, so the minimum
over the d^4 deterministic assignments is the minimum over all LHV models.
"""
from __future__ import annotations

import logging
from typing import Dict, Tuple

import numpy as np

from src.contracts.errors import BudgetExceeded, InvalidDimension
from src.contracts.types import DeterministicStrategy, JointDistribution, SettingPair
from src.quantum.bell import SETTING_PAIRS

logger = logging.getLogger(__name__)

MAX_LHV_D = 40


def lhv_value(strategy: DeterministicStrategy) -> int:
    """[a2<b2] + [b2<a1] + [a1<b1] + [b1<=a2]."""
    a1, a2, b1, b2 = strategy.as_tuple()
    return int(a2 < b2) + int(b2 < a1) + int(a1 < b1) + int(b1 <= a2)


def _slice_values(a1: int, d: int) -> np.ndarray:
    """Functional over all (a2, b1, b2) with a1 fixed, indexed [a2, b1, b2]."""
    r = np.arange(d)
    a2 = r[:, np.newaxis, np.newaxis]
    b1 = r[np.newaxis, :, np.newaxis]
    b2 = r[np.newaxis, np.newaxis, :]
    vals = np.zeros((d, d, d), dtype=np.int8)
    vals += a2 < b2
    vals += b2 < a1
    vals += a1 < b1
    vals += b1 <= a2
    return vals


def lhv_minimum(d: int) -> Tuple[int, DeterministicStrategy]:
    """Exhaustive minimum over deterministic strategies.

    Slices over a1 are scanned in order and only a strictly smaller value
    replaces the incumbent, so the witness is the lexicographically smallest
    argmin (a1, a2, b1, b2).
    """
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    if d > MAX_LHV_D:
        raise BudgetExceeded(f"LHV enumeration limited to d <= {MAX_LHV_D} ({MAX_LHV_D ** 4} strategies), got {d}")

    best_value: int | None = None
    best: DeterministicStrategy | None = None
    for a1 in range(d):
        vals = _slice_values(a1, d)
        flat = int(np.argmin(vals))
        value = int(vals.flat[flat])
        if best_value is None or value < best_value:
            a2, b1, b2 = np.unravel_index(flat, vals.shape)
            best_value = value
            best = DeterministicStrategy(a1=a1, a2=int(a2), b1=int(b1), b2=int(b2))

    assert best is not None and best_value is not None
    logger.debug("lhv minimum d=%d value=%d witness=%s", d, best_value, best.as_tuple())
    return best_value, best


def strategy_distributions(strategy: DeterministicStrategy, d: int) -> Dict[SettingPair, JointDistribution]:
    """Point-mass joint distributions P(k, l | a, b) = [k = a_a][l = b_b]."""
    strategy.validate(d)
    alice = {1: strategy.a1, 2: strategy.a2}
    bob = {1: strategy.b1, 2: strategy.b2}
    out: Dict[SettingPair, JointDistribution] = {}
    for a, b in SETTING_PAIRS:
        probs = np.zeros((d, d))
        probs[alice[a], bob[b]] = 1.0
        out[(a, b)] = JointDistribution(d=d, setting_pair=(a, b), probs=probs)
    return out
