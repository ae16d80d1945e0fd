# src/quantum/measurements.py
from __future__ import annotations

import math
from functools import lru_cache
from typing import Dict

import numpy as np

from src.contracts.errors import BudgetExceeded, InvalidArgument, InvalidDimension
from src.contracts.types import MeasurementBasis, Party

ALICE_PHASES: Dict[int, float] = {1: 0.0, 2: 0.5}
BOB_PHASES: Dict[int, float] = {1: 0.25, 2: -0.25}

# full d x d storage only for the projector-arithmetic path
MAX_BASIS_D = 4096


def phase_for(party: Party, setting: int) -> float:
    table = ALICE_PHASES if Party(party) is Party.ALICE else BOB_PHASES
    if setting not in table:
        raise InvalidArgument(f"setting must be 1 or 2, got {setting!r}")
    return table[setting]


def best_basis(d: int, party: Party | str, setting: int) -> MeasurementBasis:
    """Fourier-phase projective basis of one party and setting."""
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    if d > MAX_BASIS_D:
        raise BudgetExceeded(f"explicit bases are limited to d <= {MAX_BASIS_D}; use bell.closed_form for d={d}")
    return _best_basis_cached(int(d), Party(party), int(setting))


@lru_cache(maxsize=64)
def _best_basis_cached(d: int, party: Party, setting: int) -> MeasurementBasis:
    phase = phase_for(party, setting)
    idx = np.arange(d, dtype=np.int64)
    m = idx[np.newaxis, :]
    k = idx[:, np.newaxis]

    # reduce the integer part mod d before scaling by 2 pi / d
    if party is Party.ALICE:
        whole = (m * k) % d
    else:
        whole = (-(m * k)) % d
    angle = (2.0 * math.pi / d) * (whole.astype(float) + m * phase)
    vectors = np.exp(1j * angle) / math.sqrt(d)
    return MeasurementBasis(d=d, party=party, setting=setting, phase=phase, vectors=vectors)
