# tests/test_measurements.py
from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.contracts.errors import BudgetExceeded, InvalidArgument, InvalidDimension
from src.contracts.types import Party
from src.quantum.measurements import ALICE_PHASES, BOB_PHASES, MAX_BASIS_D, best_basis, phase_for

SETTINGS = [(Party.ALICE, 1), (Party.ALICE, 2), (Party.BOB, 1), (Party.BOB, 2)]


@given(st.integers(min_value=1, max_value=48), st.sampled_from(SETTINGS))
def test_bases_are_orthonormal(d, party_setting):
    party, setting = party_setting
    basis = best_basis(d, party, setting)
    assert basis.vectors.shape == (d, d)
    assert np.allclose(basis.gram(), np.eye(d), atol=1e-12)


@pytest.mark.parametrize("party,setting", SETTINGS)
def test_matches_fourier_formula(party, setting):
    d = 5
    basis = best_basis(d, party, setting)
    phase = phase_for(party, setting)
    sign = 1 if party is Party.ALICE else -1
    for k in range(d):
        for m in range(d):
            want = cmath.exp(2j * math.pi * m * (sign * k + phase) / d) / math.sqrt(d)
            assert basis.vectors[k, m] == pytest.approx(want, abs=1e-13)


def test_phases():
    assert ALICE_PHASES == {1: 0.0, 2: 0.5}
    assert BOB_PHASES == {1: 0.25, 2: -0.25}
    assert best_basis(4, "bob", 2).phase == -0.25


def test_large_index_products_stay_accurate():
    # m * k is reduced mod d before the 2 pi / d scaling
    d = 1021
    basis = best_basis(d, Party.ALICE, 1)
    k, m = d - 1, d - 1
    want = cmath.exp(2j * math.pi * ((m * k) % d) / d) / math.sqrt(d)
    assert basis.vectors[k, m] == pytest.approx(want, abs=1e-14)


def test_invalid_arguments():
    with pytest.raises(InvalidDimension):
        best_basis(0, Party.ALICE, 1)
    with pytest.raises(InvalidArgument):
        best_basis(3, Party.ALICE, 3)
    with pytest.raises(ValueError):
        best_basis(3, "carol", 1)
    with pytest.raises(BudgetExceeded):
        best_basis(MAX_BASIS_D + 1, Party.BOB, 1)


def test_cached_basis_is_read_only():
    basis = best_basis(3, Party.ALICE, 1)
    assert best_basis(3, Party.ALICE, 1) is basis
    with pytest.raises(ValueError):
        basis.vectors[0, 0] = 0.0
