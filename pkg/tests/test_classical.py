# tests/test_classical.py
from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.contracts.errors import BudgetExceeded, InvalidDimension
from src.contracts.types import DeterministicStrategy
from src.quantum.bell import bell_functional
from src.quantum.classical import MAX_LHV_D, _slice_values, lhv_minimum, lhv_value, strategy_distributions


@pytest.mark.parametrize(
    "strategy,expected",
    [
        (DeterministicStrategy(a1=0, a2=0, b1=0, b2=0), 1),
        (DeterministicStrategy(a1=0, a2=0, b1=1, b2=1), 2),
        (DeterministicStrategy(a1=1, a2=2, b1=0, b2=1), 1),
    ],
)
def test_lhv_value_examples(strategy, expected):
    assert lhv_value(strategy) == expected


@pytest.mark.parametrize("d", [1, 2, 3, 4, 8])
def test_lhv_minimum_is_one(d):
    value, witness = lhv_minimum(d)
    assert value == 1
    assert isinstance(value, int)
    assert lhv_value(witness) == 1


def test_witness_is_lexicographically_smallest():
    value, witness = lhv_minimum(3)
    assert witness.as_tuple() == (0, 0, 0, 0)
    brute = min(
        (lhv_value(DeterministicStrategy(*s)), s) for s in itertools.product(range(3), repeat=4)
    )
    assert (value, witness.as_tuple()) == brute


@given(st.integers(min_value=1, max_value=6).flatmap(lambda d: st.tuples(st.just(d), *[st.integers(0, d - 1)] * 4)))
def test_every_strategy_respects_bound(case):
    d, a1, a2, b1, b2 = case
    s = DeterministicStrategy(a1=a1, a2=a2, b1=b1, b2=b2)
    value = lhv_value(s)
    assert value in {1, 2, 3}
    assert bell_functional(strategy_distributions(s, d)) == pytest.approx(value, abs=1e-15)


def test_budget_and_dimension():
    with pytest.raises(BudgetExceeded):
        lhv_minimum(MAX_LHV_D + 1)
    with pytest.raises(InvalidDimension):
        lhv_minimum(0)
    with pytest.raises(InvalidDimension):
        strategy_distributions(DeterministicStrategy(a1=0, a2=3, b1=0, b2=0), 3)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_enumeration_table_matches_strategy_values(d):
    for a1 in range(d):
        vals = _slice_values(a1, d)
        assert vals.shape == (d, d, d)
        for a2, b1, b2 in itertools.product(range(d), repeat=3):
            assert vals[a2, b1, b2] == lhv_value(DeterministicStrategy(a1=a1, a2=a2, b1=b1, b2=b2))
