# tests/test_optimize.py
from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from src.contracts.errors import BudgetExceeded, DimensionMismatch, InvalidArgument, InvalidDimension, MaxIterationsExceeded
from src.numerics import optimize
from src.numerics.optimize import (
    dense_matrix,
    embedding_size,
    kernel,
    matvec,
    matvec_fft,
    matvec_naive,
    optimal_state,
    quadratic_form,
    violation_point,
    violation_sweep,
)
from src.quantum.bell import closed_form
from src.quantum.states import approximate_state

A2 = (3.0 - math.sqrt(2.0)) / 2.0


def test_kernel_first_row():
    k = kernel(4)
    j = np.arange(4)
    assert np.allclose(k.first_row, 1.0 / (4 * np.cos(np.pi * j / 8)))
    assert np.allclose(dense_matrix(k), dense_matrix(k).T)


@pytest.mark.parametrize("d,n", [(1, 1), (2, 4), (3, 8), (5, 16), (64, 128), (65, 256)])
def test_embedding_size(d, n):
    assert embedding_size(d) == n


@given(st.integers(min_value=1, max_value=600), st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_fft_matvec_matches_naive(d, seed):
    v = np.random.default_rng(seed).standard_normal(d)
    k = kernel(d)
    assert np.max(np.abs(matvec_fft(k, v) - matvec_naive(k, v))) <= 1e-10


@pytest.mark.parametrize("d", [1000, 4096])
def test_fft_matvec_matches_naive_large(d, rng):
    v = rng.standard_normal(d)
    k = kernel(d)
    assert np.max(np.abs(matvec_fft(k, v) - matvec_naive(k, v))) <= 1e-10


def test_matvec_shape_checked():
    with pytest.raises(DimensionMismatch):
        matvec(kernel(4), np.ones(5))


def test_quadratic_form_is_closed_form():
    lam = approximate_state(200).coefficients
    assert 2.0 - quadratic_form(kernel(200), lam) == pytest.approx(closed_form(approximate_state(200), method="dense").value, abs=1e-12)


def test_d2_headline():
    res = optimal_state(2)
    assert res.bell_value == pytest.approx(A2, abs=1e-10)
    assert np.allclose(res.eigenvector.coefficients, 1.0 / math.sqrt(2.0), atol=1e-12)
    assert res.converged


def test_d1():
    res = optimal_state(1)
    assert res.eigenvalue == pytest.approx(1.0)
    assert res.eigenvector.coefficients.tolist() == [1.0]


@pytest.mark.parametrize("d", [3, 8, 50, 128])
def test_power_matches_dense_eigh(d):
    ref = scipy.linalg.eigvalsh(dense_matrix(kernel(d)))[-1]
    res = optimal_state(d)
    assert res.eigenvalue == pytest.approx(ref, abs=1e-10)
    assert res.residual <= 1e-10
    lam = res.eigenvector.coefficients
    assert np.all(lam > 0)
    assert np.allclose(lam, lam[::-1], atol=1e-12)


@pytest.mark.parametrize("method", ["lanczos", "dense"])
def test_other_methods_agree(method):
    power = optimal_state(200)
    other = optimal_state(200, method=method)
    assert other.method == method
    assert other.eigenvalue == pytest.approx(power.eigenvalue, abs=1e-10)
    assert np.allclose(other.eigenvector.coefficients, power.eigenvector.coefficients, atol=1e-8)


def test_max_iterations_carries_best_iterate():
    with pytest.raises(MaxIterationsExceeded) as info:
        optimal_state(512, tol=1e-15, max_iter=3)
    best = info.value.result
    assert best is not None and not best.converged
    assert best.eigenvector.d == 512


def test_argument_validation():
    with pytest.raises(InvalidDimension):
        optimal_state(0)
    with pytest.raises(InvalidArgument):
        optimal_state(4, tol=0.0)
    with pytest.raises(InvalidArgument):
        optimal_state(4, method="qr")


def test_dense_budget():
    with pytest.raises(BudgetExceeded):
        optimal_state(optimize.DENSE_MAX_D + 1, method="dense")


def test_violation_trend_small_grid():
    points = violation_sweep([2 ** p for p in range(1, 11)])
    a_opt = [p.a_optimal for p in points]
    assert all(a > 0 for a in a_opt)
    assert all(b < a for a, b in zip(a_opt, a_opt[1:]))
    for p in points:
        assert p.a_approximate >= p.a_optimal - 1e-12
    assert points[0].a_optimal == pytest.approx(A2, abs=1e-10)


def test_violation_point_budget(monkeypatch):
    monkeypatch.setattr(optimize, "MAX_SWEEP_D", 16)
    with pytest.raises(BudgetExceeded):
        violation_point(17)
    with pytest.raises(BudgetExceeded):
        violation_sweep([2, 32])


@pytest.mark.slow
def test_violation_trend_default_grid():
    grid = [2 ** p for p in range(1, 15)] + [10 ** 5]
    points = violation_sweep(grid)
    a_opt = [p.a_optimal for p in points]
    assert all(a > 0 for a in a_opt)
    assert all(b < a for a, b in zip(a_opt, a_opt[1:]))
    assert all(p.a_approximate >= p.a_optimal - 1e-12 for p in points)


@pytest.mark.slow
def test_power_iteration_at_1e5():
    res = optimal_state(10 ** 5)
    assert res.converged
    assert res.residual <= 1e-9
