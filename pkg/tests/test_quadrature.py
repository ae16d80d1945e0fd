# tests/test_quadrature.py
from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given
from hypothesis import strategies as st

from src.contracts.errors import InvalidArgument
from src.contracts.types import QuadratureScheme, QuadratureSpec
from src.numerics.quadrature import gauss_rule, rule, tanh_sinh_rule, tanh_sinh_tail, truncation_bound


def _reference(g, length, power):
    value, _ = scipy.integrate.quad(g, 0.0, length, weight="alg", wvar=(power, 0.0), epsabs=1e-14, epsrel=1e-13)
    return value


@given(st.floats(min_value=-0.95, max_value=2.0), st.floats(min_value=0.05, max_value=2.0))
def test_gauss_rule_moments(power, length):
    x, w = gauss_rule(12, length, power)
    assert np.all((x > 0) & (x < length))
    for m in range(4):
        want = length ** (power + m + 1) / (power + m + 1)
        assert float(w @ x ** m) == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize(
    "make,power",
    [(gauss_rule, -0.98), (gauss_rule, -0.8), (gauss_rule, -0.5), (gauss_rule, 0.0), (tanh_sinh_rule, -0.8), (tanh_sinh_rule, -0.5), (tanh_sinh_rule, 0.0)],
)
def test_smooth_factor_against_scipy(make, power):
    g = np.cos
    x, w = make(40, 0.5, power)
    assert float(w @ g(x)) == pytest.approx(_reference(g, 0.5, power), rel=1e-12, abs=1e-11)


def test_tanh_sinh_nodes_resolve_endpoint():
    x, w = tanh_sinh_rule(48, 1.0, -0.5)
    assert x.min() < 1e-200
    assert np.all(np.isfinite(w)) and np.all(w > 0)
    assert float(w.sum()) == pytest.approx(2.0, abs=1e-12)


def test_tanh_sinh_tail():
    assert tanh_sinh_tail(1.0, 0.0) < 1e-250
    # a power close to -1 leaves visible mass below the first node
    assert tanh_sinh_tail(1.0, -0.98) > 1e-6


def test_rule_dispatch():
    gauss = QuadratureSpec()
    ts = QuadratureSpec(scheme=QuadratureScheme.TANH_SINH)
    assert len(rule(gauss, 16, 1.0)[0]) == 16
    assert len(rule(ts, 16, 1.0)[0]) == 33
    assert truncation_bound(gauss, 1.0, -0.5) == 0.0
    assert truncation_bound(ts, 1.0, -0.5) == tanh_sinh_tail(1.0, -0.5)


def test_spec_refined_and_validation():
    spec = QuadratureSpec(points=24)
    assert spec.refined().points == 48
    assert QuadratureSpec(scheme="tanh-sinh").scheme is QuadratureScheme.TANH_SINH
    with pytest.raises(InvalidArgument):
        QuadratureSpec(points=4)
    with pytest.raises(InvalidArgument):
        QuadratureSpec(target_abs_err=0.0)


@pytest.mark.parametrize("args", [(0, 1.0, 0.0), (8, 0.0, 0.0), (8, 1.0, -1.0)])
def test_invalid_rules(args):
    with pytest.raises(InvalidArgument):
        gauss_rule(*args)
    with pytest.raises(InvalidArgument):
        tanh_sinh_rule(*args)


def test_sqrt_singularity_exact():
    # int_0^1 x^(-1/2) dx = 2
    x, w = gauss_rule(1, 1.0, -0.5)
    assert float(w.sum()) == pytest.approx(2.0, rel=1e-14)
    assert math.isclose(float(x[0]), 1.0 / 3.0, rel_tol=1e-12)
