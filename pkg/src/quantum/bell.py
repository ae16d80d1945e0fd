# src/quantum/bell.py
from __future__ import annotations

import math
from typing import Dict, Mapping, Optional, Tuple

import numpy as np

from src.contracts.errors import DimensionMismatch, InvalidArgument, InvalidDimension
from src.contracts.types import (
    BellValue,
    JointDistribution,
    MeasurementBasis,
    OutcomeValues,
    Party,
    SchmidtState,
    SettingPair,
)
from src.numerics.optimize import kernel, quadratic_form
from src.quantum.measurements import best_basis
from src.quantum.states import make_state

SETTING_PAIRS: Tuple[SettingPair, ...] = ((1, 1), (1, 2), (2, 1), (2, 2))
CHSH_OUTCOMES = OutcomeValues(np.array([-1.0, 1.0]))

# at and below this d the closed form uses the dense double sum
CLOSED_FORM_DENSE_MAX_D = 2048


def joint_distribution(state: SchmidtState, alice: MeasurementBasis, bob: MeasurementBasis) -> JointDistribution:
    """P(k, l | a, b) = |sum_m lambda_m <a_k|m> <b_l|m>|^2 for the Schmidt state."""
    d = state.d
    if alice.d != d or bob.d != d:
        raise DimensionMismatch(f"state d={d}, alice d={alice.d}, bob d={bob.d}")
    if Party(alice.party) is not Party.ALICE or Party(bob.party) is not Party.BOB:
        raise InvalidArgument("joint_distribution expects (alice basis, bob basis)")

    weighted = alice.vectors.conj() * state.coefficients[np.newaxis, :]
    amplitudes = weighted @ bob.vectors.conj().T
    probs = amplitudes.real ** 2 + amplitudes.imag ** 2
    return JointDistribution(d=d, setting_pair=(alice.setting, bob.setting), probs=probs)


def quantum_distributions(state: SchmidtState) -> Dict[SettingPair, JointDistribution]:
    d = state.d
    return {
        (a, b): joint_distribution(state, best_basis(d, Party.ALICE, a), best_basis(d, Party.BOB, b))
        for a, b in SETTING_PAIRS
    }


# ---------- the four-term functional ----------
def _p_alice_less(dist: JointDistribution) -> float:
    return float(np.triu(dist.probs, 1).sum())


def _p_bob_less(dist: JointDistribution) -> float:
    return float(np.tril(dist.probs, -1).sum())


def _p_bob_less_equal(dist: JointDistribution) -> float:
    return float(np.tril(dist.probs).sum())


def _check_quadruple(dists: Mapping[SettingPair, JointDistribution]) -> int:
    missing = [p for p in SETTING_PAIRS if p not in dists]
    if missing:
        raise InvalidArgument(f"missing setting pairs: {missing}")
    dims = {dists[p].d for p in SETTING_PAIRS}
    if len(dims) != 1:
        raise DimensionMismatch(f"distributions disagree on d: {sorted(dims)}")
    return dims.pop()


def bell_functional(dists: Mapping[SettingPair, JointDistribution]) -> float:
    """P(A2<B2) + P(B2<A1) + P(A1<B1) + P(B1<=A2); the last term is non-strict."""
    _check_quadruple(dists)
    return (
        _p_alice_less(dists[(2, 2)])
        + _p_bob_less(dists[(1, 2)])
        + _p_alice_less(dists[(1, 1)])
        + _p_bob_less_equal(dists[(2, 1)])
    )


def bell_value(state: SchmidtState, d: int) -> BellValue:
    if state.d != d:
        raise DimensionMismatch(f"state has d={state.d}, expected {d}")
    return BellValue(bell_functional(quantum_distributions(state)))


def closed_form(state: SchmidtState, method: str = "auto") -> BellValue:
    """A_d(lambda) = 2 - (1/d) sum_{k,l} lambda_k lambda_l / cos(pi (k-l) / (2d))."""
    lam = state.coefficients
    d = state.d
    if method == "auto":
        method = "dense" if d <= CLOSED_FORM_DENSE_MAX_D else "fft"
    if method == "dense":
        k = np.arange(d)
        diff = k[:, np.newaxis] - k[np.newaxis, :]
        mat = 1.0 / (d * np.cos(np.pi * diff / (2.0 * d)))
        quad = float(lam @ mat @ lam)
    elif method == "fft":
        quad = quadratic_form(kernel(d), lam)
    else:
        raise InvalidArgument(f"unknown closed_form method {method!r}")
    return BellValue(2.0 - quad)


def expectation(dist: JointDistribution, outcomes: OutcomeValues) -> float:
    """<A_a B_b> = sum_{k,l} x_k x_l P(k, l | a, b)."""
    x = outcomes.values
    if x.size != dist.d:
        raise DimensionMismatch(f"{x.size} outcome values for d={dist.d}")
    return float(x @ dist.probs @ x)


# ---------- d = 2 correspondence with CHSH ----------
def chsh_value(dists: Mapping[SettingPair, JointDistribution], outcomes: OutcomeValues = CHSH_OUTCOMES) -> float:
    """S = <A2B2> + <A1B2> + <A1B1> - <A2B1>."""
    e = {p: expectation(dists[p], outcomes) for p in SETTING_PAIRS}
    return e[(2, 2)] + e[(1, 2)] + e[(1, 1)] - e[(2, 1)]


def chsh_identity_check(dists: Mapping[SettingPair, JointDistribution]) -> Tuple[float, float, float]:
    """Return (S, lhs, S - (6 - 4 lhs)); the residual vanishes on no-signalling quadruples."""
    d = _check_quadruple(dists)
    if d != 2:
        raise InvalidDimension(f"the CHSH correspondence needs d=2, got d={d}")
    s = chsh_value(dists)
    lhs = bell_functional(dists)
    return s, lhs, s - (6.0 - 4.0 * lhs)


def no_signalling_residual(dists: Mapping[SettingPair, JointDistribution]) -> float:
    """Largest change of a party's marginal when only the other party's setting changes."""
    _check_quadruple(dists)
    worst = 0.0
    for a in (1, 2):
        diff = dists[(a, 1)].alice_marginal() - dists[(a, 2)].alice_marginal()
        worst = max(worst, float(np.abs(diff).max()))
    for b in (1, 2):
        diff = dists[(1, b)].bob_marginal() - dists[(2, b)].bob_marginal()
        worst = max(worst, float(np.abs(diff).max()))
    return worst


# ---------- random inputs for oracle checks ----------
def random_state(d: int, rng: np.random.Generator) -> SchmidtState:
    """Uniform non-negative draw, normalized: covers the positive orthant of the Schmidt sphere."""
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    while True:
        raw = rng.uniform(0.0, 1.0, size=d)
        if raw.any():
            return make_state(raw)


def random_no_signalling_quadruple(rng: np.random.Generator) -> Dict[SettingPair, JointDistribution]:
    """d=2 quadruple with setting-independent marginals P(A_a=0), P(B_b=0)."""
    pa = {a: float(rng.uniform()) for a in (1, 2)}
    pb = {b: float(rng.uniform()) for b in (1, 2)}
    out: Dict[SettingPair, JointDistribution] = {}
    for a, b in SETTING_PAIRS:
        lo = max(0.0, pa[a] + pb[b] - 1.0)
        hi = min(pa[a], pb[b])
        t = float(rng.uniform(lo, hi))
        probs = np.array([[t, pa[a] - t], [pb[b] - t, 1.0 - pa[a] - pb[b] + t]])
        out[(a, b)] = JointDistribution(d=2, setting_pair=(a, b), probs=np.maximum(probs, 0.0))
    return out


def tsirelson_lhs() -> float:
    """(3 - sqrt 2)/2, the d=2 quantum minimum of the functional."""
    return (3.0 - math.sqrt(2.0)) / 2.0
