# src/numerics/continuum.py
"""Large-d limit of the functional.

With lambda_k ~ f(k/d)/sqrt(d) the quadratic form tends to
    M(f) = int_0^1 int_0^1 f(x) f(y) / cos(pi (x - y) / 2) dx dy,
and the Bell value to 2 - M(f). The ansatz family
    f_delta(x) = C_delta * (x(1-x))^(delta - 1/2)
pushes M towards 2 as delta -> 0.

Integrals over the unit square are split into the four half-width quadrants.
Diagonal quadrants carry only endpoint powers; the off-diagonal quadrants also
carry 1/sin(pi (s + t) / 2) at their shared corner, which a Duffy split
t = s * eta turns into a smooth integrand. All endpoint powers go into the
quadrature weights (see quadrature.py).
"""
from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np

from src.contracts.errors import DeltaOutOfRange, ParameterOutOfRange, QuadratureNotConverged, XOutOfRange
from src.contracts.types import ChainCheck, ContinuumAnsatz, QuadratureSpec, SchmidtState
from src.numerics import quadrature
from src.numerics.special import digamma, gamma_fn
from src.quantum.states import make_state

logger = logging.getLogger(__name__)

DEFAULT_QUAD = QuadratureSpec()
DELTA_GRID = (0.2, 0.1, 0.05, 0.02, 0.01)
DEFAULT_EPSILON = 0.5

TrialFunction = Callable[[np.ndarray], np.ndarray]


# ---------- ansatz ----------
def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 0.25:
        raise DeltaOutOfRange(f"delta={delta!r} must lie in (0, 1/4)")


def make_ansatz(delta: float) -> ContinuumAnsatz:
    _check_delta(delta)
    denom = gamma_fn(0.5 - 2.0 * delta) * gamma_fn(2.0 * delta) * math.cos(2.0 * math.pi * delta)
    c = math.pi ** 0.25 * 2.0 ** (2.0 * delta - 0.5) / math.sqrt(denom)
    return ContinuumAnsatz(delta=delta, normalization=c)


def f_delta(delta: float, x):
    """C_delta (x(1-x))^(delta-1/2) on the open unit interval; scalar in, scalar out."""
    ansatz = make_ansatz(delta)
    arr = np.asarray(x, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise XOutOfRange("x must lie in the open interval (0, 1)")
    out = ansatz.normalization * (arr * (1.0 - arr)) ** ansatz.exponent
    return float(out) if out.ndim == 0 else out


def discretized_state(delta: float, d: int) -> SchmidtState:
    """Schmidt state lambda_k proportional to f_delta((k + 1/2)/d)."""
    ansatz = make_ansatz(delta)
    if d < 1:
        raise ParameterOutOfRange(f"d must be >= 1, got {d}")
    k = np.arange(d, dtype=np.int64)
    # (2k+1)(2d-2k-1) is exact and palindromic in k
    prod = ((2 * k + 1) * (2 * d - 2 * k - 1)).astype(float)
    return make_state(prod ** ansatz.exponent)


# ---------- quadrant integrals ----------
def _ones(x: np.ndarray) -> np.ndarray:
    return np.ones_like(x)


def _diagonal(a: float, length: float, gx: TrialFunction, gy: TrialFunction, quad: QuadratureSpec, n: int) -> float:
    """int_0^L int_0^L (st)^a ((1-s)(1-t))^a gx(s) gy(t) sec(pi (s - t) / 2)."""
    x, w = quadrature.rule(quad, n, length, a)
    smooth = w * (1.0 - x) ** a
    kern = 1.0 / np.cos(0.5 * np.pi * (x[:, np.newaxis] - x[np.newaxis, :]))
    return float((smooth * gx(x)) @ kern @ (smooth * gy(x)))


def _duffy_triangle(a: float, length: float, p: TrialFunction, q: TrialFunction, quad: QuadratureSpec, n: int) -> float:
    """Triangle t <= s of  (st)^a ((1-s)(1-t))^a p(s) q(t) / sin(pi (s + t) / 2)."""
    s, ws = quadrature.rule(quad, n, length, 2.0 * a)
    eta, we = quadrature.rule(quad, n, 1.0, a)
    ss = s[:, np.newaxis]
    ee = eta[np.newaxis, :]
    t = ss * ee
    denom = 0.5 * np.pi * (1.0 + ee) * np.sinc(0.5 * ss * (1.0 + ee))
    vals = (1.0 - ss) ** a * (1.0 - t) ** a * p(ss) * q(t) / denom
    return float(ws @ vals @ we)


def _corner(a: float, length: float, gx: TrialFunction, gy: TrialFunction, quad: QuadratureSpec, n: int) -> float:
    """int_0^L int_0^L (st)^a ((1-s)(1-t))^a gx(s) gy(t) / sin(pi (s + t) / 2)."""
    return _duffy_triangle(a, length, gx, gy, quad, n) + _duffy_triangle(a, length, gy, gx, quad, n)


def _unit_square(a: float, g: TrialFunction, quad: QuadratureSpec, n: int) -> float:
    """int_0^1 int_0^1 w(x) w(y) sec(pi (x - y) / 2) with w = (x(1-x))^a g(x)."""
    left = g

    def right(s: np.ndarray) -> np.ndarray:
        return g(1.0 - s)

    return (
        _diagonal(a, 0.5, left, left, quad, n)
        + _diagonal(a, 0.5, right, right, quad, n)
        + _corner(a, 0.5, right, left, quad, n)
        + _corner(a, 0.5, left, right, quad, n)
    )


def _square_norm(a: float, g: TrialFunction, quad: QuadratureSpec, n: int) -> float:
    """int_0^1 (x(1-x))^(2a) g(x)^2 over both halves."""
    x, w = quadrature.rule(quad, n, 0.5, 2.0 * a)
    smooth = w * (1.0 - x) ** (2.0 * a)
    return float(smooth @ (g(x) ** 2 + g(1.0 - x) ** 2))


def _refine(label: str, compute: Callable[[int], float], quad: QuadratureSpec, tail: float = 0.0) -> float:
    """Run at quad.points and twice that; accept the finer value if they agree."""
    coarse = compute(quad.points)
    fine = compute(quad.refined().points)
    err = abs(fine - coarse) + tail
    if not (math.isfinite(fine) and err <= quad.target_abs_err):
        raise QuadratureNotConverged(
            f"{label}: levels {quad.points}/{2 * quad.points} differ by {err:.3e} "
            f"(target {quad.target_abs_err:.1e}, scheme {quad.scheme.value})",
            estimate=fine,
            error_estimate=err,
        )
    logger.debug("%s = %.15f (err %.2e, %s, n=%d)", label, fine, err, quad.scheme.value, quad.points)
    return fine


def _tail(quad: QuadratureSpec, a: float, length: float, scale: float) -> float:
    # four quadrants, each with at most two singular directions
    return 8.0 * scale * quadrature.truncation_bound(quad, length, 2.0 * a)


# ---------- functionals ----------
def normalization(ansatz: ContinuumAnsatz, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """int_0^1 f_delta(x)^2 dx, analytically 1."""
    a = ansatz.exponent
    c2 = ansatz.normalization ** 2
    return _refine(
        f"norm(delta={ansatz.delta})",
        lambda n: c2 * _square_norm(a, _ones, quad, n),
        quad,
        tail=_tail(quad, a, 0.5, c2),
    )


def m_functional(ansatz: ContinuumAnsatz, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """M(f_delta); never exceeds 2 for a normalized f."""
    a = ansatz.exponent
    c2 = ansatz.normalization ** 2
    return _refine(
        f"M(delta={ansatz.delta})",
        lambda n: c2 * _unit_square(a, _ones, quad, n),
        quad,
        tail=_tail(quad, a, 0.5, c2),
    )


def m_functional_trial(g: TrialFunction, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """M(g) for a bounded, vectorized trial function g on [0, 1].

    g is taken as given; normalize it first if M is to be compared with 2.
    """
    return _refine("M(trial)", lambda n: _unit_square(0.0, g, quad, n), quad)


def i_delta(delta: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """delta * int int (xy(1-x)(1-y))^(delta-1/2) sec(pi (x - y) / 2) over the unit square."""
    _check_positive_delta(delta, 0.5)
    a = delta - 0.5
    return _refine(
        f"I(delta={delta})",
        lambda n: delta * _unit_square(a, _ones, quad, n),
        quad,
        tail=_tail(quad, a, 0.5, delta),
    )


# ---------- lower-bound chain ----------
def _check_chain_params(delta: float, epsilon: float) -> None:
    if not 0.0 <= delta < 0.5:
        raise ParameterOutOfRange(f"delta={delta!r} must lie in [0, 1/2)")
    if not 0.0 < epsilon <= 0.5:
        raise ParameterOutOfRange(f"epsilon={epsilon!r} must lie in (0, 1/2]")


def _check_positive_delta(delta: float, epsilon: float) -> None:
    _check_chain_params(delta, epsilon)
    if delta == 0.0:
        raise ParameterOutOfRange("delta must be positive for the integral forms")


def corner_integral(delta: float, epsilon: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """2 delta * int_0^eps int_{1-eps}^1 (xy(1-x)(1-y))^(delta-1/2) sec(pi (x - y) / 2) dy dx."""
    _check_positive_delta(delta, epsilon)
    a = delta - 0.5
    return _refine(
        f"corner(delta={delta}, eps={epsilon})",
        lambda n: 2.0 * delta * _corner(a, epsilon, _ones, _ones, quad, n),
        quad,
        tail=_tail(quad, a, epsilon, delta),
    )


def corner_bound(delta: float, epsilon: float, quad: QuadratureSpec = DEFAULT_QUAD) -> float:
    """(4 delta / pi) int_0^eps int_0^eps (xy)^(delta-1/2) / (x + y) dx dy, by quadrature."""
    _check_positive_delta(delta, epsilon)
    a = delta - 0.5

    def compute(n: int) -> float:
        _, ws = quadrature.rule(quad, n, epsilon, 2.0 * a)
        eta, we = quadrature.rule(quad, n, 1.0, a)
        # Duffy: both triangles give the same product
        return (8.0 * delta / math.pi) * float(ws.sum()) * float(we @ (1.0 / (1.0 + eta)))

    return _refine(f"corner_bound(delta={delta}, eps={epsilon})", compute, quad, tail=_tail(quad, a, epsilon, delta))


def corner_bound_exact(delta: float, epsilon: float) -> float:
    """(2/pi) eps^(2 delta) [Psi(3/4 + delta/2) - Psi(1/4 + delta/2)]."""
    _check_chain_params(delta, epsilon)
    return (2.0 / math.pi) * epsilon ** (2.0 * delta) * (digamma(0.75 + 0.5 * delta) - digamma(0.25 + 0.5 * delta))


def i_delta_closed_form(delta: float, epsilon: float) -> float:
    """(eps^(2 delta) / pi) [Psi(1/4 - delta/2) - Psi(1/4 + delta/2) + Psi(3/4 - delta/2) - Psi(3/4 + delta/2) + 2 pi sec(pi delta)].

    delta = 0 is accepted as the limit and returns 2.
    """
    _check_chain_params(delta, epsilon)
    h = 0.5 * delta
    bracket = (
        (digamma(0.25 - h) - digamma(0.25 + h))
        + (digamma(0.75 - h) - digamma(0.75 + h))
        + 2.0 * math.pi / math.cos(math.pi * delta)
    )
    return epsilon ** (2.0 * delta) / math.pi * bracket


def i_delta_chain_check(delta: float, epsilon: float, quad: QuadratureSpec = DEFAULT_QUAD) -> ChainCheck:
    """Evaluate every link of I_delta >= corner >= corner bound >= closed form >= 0.

    The record is returned even when a link fails (a warning is logged);
    callers that need the chain to hold check `ChainCheck.holds()`.
    """
    _check_positive_delta(delta, epsilon)
    check = ChainCheck(
        delta=delta,
        epsilon=epsilon,
        i_delta=i_delta(delta, quad),
        corner_integral=corner_integral(delta, epsilon, quad),
        corner_bound=corner_bound(delta, epsilon, quad),
        corner_bound_exact=corner_bound_exact(delta, epsilon),
        closed_form=i_delta_closed_form(delta, epsilon),
    )
    if not check.holds(quad.target_abs_err):
        logger.warning("lower-bound chain broken at delta=%s eps=%s: %s", delta, epsilon, check)
    return check
