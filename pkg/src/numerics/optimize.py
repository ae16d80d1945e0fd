# src/numerics/optimize.py
"""Principal eigenvector of the symmetric Toeplitz kernel K_kl = 1/(d cos(pi (k-l) / (2d))).

Maximizing sum_{k,l} lambda_k lambda_l K_kl over unit lambda >= 0 gives the
optimal Schmidt state; the Bell value at the optimum is 2 - mu.
"""
from __future__ import annotations

import logging
import os
from functools import lru_cache
from typing import Iterable, List, Optional

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from src.contracts.errors import BudgetExceeded, DimensionMismatch, InvalidArgument, InvalidDimension, MaxIterationsExceeded
from src.contracts.types import EigenResult, SchmidtState, ToeplitzKernel, ViolationPoint
from src.quantum.states import approximate_state

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000
METHODS = ("power", "lanczos", "dense")

# matvec_naive below this size, FFT above
FFT_MIN_D = 64
DENSE_MAX_D = 4096
MAX_SWEEP_D = int(os.getenv("CGLMP_MAX_SWEEP_D", "131072"))


# ---------- kernel + products ----------
def kernel(d: int) -> ToeplitzKernel:
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    j = np.arange(d, dtype=float)
    return ToeplitzKernel(d=d, first_row=1.0 / (d * np.cos(np.pi * j / (2.0 * d))))


def _check_vector(k: ToeplitzKernel, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (k.d,):
        raise DimensionMismatch(f"vector of shape {v.shape} for kernel of size {k.d}")
    return v


def dense_matrix(k: ToeplitzKernel) -> np.ndarray:
    return scipy.linalg.toeplitz(k.first_row)


def matvec_naive(k: ToeplitzKernel, v: np.ndarray) -> np.ndarray:
    """(Kv)_i = sum_j first_row[|i-j|] v_j, O(d^2)."""
    v = _check_vector(k, v)
    return dense_matrix(k) @ v


def embedding_size(d: int) -> int:
    """Smallest power of two >= 2d - 1."""
    n = 1
    while n < 2 * d - 1:
        n *= 2
    return n


@lru_cache(maxsize=32)
def _circulant_spectrum(d: int) -> np.ndarray:
    row = kernel(d).first_row
    n = embedding_size(d)
    col = np.zeros(n)
    col[:d] = row
    if d > 1:
        col[n - d + 1 :] = row[1:][::-1]
    spec = np.fft.rfft(col)
    spec.setflags(write=False)
    return spec


def matvec_fft(k: ToeplitzKernel, v: np.ndarray) -> np.ndarray:
    """Same product as matvec_naive through a circulant embedding, O(d log d)."""
    v = _check_vector(k, v)
    n = embedding_size(k.d)
    spec = _circulant_spectrum(k.d)
    return np.fft.irfft(spec * np.fft.rfft(v, n), n)[: k.d]


def matvec(k: ToeplitzKernel, v: np.ndarray) -> np.ndarray:
    return matvec_fft(k, v) if k.d >= FFT_MIN_D else matvec_naive(k, v)


def quadratic_form(k: ToeplitzKernel, v: np.ndarray) -> float:
    v = _check_vector(k, v)
    return float(v @ matvec(k, v))


# ---------- eigen solvers ----------
def optimal_state(
    d: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: str = "power",
) -> EigenResult:
    if d < 1:
        raise InvalidDimension(f"d must be >= 1, got {d}")
    if not tol > 0:
        raise InvalidArgument("tol must be positive")
    if method not in METHODS:
        raise InvalidArgument(f"method must be one of {METHODS}, got {method!r}")

    k = kernel(d)
    if method == "dense" or d == 1:
        return _dense(k, method=method)
    if method == "lanczos":
        return _lanczos(k, tol, max_iter)
    return _power_iteration(k, tol, max_iter)


def _residual(k: ToeplitzKernel, v: np.ndarray, mu: float) -> float:
    return float(np.linalg.norm(matvec(k, v) - mu * v))


def _to_state(v: np.ndarray) -> SchmidtState:
    v = np.abs(v)
    v = 0.5 * (v + v[::-1])
    return SchmidtState(v / np.linalg.norm(v))


def _dense(k: ToeplitzKernel, method: str) -> EigenResult:
    if k.d > DENSE_MAX_D:
        raise BudgetExceeded(f"dense eigensolve limited to d <= {DENSE_MAX_D}")
    w, vecs = scipy.linalg.eigh(dense_matrix(k), subset_by_index=[k.d - 1, k.d - 1])
    state = _to_state(vecs[:, 0])
    mu = float(w[0])
    return EigenResult(
        eigenvalue=mu,
        eigenvector=state,
        iterations=0,
        residual=_residual(k, state.coefficients, mu),
        method=method,
    )


def _lanczos(k: ToeplitzKernel, tol: float, max_iter: int) -> EigenResult:
    if k.d <= 2:
        return _dense(k, method="lanczos")
    op = scipy.sparse.linalg.LinearOperator((k.d, k.d), matvec=lambda x: matvec(k, np.ravel(x)), dtype=float)
    v0 = np.full(k.d, 1.0 / np.sqrt(k.d))
    w, vecs = scipy.sparse.linalg.eigsh(op, k=1, which="LA", v0=v0, tol=tol, maxiter=max_iter)
    state = _to_state(vecs[:, 0])
    mu = float(state.coefficients @ matvec(k, state.coefficients))
    return EigenResult(
        eigenvalue=mu,
        eigenvector=state,
        iterations=0,
        residual=_residual(k, state.coefficients, mu),
        method="lanczos",
    )


def _power_iteration(k: ToeplitzKernel, tol: float, max_iter: int) -> EigenResult:
    """Power iteration from the uniform vector.

    Stops when ||Kv - mu v|| <= tol * mu, or when the relative eigenvalue change
    drops below tol with the residual already inside 10 * tol * mu.
    """
    v = np.full(k.d, 1.0 / np.sqrt(k.d))
    y = matvec(k, v)
    mu = float(v @ y)
    best_v, best_mu, best_res = v, mu, float("inf")

    for it in range(1, max_iter + 1):
        res = float(np.linalg.norm(y - mu * v))
        if res < best_res:
            best_v, best_mu, best_res = v, mu, res
        if res <= tol * mu:
            return _finish(k, v, mu, res, it, converged=True)

        v_new = y / np.linalg.norm(y)
        # the kernel commutes with index reversal; keep rounding from breaking that
        v_new = 0.5 * (v_new + v_new[::-1])
        y = matvec(k, v_new)
        mu_new = float(v_new @ y)
        rel_change = abs(mu_new - mu) / mu_new
        v, mu = v_new, mu_new

        if rel_change < tol:
            res = float(np.linalg.norm(y - mu * v))
            if res <= 10.0 * tol * mu:
                return _finish(k, v, mu, res, it, converged=True)

    result = _finish(k, best_v, best_mu, best_res, max_iter, converged=False)
    raise MaxIterationsExceeded(
        f"power iteration for d={k.d} did not converge in {max_iter} iterations (residual {best_res:.3e})",
        result=result,
    )


def _finish(k: ToeplitzKernel, v: np.ndarray, mu: float, res: float, iterations: int, converged: bool) -> EigenResult:
    logger.debug("power iteration d=%d iterations=%d mu=%.15f residual=%.3e", k.d, iterations, mu, res)
    return EigenResult(
        eigenvalue=mu,
        eigenvector=SchmidtState(v / np.linalg.norm(v)),
        iterations=iterations,
        residual=res,
        converged=converged,
        method="power",
    )


# ---------- sweep ----------
def violation_point(d: int, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER, method: str = "power") -> ViolationPoint:
    if d > MAX_SWEEP_D:
        raise BudgetExceeded(f"violation sweep limited to d <= {MAX_SWEEP_D}, got {d}")
    res = optimal_state(d, tol=tol, max_iter=max_iter, method=method)
    lam = approximate_state(d).coefficients
    a_approx = 2.0 - quadratic_form(kernel(d), lam)
    return ViolationPoint(
        d=d,
        a_optimal=res.bell_value,
        a_approximate=a_approx,
        eigenvalue=res.eigenvalue,
        iterations=res.iterations,
        residual=res.residual,
    )


def violation_sweep(
    d_values: Iterable[int],
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    method: str = "power",
) -> List[ViolationPoint]:
    d_values = [int(d) for d in d_values]
    too_big = [d for d in d_values if d > MAX_SWEEP_D]
    if too_big:
        raise BudgetExceeded(f"violation sweep limited to d <= {MAX_SWEEP_D}, got {too_big}")
    return [violation_point(d, tol=tol, max_iter=max_iter, method=method) for d in d_values]
