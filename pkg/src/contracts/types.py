# src/contracts/types.py
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from src.contracts.errors import (
    DeltaOutOfRange,
    DimensionMismatch,
    EmptyVector,
    InvalidArgument,
    InvalidDimension,
    InvalidDistribution,
    InvalidOutcomes,
    NegativeCoefficient,
)

NORM_TOL = 1e-12
PROB_TOL = 1e-12


def _frozen_array(values: Any, dtype: Any = float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


# ---------- states ----------
@dataclass(frozen=True, eq=False)
class SchmidtState:
    """Pure bipartite state sum_k lambda_k |kk> in its Schmidt form."""

    coefficients: np.ndarray

    def __post_init__(self) -> None:
        lam = _frozen_array(self.coefficients)
        if lam.ndim != 1 or lam.size == 0:
            raise EmptyVector("Schmidt coefficients must be a non-empty vector.")
        if not np.all(np.isfinite(lam)):
            raise InvalidArgument("Schmidt coefficients must be finite.")
        if np.any(lam < 0):
            raise NegativeCoefficient("Schmidt coefficients must be non-negative.")
        # np.sum is pairwise, stays within NORM_TOL up to d ~ 1e7
        norm_err = abs(float(np.sum(lam * lam)) - 1.0)
        if norm_err > NORM_TOL:
            raise InvalidArgument(f"Schmidt coefficients are not normalized (|sum - 1| = {norm_err:.3e}).")
        object.__setattr__(self, "coefficients", lam)

    @property
    def d(self) -> int:
        return int(self.coefficients.size)


# ---------- measurements ----------
class Party(str, Enum):
    ALICE = "alice"
    BOB = "bob"


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    d: int
    party: Party
    setting: int
    phase: float
    vectors: np.ndarray  # row k = basis vector k, components over m = 0..d-1

    def __post_init__(self) -> None:
        vecs = _frozen_array(self.vectors, dtype=complex)
        if vecs.shape != (self.d, self.d):
            raise DimensionMismatch(f"basis vectors must have shape ({self.d}, {self.d}), got {vecs.shape}")
        object.__setattr__(self, "vectors", vecs)

    def gram(self) -> np.ndarray:
        return self.vectors.conj() @ self.vectors.T


# ---------- bell ----------
SettingPair = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class JointDistribution:
    d: int
    setting_pair: SettingPair
    probs: np.ndarray  # probs[k, l] = P(k, l | a, b)

    def __post_init__(self) -> None:
        p = _frozen_array(self.probs)
        if p.shape != (self.d, self.d):
            raise DimensionMismatch(f"probs must have shape ({self.d}, {self.d}), got {p.shape}")
        if p.min() < -PROB_TOL:
            raise InvalidDistribution(f"negative probability {p.min():.3e} for setting {self.setting_pair}")
        total = float(p.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", p)

    def clamped(self) -> np.ndarray:
        """Reporting view with rounding negatives set to zero."""
        return np.maximum(self.probs, 0.0)

    def alice_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def bob_marginal(self) -> np.ndarray:
        return self.probs.sum(axis=0)


@dataclass(frozen=True, eq=False)
class OutcomeValues:
    values: np.ndarray

    def __post_init__(self) -> None:
        x = _frozen_array(self.values)
        if x.ndim != 1 or x.size == 0:
            raise InvalidOutcomes("outcome values must be a non-empty vector")
        if np.unique(x).size != x.size:
            raise InvalidOutcomes("outcome values must be pairwise distinct")
        object.__setattr__(self, "values", x)


@dataclass(frozen=True)
class BellValue:
    value: float

    def __post_init__(self) -> None:
        if not (-PROB_TOL <= self.value <= 4.0 + PROB_TOL):
            raise InvalidArgument(f"Bell value {self.value!r} outside [0, 4]")


# ---------- classical ----------
@dataclass(frozen=True)
class DeterministicStrategy:
    a1: int
    a2: int
    b1: int
    b2: int

    def validate(self, d: int) -> None:
        for name in ("a1", "a2", "b1", "b2"):
            v = getattr(self, name)
            if not 0 <= v < d:
                raise InvalidDimension(f"{name}={v} outside [0, {d})")

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a1, self.a2, self.b1, self.b2)


# ---------- optimize ----------
@dataclass(frozen=True, eq=False)
class ToeplitzKernel:
    d: int
    first_row: np.ndarray

    def __post_init__(self) -> None:
        if self.d < 1:
            raise InvalidDimension("kernel dimension must be >= 1")
        row = _frozen_array(self.first_row)
        if row.shape != (self.d,):
            raise DimensionMismatch(f"first_row must have length {self.d}")
        object.__setattr__(self, "first_row", row)


@dataclass(frozen=True, eq=False)
class EigenResult:
    eigenvalue: float
    eigenvector: SchmidtState
    iterations: int
    residual: float
    converged: bool = True
    method: str = "power"

    @property
    def bell_value(self) -> float:
        """A_d at the optimum, 2 - mu."""
        return 2.0 - self.eigenvalue


@dataclass(frozen=True)
class ViolationPoint:
    d: int
    a_optimal: float
    a_approximate: float
    eigenvalue: float
    iterations: int
    residual: float


# ---------- continuum ----------
@dataclass(frozen=True)
class ContinuumAnsatz:
    delta: float
    normalization: float  # prefactor of (x(1-x))^(delta-1/2)

    def __post_init__(self) -> None:
        if not 0.0 < self.delta < 0.25:
            raise DeltaOutOfRange(f"delta={self.delta!r} must lie in (0, 1/4)")

    @property
    def exponent(self) -> float:
        return self.delta - 0.5


class QuadratureScheme(str, Enum):
    GAUSS = "gauss"
    TANH_SINH = "tanh-sinh"


@dataclass(frozen=True)
class QuadratureSpec:
    scheme: QuadratureScheme = QuadratureScheme.GAUSS
    points: int = 48
    target_abs_err: float = 1e-10

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", QuadratureScheme(self.scheme))
        if self.points < 8:
            raise InvalidArgument("quadrature needs at least 8 points per dimension")
        if not self.target_abs_err > 0:
            raise InvalidArgument("target_abs_err must be positive")

    def refined(self) -> "QuadratureSpec":
        return QuadratureSpec(scheme=self.scheme, points=2 * self.points, target_abs_err=self.target_abs_err)


@dataclass(frozen=True)
class ChainCheck:
    delta: float
    epsilon: float
    i_delta: float
    corner_integral: float
    corner_bound: float
    corner_bound_exact: float
    closed_form: float

    def as_tuple(self) -> Tuple[float, float, float]:
        """(I_delta, corner bound, closed form)."""
        return (self.i_delta, self.corner_bound, self.closed_form)

    def holds(self, tol: float) -> bool:
        """I_delta >= corner >= corner bound >= closed form >= 0, each up to tol."""
        chain = (self.i_delta, self.corner_integral, self.corner_bound, self.closed_form, 0.0)
        return all(hi >= lo - tol for hi, lo in zip(chain, chain[1:]))


# ---------- special ----------
@dataclass(frozen=True)
class SpecialFunctionConfig:
    recurrence_threshold: float = 6.0
    series_terms: int = 7

    def __post_init__(self) -> None:
        if self.recurrence_threshold < 2:
            raise InvalidArgument("recurrence_threshold must be >= 2")
        if not 4 <= self.series_terms <= 10:
            raise InvalidArgument("series_terms must be in [4, 10]")


# ---------- verify suite ----------
@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    value: Optional[float] = None
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    passed: bool
    issues: List[str]
    check_count: int
    checks: List[CheckResult] = field(default_factory=list)
    tables: Dict[str, Any] = field(default_factory=dict)
