# src/contracts/errors.py
from __future__ import annotations

from typing import Any, Optional


class BellToolkitError(Exception):
    """Base class for every error raised by this package."""


# ---------- argument errors (CLI exit 2) ----------
class InvalidArgument(BellToolkitError, ValueError):
    pass


class InvalidDimension(InvalidArgument):
    pass


class DimensionMismatch(InvalidArgument):
    pass


class EmptyVector(InvalidArgument):
    pass


class NegativeCoefficient(InvalidArgument):
    pass


class ZeroVector(InvalidArgument):
    pass


class InvalidDistribution(InvalidArgument):
    pass


class InvalidOutcomes(InvalidArgument):
    pass


class DeltaOutOfRange(InvalidArgument):
    pass


class XOutOfRange(InvalidArgument):
    pass


class ParameterOutOfRange(InvalidArgument):
    pass


class NonPositiveArgument(InvalidArgument):
    pass


# ---------- run-time failures ----------
class BudgetExceeded(BellToolkitError, RuntimeError):
    """Requested size is beyond the enumeration / memory / time budget (CLI exit 3)."""


class MaxIterationsExceeded(BellToolkitError, RuntimeError):
    """Power iteration hit max_iter; `result` holds the best iterate."""

    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result


class QuadratureNotConverged(BellToolkitError, RuntimeError):
    def __init__(self, message: str, estimate: Optional[float] = None, error_estimate: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate
