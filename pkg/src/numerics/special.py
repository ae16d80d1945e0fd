# src/numerics/special.py
"""Digamma and gamma for positive real arguments.

digamma: upward recurrence psi(z+1) = psi(z) + 1/z until z passes the threshold,
then the asymptotic series in 1/z^2 with Bernoulli coefficients.
gamma_fn: Lanczos approximation (g = 7, nine coefficients).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List

from src.contracts.errors import NonPositiveArgument
from src.contracts.types import SpecialFunctionConfig

DEFAULT_CONFIG = SpecialFunctionConfig()

# B_2, B_4, ..., B_20
_BERNOULLI_EVEN = (
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
)

# B_2n / (2n), the coefficients of 1/z^(2n) in the digamma series
_DIGAMMA_SERIES = tuple(float(b / (2 * (n + 1))) for n, b in enumerate(_BERNOULLI_EVEN))

_LANCZOS_G = 7
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _check_positive(z: float) -> float:
    z = float(z)
    if not z > 0.0 or math.isinf(z):
        raise NonPositiveArgument(f"argument must be positive and finite, got {z!r}")
    return z


def digamma(z: float, config: SpecialFunctionConfig = DEFAULT_CONFIG) -> float:
    z = _check_positive(z)

    # 1) recurrence up to the threshold
    shifts: List[float] = []
    while z < config.recurrence_threshold:
        shifts.append(1.0 / z)
        z += 1.0

    # 2) asymptotic series, Horner in r = 1/z^2
    r = 1.0 / (z * z)
    tail = 0.0
    for c in reversed(_DIGAMMA_SERIES[: config.series_terms]):
        tail = (tail + c) * r
    value = math.log(z) - 0.5 / z - tail

    if shifts:
        shifts.append(-value)
        return -math.fsum(shifts)
    return value


def gamma_fn(z: float) -> float:
    z = _check_positive(z)
    if z < 0.5:
        # Gamma(z) = Gamma(z + 1) / z keeps the Lanczos sum away from its pole
        return _lanczos(z + 1.0) / z
    return _lanczos(z)


def _lanczos(z: float) -> float:
    x = z - 1.0
    acc = _LANCZOS_P[0]
    for i in range(1, _LANCZOS_G + 2):
        acc += _LANCZOS_P[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _SQRT_2PI * t ** (x + 0.5) * math.exp(-t) * acc
