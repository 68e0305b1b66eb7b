"""Gamma-family kernels: log-gamma, gamma ratios, digamma, Pochhammer."""

from __future__ import annotations

import math

from ..errors import DomainError, PoleError
from .summation import Neumaier

POLE_GUARD = 1e-8

# B_{2k} / (2k) for the digamma asymptotic series, k = 1..8
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)


def is_nonpositive_integer(x: float, guard: float = 0.0) -> bool:
    if x > guard:
        return False
    return abs(x - round(x)) <= guard


def check_pole(x: float, what: str = "argument") -> None:
    """Raise :class:`PoleError` if ``x`` lies within the guard of 0, -1, -2, ..."""
    if not math.isfinite(x):
        raise DomainError(f"{what} must be finite, got {x!r}")
    if is_nonpositive_integer(x, POLE_GUARD):
        raise PoleError(f"{what} {x!r} is within {POLE_GUARD:g} of a pole at {round(x)}")


def ln_gamma(x: float) -> float:
    """log Γ(x) for x > 0."""
    if not x > 0.0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def gamma_sign(x: float) -> float:
    """Sign of Γ(x) for non-pole x (negative on (-1, 0), (-3, -2), ...)."""
    if x > 0.0:
        return 1.0
    return -1.0 if math.floor(-x) % 2 == 0 else 1.0


def gamma(x: float) -> float:
    check_pole(x)
    return math.gamma(x)


def gamma_ratio(a: float, b: float) -> float:
    """Γ(a)/Γ(b).

    Integer differences up to 64 are done as a finite Pochhammer product;
    everything else goes through log|Γ| with the sign taken from the
    reflection pattern, so large arguments do not overflow.
    """
    check_pole(a, "numerator argument")
    check_pole(b, "denominator argument")
    diff = a - b
    k = round(diff)
    if diff == k and abs(k) <= 64:
        if k >= 0:
            return pochhammer(b, int(k))
        return 1.0 / pochhammer(a, int(-k))
    sign = gamma_sign(a) * gamma_sign(b)
    return sign * math.exp(math.lgamma(a) - math.lgamma(b))


def digamma(x: float) -> float:
    """ψ(x) = d/dx log Γ(x).

    Reflection for x < 0, upward recurrence to x >= 10, then the asymptotic
    Bernoulli series.
    """
    check_pole(x)
    if x < 0.0:
        # ψ(x) = ψ(1 - x) - π / tan(πx)
        return digamma(1.0 - x) - math.pi / math.tan(math.pi * x)
    shift = Neumaier()
    while x < 10.0:
        shift.add(-1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    poly = 0.0
    for c in reversed(_DIGAMMA_ASYMPTOTIC):
        poly = poly * inv2 + c
    shift.add(math.log(x))
    shift.add(-0.5 / x)
    shift.add(-poly * inv2)
    return shift.value


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n; exact zero when a is a nonpositive integer and n > -a."""
    if n < 0:
        raise DomainError(f"pochhammer needs n >= 0, got {n}")
    if a <= 0.0 and a == math.floor(a) and -a < n:
        return 0.0
    out = 1.0
    for k in range(n):
        out *= a + k
    return out
