"""Real-axis checks of inverse Laplace transforms of ``s^-gamma log(sqrt(s) + x)``.

The inverse transform evaluated at 1 is

    f_gamma(x) = psi(gamma)/(2 Gamma(gamma))
                 + x/Gamma(gamma+1/2) 2F2(1, 1/2; 3/2, 1/2+gamma; x^2)
                 - x^2/(2 Gamma(gamma+1)) 2F2(1, 1; 2, 1+gamma; x^2)

and its derivative in ``x`` reduces to two Kummer functions.  Everything
here is verified through quadrature and series, never by contour
integration.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .closedform import IdentityPair
from .errors import ContinuationWarning, DomainError
from .specfun import check_pole, digamma, gamma, hyp, integrate


@dataclass(frozen=True)
class LaplacePair:
    gamma: float
    x: float
    f_value: float
    derivative_value: float


def _rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    if x <= 0.0 and x == math.floor(x):
        return 0.0
    return 1.0 / gamma(x)


def f_gamma(g: float, x: float) -> float:
    """Closed form of the inverse transform at unit time, for ``x >= 0``.

    Proved for ``gamma > 1/2``; values down to ``gamma > -1`` are returned
    with a :class:`ContinuationWarning`.
    """
    if not x >= 0.0:
        raise DomainError("f_gamma needs x >= 0")
    if not g > -1.0:
        raise DomainError("f_gamma needs gamma > -1")
    if not g > 0.5:
        warnings.warn("f_gamma with gamma <= 1/2 is outside the proved range", ContinuationWarning, stacklevel=2)
    check_pole(g, "gamma")
    x2 = x * x
    head = 0.5 * digamma(g) / gamma(g)
    if x == 0.0:
        return head
    odd = x * _rgamma(g + 0.5) * hyp((1.0, 0.5), (1.5, 0.5 + g), x2)
    even = 0.5 * x2 * _rgamma(g + 1.0) * hyp((1.0, 1.0), (2.0, 1.0 + g), x2)
    return math.fsum((head, odd, -even))


def f_gamma_derivative(g: float, x: float) -> float:
    """``d f_gamma / dx`` for ``gamma > -1`` and ``x >= 0``."""
    if not x >= 0.0:
        raise DomainError("f_gamma_derivative needs x >= 0")
    if not g > -1.0:
        raise DomainError("f_gamma_derivative needs gamma > -1")
    x2 = x * x
    first = _rgamma(g + 0.5) * hyp((1.0,), (0.5 + g,), x2) if g + 0.5 > 0.0 else _kummer_limit(g, x2)
    second = x * _rgamma(g + 1.0) * hyp((1.0,), (1.0 + g,), x2)
    return first - second


def _kummer_limit(g: float, x2: float) -> float:
    # 1F1(1; b; x2)/Gamma(b) = sum x2^k/Gamma(b + k), for b = g + 1/2 <= 0
    b = g + 0.5
    total = 0.0
    power = 1.0
    for k in range(400):
        total += power * _rgamma(b + k)
        power *= x2
        if k > 10 and abs(power * _rgamma(b + k + 1)) < 1e-17 * abs(total):
            break
    return total


def laplace_pair(g: float, x: float) -> LaplacePair:
    return LaplacePair(g, x, f_gamma(g, x), f_gamma_derivative(g, x))


def inverse_log_formula(g: float, x2: float) -> float:
    """Inverse transform of ``s^-gamma (log s - log x2)`` at unit time: ``(psi(gamma) - log x2)/Gamma(gamma)``."""
    if not g > 0.0:
        raise DomainError("inverse_log_formula needs gamma > 0")
    if not x2 > 0.0:
        raise DomainError("x2 must be positive")
    return (digamma(g) - math.log(x2)) / gamma(g)


def antiderivative_identities_check(g: float, x: float, tolerance: float = 1e-13) -> tuple[IdentityPair, IdentityPair]:
    """Quadrature against series for the two antiderivatives behind ``f_gamma``.

    Returns pairs for ``int_0^x 1F1(1; 1/2+gamma; t^2) dt = x 2F2(1, 1/2; 3/2, 1/2+gamma; x^2)``
    and ``int_0^x t 1F1(1; 1+gamma; t^2) dt = x^2/2 2F2(1, 1; 2, 1+gamma; x^2)``.
    """
    if not g > -0.5:
        raise DomainError("antiderivative identities need gamma > -1/2")
    if not x >= 0.0:
        raise DomainError("x must be nonnegative")
    x2 = x * x
    q1 = integrate(lambda t: hyp((1.0,), (0.5 + g,), t * t), 0.0, x, tolerance=1e-300, rel_tolerance=tolerance)
    q2 = integrate(lambda t: t * hyp((1.0,), (1.0 + g,), t * t), 0.0, x, tolerance=1e-300, rel_tolerance=tolerance)
    r1 = x * hyp((1.0, 0.5), (1.5, 0.5 + g), x2)
    r2 = 0.5 * x2 * hyp((1.0, 1.0), (2.0, 1.0 + g), x2)
    return (
        IdentityPair(q1.value, r1, q1.abs_error_estimate, 4e-16 * abs(r1)),
        IdentityPair(q2.value, r2, q2.abs_error_estimate, 4e-16 * abs(r2)),
    )


__all__ = [
    "LaplacePair",
    "antiderivative_identities_check",
    "f_gamma",
    "f_gamma_derivative",
    "inverse_log_formula",
    "laplace_pair",
]
