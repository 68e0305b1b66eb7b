"""Closed-form sums of Laguerre/Jacobi-type perturbation series.

Kernels
    :func:`gauss_kernel` and :func:`f3_kernel` evaluate ``z 2F1(a+1,1;2;z)``
    and ``z 3F2(a+1,1,1;2,2;z)`` analytically.
Series families
    ``S(alpha) = sum_{n>=1} (alpha/2)_n / (n n!) F_n`` with
    ``F_n = 2F1(-n, b; gamma; y)`` (Gauss variant) or
    ``F_n = 1F1(-n; gamma; x2)`` (confluent variant).  Even ``alpha`` is
    handled by :func:`sum_even`, odd ``alpha`` by :func:`sum_odd` through a
    recursion in ``alpha``.

Functions whose closed form was only established for ``gamma > b`` still
evaluate outside that region but emit :class:`ContinuationWarning`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ContinuationWarning, DomainError
from .specfun import (
    check_pole,
    digamma,
    dilog,
    gamma_ratio,
    hyp,
    integrate,
    laguerre,
    pochhammer,
)

LOG2 = math.log(2.0)
_SMALL_A = 1e-6
_QUAD_RTOL = 1e-14


class Branch(enum.Enum):
    LOG = "Log"
    POWER_LAW = "PowerLaw"
    DILOG = "Dilog"
    POLYNOMIAL = "Polynomial"


@dataclass(frozen=True)
class KernelValue:
    value: float
    branch_note: Branch

    def __float__(self) -> float:
        return self.value


class IdentityPair(NamedTuple):
    """Two evaluations of the same quantity, with their error estimates."""

    lhs: float
    rhs: float
    lhs_error: float = 0.0
    rhs_error: float = 0.0

    @property
    def difference(self) -> float:
        return abs(self.lhs - self.rhs)


def _check_unit_disk(z: float) -> None:
    if not (math.isfinite(z) and -1.0 < z < 1.0):
        raise DomainError(f"kernel argument must satisfy |z| < 1, got {z!r}")


def _flag_continuation(proved: bool, what: str) -> None:
    if not proved:
        warnings.warn(f"{what} evaluated by analytic continuation", ContinuationWarning, stacklevel=3)


# ---------------------------------------------------------------------------
# kernels


def gauss_kernel(a: float, z: float) -> KernelValue:
    """``z * 2F1(a+1, 1; 2; z)`` for ``|z| < 1``.

    Equals ``-log(1-z)`` at ``a = 0`` and ``((1-z)**-a - 1) / a`` otherwise.
    The power-law branch is written with ``expm1`` so it stays accurate as
    ``a -> 0``; for ``|a| < 1e-6`` the first-order expansion in ``a`` is used.
    """
    _check_unit_disk(z)
    big_l = -math.log1p(-z)
    if a == 0.0:
        return KernelValue(big_l, Branch.LOG)
    if abs(a) < _SMALL_A:
        return KernelValue(big_l + 0.5 * a * big_l * big_l, Branch.LOG)
    return KernelValue(math.expm1(a * big_l) / a, Branch.POWER_LAW)


def f3_kernel(a: float, z: float) -> KernelValue:
    """``z * 3F2(a+1, 1, 1; 2, 2; z)`` for ``|z| < 1``.

    Special values of ``a`` use closed forms: the dilogarithm at 0, a
    logarithm at 1, square roots at half-integers, and a polynomial plus
    logarithm at integers ``a >= 2``.  Any other ``a`` falls back to
    quadrature of ``(1/a) int_0^z ((1-s)**-a - 1) / s ds``.
    """
    _check_unit_disk(z)
    return _f3(a, z, 1.0 - z)


def f3_kernel_complement(a: float, w: float) -> KernelValue:
    """:func:`f3_kernel` at ``z = 1 - w`` for ``0 < w < 2``.

    Passing the complement keeps full relative accuracy of ``log(w)`` when
    ``z`` is close to 1.
    """
    if not (math.isfinite(w) and 0.0 < w < 2.0):
        raise DomainError(f"kernel complement must lie in (0, 2), got {w!r}")
    return _f3(a, 1.0 - w, w)


def _f3(a: float, z: float, w: float) -> KernelValue:
    # z and w = 1 - z are both given; whichever is small is exact
    log_w = math.log1p(-z) if abs(z) < 0.5 else math.log(w)
    if a == 0.0:
        return KernelValue(_dilog_zw(z, w, log_w), Branch.DILOG)
    if abs(a) < _SMALL_A:
        corr = _quad_log_square(z, w)
        return KernelValue(_dilog_zw(z, w, log_w) + a * corr, Branch.DILOG)
    if a == 1.0:
        return KernelValue(-log_w, Branch.LOG)
    if a >= 2.0 and a == math.floor(a):
        return KernelValue(_f3_polynomial(int(a) - 2, z, w, log_w), Branch.POLYNOMIAL)
    twice = 2.0 * a
    if a > 0.0 and twice == math.floor(twice):
        return KernelValue(_f3_half_integer(a, z, w, log_w), Branch.POWER_LAW)
    return KernelValue(_f3_quadrature(a, z, w), Branch.POWER_LAW)


def _dilog_zw(z: float, w: float, log_w: float) -> float:
    if z <= 0.5:
        return dilog(z)
    # reflection with the exact complement
    return math.pi**2 / 6.0 - math.log(z) * log_w - dilog(w)


def _quad_log_square(z: float, w: float) -> float:
    """d/da of the kernel at a = 0: int_0^z log(1-s)**2 / (2 s) ds."""
    if z <= 0.5:
        lo, hi, sign = (0.0, z, 1.0) if z > 0 else (z, 0.0, -1.0)
        f = lambda s: math.log1p(-s) ** 2 / (2.0 * s)
    else:
        # s = 1 - t moves the log singularity to the lower limit
        lo, hi, sign = w, 1.0, 1.0
        f = lambda t: math.log(t) ** 2 / (2.0 * (1.0 - t))
    return sign * integrate(f, lo, hi, tolerance=1e-300, rel_tolerance=_QUAD_RTOL).value


def _f3_polynomial(m: int, z: float, w: float, log_w: float) -> float:
    # z 3F2(m+3,1,1;2,2;z) = [-(m+1) v P_m(v) - log(1-z)] / (m+2), v = z/(z-1)
    v = -z / w
    coeff = 1.0
    poly = [1.0]
    for n in range(m):
        coeff *= (n - m) * v * (n + 1.0) / ((n + 2.0) ** 2)
        poly.append(coeff)
    return (-(m + 1) * v * math.fsum(poly) - log_w) / (m + 2)


def _f3_half_integer(a: float, z: float, w: float, log_w: float) -> float:
    # J(a) = a * kernel(a) obeys J(a+1) = J(a) + (w**-a - 1)/a
    sqrt_w = math.sqrt(w)
    d = z / (1.0 + sqrt_w)  # 1 - sqrt(w), without cancellation
    j = -2.0 * math.log1p(-0.5 * d)  # J(1/2) = 2 log 2 - 2 log(1 + sqrt w)
    k = 0.5
    while k < a:
        j += math.expm1(-k * log_w) / k
        k += 1.0
    return j / a


def _f3_quadrature(a: float, z: float, w: float) -> float:
    if z <= 0.5:
        lo, hi, sign = (0.0, z, 1.0) if z > 0 else (z, 0.0, -1.0)
        f = lambda s: math.expm1(-a * math.log1p(-s)) / s
    else:
        lo, hi, sign = w, 1.0, 1.0
        f = lambda t: math.expm1(-a * math.log(t)) / (1.0 - t)
    res = integrate(f, lo, hi, tolerance=1e-300, rel_tolerance=_QUAD_RTOL)
    return sign * res.value / a


def luke_reduction(a: float, c: float, z: float) -> float:
    """``z * 3F2(a+1, 1, 1; c, 2; z)`` through the argument ``z/(z-1)``.

    Needs ``a != 0``, ``c != 1`` and ``z < 1/2`` so that ``|z/(z-1)| < 1``.
    The inner series is a polynomial when ``c - a`` is a nonpositive integer.
    """
    if a == 0.0 or c == 1.0:
        raise DomainError("luke_reduction needs a != 0 and c != 1")
    if not (math.isfinite(z) and z < 0.5):
        raise DomainError(f"luke_reduction needs z < 1/2, got {z!r}")
    check_pole(c, "c")
    v = z / (z - 1.0)
    inner = hyp((c - a, 1.0, 1.0), (c, 2.0), v) if v != 0.0 else 1.0
    return (c - 1.0) / a * ((c - a - 1.0) / (c - 1.0) * v * inner - math.log1p(-z))


# ---------------------------------------------------------------------------
# even alpha


def sum_alpha2(b: float, gamma: float, y: float) -> float:
    """Sum of the Gauss series at ``alpha = 2``: ``psi(gamma) - psi(b) - log y``."""
    if not y > 0.0:
        raise DomainError("y must be positive")
    _flag_continuation(gamma > b > 0.0, "sum_alpha2 with gamma <= b")
    return digamma(gamma) - digamma(b) - math.log(y)


def buchholz_sum(nu: float, b: float, gamma: float, y: float) -> float:
    """``sum_{n>=0} (-nu)_n / n! * 2F1(-n, b; gamma; y)``.

    Equals ``Gamma(nu+b) Gamma(gamma) / (Gamma(b) Gamma(nu+gamma)) * y**nu``
    for ``gamma + nu > 0``, ``b + nu > 0`` and ``y > 0``.
    """
    if not y > 0.0:
        raise DomainError("y must be positive")
    if not (gamma + nu > 0.0 and b + nu > 0.0):
        raise DomainError("buchholz_sum needs gamma + nu > 0 and b + nu > 0")
    return gamma_ratio(nu + b, b) * gamma_ratio(gamma, nu + gamma) * y**nu


def _even_weights(m: int) -> list[float]:
    # (-m)_k (1)_k / ((2)_k (2)_k) = (-m)_k / ((k+1) (k+1)!)
    return [pochhammer(-m, k) / ((k + 1) * math.factorial(k + 1)) for k in range(m + 1)]


def _check_even(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")


def sum_even(m: int, b: float, gamma: float, y: float) -> float:
    """Gauss series for ``alpha = 2m + 4``.

    Parameters
    ----------
    m : int
        Nonnegative integer with ``alpha/2 = m + 2``.
    b, gamma : float
        Gauss parameters, both larger than ``m + 2``.
    y : float
        Positive argument.

    The correction terms involve terminating ``2F1(-k, .; .; 1/y)``.
    """
    _check_even(m)
    if not y > 0.0:
        raise DomainError("y must be positive")
    _flag_continuation(b > m + 2 and gamma > m + 2, "sum_even outside b, gamma > m+2")
    check_pole(b - 1.0, "b - 1")
    inv_y = 1.0 / y
    front = (gamma - 1.0) / ((b - 1.0) * y)
    corr = [
        wk * (front * hyp((-k, 2.0 - gamma), (2.0 - b,), inv_y) - hyp((-k, 1.0 - gamma), (1.0 - b,), inv_y))
        for k, wk in enumerate(_even_weights(m))
    ]
    return digamma(gamma) - digamma(b) - math.log(y) + (m + 1) * math.fsum(corr)


def sum_even_confluent(m: int, gamma: float, x2: float) -> float:
    """Confluent series for ``alpha = 2m + 4`` via terminating ``2F0`` factors."""
    _check_even(m)
    if not x2 > 0.0:
        raise DomainError("x2 must be positive")
    _flag_continuation(gamma > m + 2, "sum_even_confluent with gamma <= m+2")
    arg = -1.0 / x2
    front = (gamma - 1.0) / x2
    corr = [
        wk * (front * hyp((-k, 2.0 - gamma), (), arg) - hyp((-k, 1.0 - gamma), (), arg))
        for k, wk in enumerate(_even_weights(m))
    ]
    return digamma(gamma) - math.log(x2) + (m + 1) * math.fsum(corr)


def hall_even_laguerre(m: int, gamma: float, x2: float) -> float:
    """The same confluent sum written with Laguerre polynomials of shifted order."""
    _check_even(m)
    if not x2 > 0.0:
        raise DomainError("x2 must be positive")
    _flag_continuation(gamma > m + 2, "hall_even_laguerre with gamma <= m+2")
    terms = []
    for k in range(m + 1):
        lag = laguerre(k, gamma - 1.0 - k, x2) - (gamma - 1.0) / x2 * laguerre(k, gamma - 2.0 - k, x2)
        terms.append(pochhammer(-m, k) / (k + 1) ** 2 * (-1.0 / x2) ** k * lag)
    return digamma(gamma) - math.log(x2) - (m + 1) * math.fsum(terms)


def toscano(gamma: float, y: float) -> float:
    """``sum_{n>=1} (n-1)!/(gamma)_n L_n^(gamma-1)(y) = psi(gamma) - log y``."""
    if not gamma > 1.0:
        raise DomainError("toscano needs gamma > 1")
    if not y > 0.0:
        raise DomainError("y must be positive")
    return digamma(gamma) - math.log(y)


# ---------------------------------------------------------------------------
# odd alpha


def sum_half(b: float, gamma: float, y: float) -> float:
    """Gauss series for ``alpha = 1``, for ``0 < y <= 1``."""
    if not 0.0 < y <= 1.0:
        raise DomainError(f"sum_half needs 0 < y <= 1, got {y!r}")
    if not b > 0.0:
        raise DomainError("sum_half needs b > 0")
    _flag_continuation(gamma > b, "sum_half with gamma <= b")
    first = b / gamma * y * hyp((1.0, 1.0, 1.0 + b), (2.0, 1.0 + gamma), y)
    ratio = gamma_ratio(gamma, gamma + 0.5) * gamma_ratio(b + 0.5, b)
    second = 2.0 * ratio * math.sqrt(y) * hyp((1.0, 0.5, 0.5 + b), (1.5, 0.5 + gamma), y)
    return math.fsum((2.0 * LOG2, first, -second))


def _check_odd(j: int) -> None:
    if isinstance(j, bool) or not isinstance(j, int) or j < 0:
        raise DomainError(f"j must be a nonnegative integer, got {j!r}")


def sum_odd(j: int, b: float, gamma: float, y: float) -> float:
    """Gauss series for ``alpha = 2j + 1``.

    Uses ``(i + 3/2)_n = (1 + 2n/(2i+1)) (i + 1/2)_n`` to step from
    ``alpha = 2i+1`` to ``2i+3``; each step adds a series summed by
    :func:`buchholz_sum` with ``nu = -(i + 1/2)``.  ``j = 0`` is
    :func:`sum_half`.
    """
    _check_odd(j)
    if not gamma > j + 0.5:
        raise DomainError("sum_odd needs gamma > alpha/2")
    if not b > j - 0.5:
        raise DomainError("sum_odd needs b > j - 1/2")
    total = [sum_half(b, gamma, y)]
    for i in range(j):
        nu = -(i + 0.5)
        total.append(2.0 / (2 * i + 1) * (buchholz_sum(nu, b, gamma, y) - 1.0))
    return math.fsum(total)


def sum_half_confluent(gamma: float, x2: float) -> float:
    """Confluent series for ``alpha = 1`` (two entire ``2F2`` functions)."""
    if not gamma > 0.5:
        raise DomainError("sum_half_confluent needs gamma > 1/2")
    if not x2 > 0.0:
        raise DomainError("x2 must be positive")
    x = math.sqrt(x2)
    first = x2 / gamma * hyp((1.0, 1.0), (2.0, 1.0 + gamma), x2)
    second = 2.0 * x * gamma_ratio(gamma, gamma + 0.5) * hyp((1.0, 0.5), (1.5, 0.5 + gamma), x2)
    return math.fsum((2.0 * LOG2, first, -second))


def sum_odd_confluent(j: int, gamma: float, x2: float) -> float:
    """Confluent series for ``alpha = 2j + 1``, by the same recursion as :func:`sum_odd`."""
    _check_odd(j)
    if not gamma > j + 0.5:
        raise DomainError("sum_odd_confluent needs gamma > alpha/2")
    total = [sum_half_confluent(gamma, x2)]
    x = math.sqrt(x2)
    for i in range(j):
        check_pole(gamma - i - 0.5, "gamma - i - 1/2")
        limit = gamma_ratio(gamma, gamma - i - 0.5) * x ** (-(2 * i + 1))
        total.append(2.0 / (2 * i + 1) * (limit - 1.0))
    return math.fsum(total)


# ---------------------------------------------------------------------------
# standalone identities


def generating_identity_check(
    lam: float,
    alpha_p: float,
    beta_p: float,
    z: float,
    tolerance: float = 1e-10,
    max_terms: int = 200_000,
) -> IdentityPair:
    """Compare ``sum_n (-lam)_n/n! 2F1(-n, alpha_p; beta_p; z)`` with its closed form."""
    from .oracle import series_generating

    lhs = series_generating(lam, alpha_p, beta_p, z, tolerance=tolerance, max_terms=max_terms)
    rhs = buchholz_sum(lam, alpha_p, beta_p, z)
    return IdentityPair(lhs.value, rhs, lhs.abs_error_estimate, 4e-16 * abs(rhs))


def log_identity_2f1(y: float) -> IdentityPair:
    """``2F1(1/2, 1; 3/2; y)`` against ``log((1 + sqrt y)/sqrt(1 - y)) / sqrt y``."""
    if not 0.0 < y < 1.0:
        raise DomainError("log_identity_2f1 needs 0 < y < 1")
    lhs = hyp((0.5, 1.0), (1.5,), y)
    r = math.sqrt(y)
    # log((1+r)/sqrt(1-y)) = atanh(r)
    rhs = math.atanh(r) / r
    return IdentityPair(lhs, rhs, 1e-15 * abs(lhs), 1e-15 * abs(rhs))


__all__ = [
    "Branch",
    "IdentityPair",
    "KernelValue",
    "buchholz_sum",
    "f3_kernel",
    "f3_kernel_complement",
    "gauss_kernel",
    "generating_identity_check",
    "hall_even_laguerre",
    "log_identity_2f1",
    "luke_reduction",
    "sum_alpha2",
    "sum_even",
    "sum_even_confluent",
    "sum_half",
    "sum_half_confluent",
    "sum_odd",
    "sum_odd_confluent",
    "toscano",
]
