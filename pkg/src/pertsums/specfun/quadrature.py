"""Tanh-sinh (double exponential) quadrature with level doubling.

Nodes cluster double-exponentially at both ends, which copes with
integrable algebraic endpoint singularities.  Node positions are carried
as distances from the nearer endpoint so that functions singular at
``lo`` see arguments like ``lo + 1e-200`` without rounding to ``lo``.
A singularity at ``hi`` should be moved to a lower limit by the caller
(substitute ``s = hi - x``) when it is strong.
"""

from __future__ import annotations

import math
from typing import Callable

from ..errors import ConvergenceError, DomainError
from .result import EvalResult, Status
from .summation import EPS

HALF_PI = 0.5 * math.pi
_T_MAX = 6.8


def _nodes(level: int):
    """Yield (distance_lo, distance_hi, weight) on [0, 1] for the new nodes of a level.

    Level 0 holds t = 0, +-1, +-2, ...; level l > 0 adds the odd multiples
    of 2**-l.  Weights exclude the step h.
    """
    h = 2.0**-level
    k = 0 if level == 0 else 1
    step = 1 if level == 0 else 2
    while True:
        t = k * h
        if t > _T_MAX:
            return
        u = HALF_PI * math.sinh(t)
        # distance of tanh-node from the near end, on [0, 1]
        e = math.exp(-2.0 * u)
        near = e / (1.0 + e)
        far = 1.0 / (1.0 + e)
        w = HALF_PI * math.cosh(t) * 2.0 * e / (1.0 + e) ** 2
        if near == 0.0 or w == 0.0:
            return
        if t == 0.0:
            yield 0.5, 0.5, w
        else:
            yield far, near, w  # positive t: close to the upper end
            yield near, far, w  # negative t: close to the lower end
        k += step


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tolerance: float = 1e-12,
    max_level: int = 12,
    rel_tolerance: float = 0.0,
) -> EvalResult:
    """Integrate ``f`` over ``(lo, hi)``; ``hi`` may be ``math.inf``.

    Returns an :class:`EvalResult` whose ``abs_error_estimate`` is the
    difference between the last two levels plus a rounding allowance.
    Success means that estimate is below ``tolerance`` or below
    ``rel_tolerance * |value|``; otherwise :class:`ConvergenceError` is
    raised after ``max_level``.
    """
    if math.isnan(lo) or math.isnan(hi) or math.isinf(lo):
        raise DomainError("integration limits must be numbers with a finite lower limit")
    if hi == lo:
        return EvalResult(0.0, 0.0, 0, Status.CONVERGED)
    if hi < lo:
        raise DomainError("integrate expects lo < hi")

    if math.isinf(hi):
        def g(d_lo: float, d_hi: float) -> float:
            # x = lo + u/(1-u) with u = d_lo, 1-u = d_hi; the far tail is
            # dropped where the Jacobian overflows (needs f(x) x^2 -> 0)
            if d_hi < 1e-150:
                return 0.0
            return f(lo + d_lo / d_hi) / (d_hi * d_hi)
        width = 1.0
    else:
        width = hi - lo

        def g(d_lo: float, d_hi: float) -> float:
            x = lo + d_lo * width if d_lo <= d_hi else hi - d_hi * width
            if x <= lo or x >= hi:
                return 0.0
            return f(x) * width

    total = 0.0
    abs_total = 0.0
    evaluations = 0
    previous = None
    err = math.inf
    for level in range(max_level + 1):
        part = 0.0
        for d_lo, d_hi, w in _nodes(level):
            v = g(d_lo, d_hi) * w
            if not math.isfinite(v):
                raise DomainError(f"integrand is not finite near x-lo={d_lo * width:.3g}")
            part += v
            abs_total += abs(v)
            evaluations += 1
        total += part
        h = 2.0**-level
        estimate = total * h
        if previous is not None:
            err = abs(estimate - previous) + 16.0 * EPS * abs_total * h
            if level >= 3 and err <= max(tolerance, rel_tolerance * abs(estimate)):
                return EvalResult(estimate, err, evaluations, Status.CONVERGED, {"level": level})
        previous = estimate
    result = EvalResult(previous, err, evaluations, Status.FAILED_TO_CONVERGE, {"level": max_level})
    raise ConvergenceError(
        f"quadrature error estimate {err:.3g} above tolerance {tolerance:.3g}", result
    )
