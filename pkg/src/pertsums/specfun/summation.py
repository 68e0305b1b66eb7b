"""Compensated accumulation and tail handling for slowly convergent series.

Two tail treatments are provided:

* a ratio bound for series whose term ratio is eventually below one
  (geometric tails), used by :func:`pfq` inside the unit disk;
* an algebraic tail model for series whose terms behave like
  ``n**-sigma * (c0 + c1/n + c2/n**2 + ...)`` with a known exponent.  The
  smooth factor is interpolated in ``1/n`` over ``[N/2, N]`` and the tail
  ``sum_{n>N}`` is summed exactly term-by-term in the model through Hurwitz
  zeta tails.  Two model orders are compared for the error estimate.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Iterator

import numpy as np

from ..errors import ConvergenceError, DomainError
from .result import EvalResult, Status

EPS = 2.220446049250313e-16

# B_{2j} / (2j)! for j = 1..7
_EM_COEFFS = (
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
)


class Neumaier:
    """Running sum with Neumaier's improved Kahan compensation."""

    __slots__ = ("total", "comp", "abs_total")

    def __init__(self, start: float = 0.0):
        self.total = start
        self.comp = 0.0
        self.abs_total = abs(start)

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t
        self.abs_total += abs(x)

    @property
    def value(self) -> float:
        return self.total + self.comp


def hurwitz_tail(s: float, q: int) -> float:
    """sum_{n >= q} n**-s for s > 1 and integer q >= 1 (Euler-Maclaurin)."""
    if not s > 1.0:
        raise DomainError(f"hurwitz_tail needs s > 1, got {s!r}")
    if q < 1:
        raise DomainError("hurwitz_tail needs q >= 1")
    start = max(q, int(2.0 * s) + 30)
    head = math.fsum(n ** -s for n in range(q, start))
    big = float(start)
    acc = big ** (1.0 - s) / (s - 1.0) + 0.5 * big ** -s
    # rising product s (s+1) ... (s+2j-2) times start**(-s-2j+1)
    rising = s
    power = big ** (-s - 1.0)
    inv2 = 1.0 / (big * big)
    for j, coeff in enumerate(_EM_COEFFS, start=1):
        acc += coeff * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power *= inv2
    return head + acc


def fitted_tail(
    terms: list[float],
    offset: int,
    sigma: float,
    degree: int = 5,
) -> tuple[float, float, dict]:
    """Model-based estimate of the tail beyond the last stored term.

    ``terms[i]`` is the term with index ``n = offset + i``.  Returns the tail
    estimate ``sum_{n > N}``, an error estimate and fit diagnostics.
    """
    last = offset + len(terms) - 1
    if last < 4 * (degree + 1) or len(terms) < last // 2 + 1:
        raise DomainError("not enough stored terms for the algebraic tail fit")
    estimates = []
    for deg in (degree, degree - 1):
        step = max(1, last // (2 * deg))
        nodes = [last - j * step for j in range(deg + 1)]
        u = np.array([last / n for n in nodes])  # scaled 1/n in [1, 2]
        g = np.array([terms[n - offset] * float(n) ** sigma for n in nodes])
        coeffs = np.linalg.solve(np.vander(u, increasing=True), g)
        # g(n) = sum_k coeffs[k] * (last/n)**k
        tail = 0.0
        for k, c in enumerate(coeffs):
            tail += c * float(last) ** k * hurwitz_tail(sigma + k, last + 1)
        estimates.append(float(tail))
    tail_hi, tail_lo = estimates
    err = abs(tail_hi - tail_lo) + 64.0 * EPS * abs(tail_hi)
    return tail_hi, err, {"tail": tail_hi, "tail_model_spread": abs(tail_hi - tail_lo)}


def sum_algebraic(
    term_source: Callable[[], Iterator[float]] | Iterable[float],
    sigma: float,
    tolerance: float,
    max_terms: int,
    min_terms: int = 2000,
    first_index: int = 1,
    label: str = "series",
) -> EvalResult:
    """Sum a series with algebraically decaying terms ``~ C n**-sigma``.

    The terms are summed directly with compensation up to ``N`` and the
    remainder is estimated by :func:`fitted_tail`.  ``N`` doubles from
    ``min_terms`` until the tail error estimate is below
    ``tolerance * |sum|`` or ``max_terms`` is reached.
    """
    if not sigma > 1.0:
        raise DomainError(f"{label}: terms decay like n^-{sigma:g}, not summable")
    it = iter(term_source() if callable(term_source) else term_source)
    stored: list[float] = []
    acc = Neumaier()
    target = min(max(min_terms, 64), max_terms)
    while True:
        while len(stored) < target:
            t = float(next(it))
            if not math.isfinite(t):
                raise ConvergenceError(f"{label}: non-finite term at index {first_index + len(stored)}")
            stored.append(t)
            acc.add(t)
        partial = acc.value
        tail, tail_err, diag = fitted_tail(stored, first_index, sigma)
        value = partial + tail
        err = tail_err + 4.0 * EPS * acc.abs_total
        diag.update(sigma=sigma, partial_sum=partial)
        done = err <= tolerance * abs(value)
        if done or target >= max_terms:
            result = EvalResult(
                value=value,
                abs_error_estimate=err,
                terms_used=len(stored),
                status=Status.TAIL_BOUNDED if done else Status.FAILED_TO_CONVERGE,
                diagnostics=diag,
            )
            if not done:
                raise ConvergenceError(
                    f"{label}: tail error {err:.3g} above tolerance after {len(stored)} terms",
                    result,
                )
            return result
        target = min(2 * target, max_terms)
