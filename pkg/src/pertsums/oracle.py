"""Brute-force evaluators used as ground truth for the closed forms.

The central series are

    S(alpha; b, gamma, y) = sum_{n>=1} (alpha/2)_n / (n n!) * 2F1(-n, b; gamma; y)
    S(alpha; gamma, x2)   = sum_{n>=1} (alpha/2)_n / (n n!) * 1F1(-n; gamma; x2)

The inner polynomials come from their three-term recurrences rather than
explicit finite sums: at ``y`` near 1 the explicit sum of ``2F1(-n, ...)``
loses about ``n log10(2)`` digits to cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .closedform import f3_kernel_complement
from .errors import ConvergenceError, DomainError
from .specfun import (
    EvalResult,
    PFQSpec,
    Status,
    digamma,
    gauss_sequence,
    hyp,
    integrate,
    kummer_negative,
    kummer_sequence,
    ln_gamma,
    pfq,
    sum_algebraic,
)
from .specfun.summation import EPS, Neumaier

DEFAULT_MAX_N = 20_000


@dataclass(frozen=True)
class SeriesParams:
    """Parameters of the Gauss series; ``b = None`` selects the confluent one."""

    alpha: float
    b: float | None
    gamma: float
    y: float

    def validate(self) -> None:
        for v in (self.alpha, self.gamma, self.y) + ((self.b,) if self.b is not None else ()):
            if not math.isfinite(v):
                raise DomainError("series parameters must be finite")
        if not self.alpha > 0.0:
            raise DomainError("alpha must be positive")
        if not self.gamma > 0.5 * self.alpha:
            raise DomainError(f"need gamma > alpha/2, got gamma={self.gamma:g}, alpha={self.alpha:g}")
        if not self.y > 0.0:
            raise DomainError("y must be positive (the y = 0 series diverges for alpha >= 2)")

    @property
    def is_confluent(self) -> bool:
        return self.b is None


def _outer_coefficients(alpha: float) -> Iterator[float]:
    """(alpha/2)_n / (n n!) for n = 1, 2, ..."""
    h = 0.5 * alpha
    c = 1.0  # (h)_n / n!
    n = 1
    while True:
        c *= (h + n - 1) / n
        yield c / n
        n += 1


def series_gauss(
    p: SeriesParams,
    tolerance: float = 1e-12,
    max_n: int = DEFAULT_MAX_N,
) -> EvalResult:
    """Sum the Gauss series term by term with an algebraic tail model.

    For ``0 < y < 2`` the terms behave like ``n**-(2 + b - alpha/2)`` plus a
    geometric part ``(1-y)**n``.  Direct summation starts at a depth where
    the geometric part is negligible and doubles until the modelled tail is
    below ``tolerance`` relative to the sum, or ``max_n`` is reached.
    """
    p.validate()
    if p.b is None:
        raise DomainError("series_gauss needs a Gauss parameter b")
    b, gamma, y = p.b, p.gamma, p.y
    if y >= 2.0:
        raise DomainError("the Gauss series diverges for y >= 2")
    sigma = 2.0 + b - 0.5 * p.alpha
    if not sigma > 1.0:
        raise DomainError("the Gauss series needs alpha/2 < 1 + b")
    if gamma == b:
        # 2F1(-n, b; b; y) = (1-y)^n: plain geometric series
        return _series_geometric(p.alpha, 1.0 - y, tolerance, max_n)

    def terms() -> Iterator[float]:
        inner = gauss_sequence(b, gamma, y)
        next(inner)
        for c, f in zip(_outer_coefficients(p.alpha), inner):
            yield c * f

    gap = abs(1.0 - y)
    n_geo = 40.0 / -math.log(gap) if 0.0 < gap < 1.0 else 0.0
    start = int(max(1000.0, n_geo, 4.0 * (b * b + abs(gamma) * b + 1.0) / y))
    if start > max_n:
        raise ConvergenceError(f"series_gauss needs at least {start} terms, max_n={max_n}")
    return sum_algebraic(terms, sigma, tolerance, max_n, min_terms=start, label="series_gauss")


def _series_geometric(alpha: float, r: float, tolerance: float, max_n: int) -> EvalResult:
    # sum (alpha/2)_n/(n n!) r^n
    acc = Neumaier()
    power = 1.0
    for n, c in enumerate(_outer_coefficients(alpha), start=1):
        power *= r
        t = c * power
        acc.add(t)
        if abs(t) <= 1e-3 * tolerance * abs(acc.value) and abs(r) < 1.0:
            bound = abs(t) * abs(r) / (1.0 - abs(r)) * max(1.0, 0.5 * alpha)
            if bound <= tolerance * abs(acc.value) or n >= max_n:
                return EvalResult(acc.value, bound + 4 * EPS * acc.abs_total, n, Status.CONVERGED)
        if n >= max_n:
            break
    res = EvalResult(acc.value, abs(t), max_n, Status.FAILED_TO_CONVERGE)
    raise ConvergenceError("geometric series did not converge", res)


def series_confluent(
    alpha: float,
    gamma: float,
    x2: float,
    tolerance: float = 1e-10,
    max_n: int = DEFAULT_MAX_N,
) -> EvalResult:
    """Sum the confluent series term by term.

    The terms decay like ``n**-(7/4 + gamma/2 - alpha/2)`` times an
    oscillation ``cos(2 x sqrt(n) + phase)``, so the partial sums swing
    about the limit.  Over the last stretch covering at least two
    oscillation periods the reported value is the centre of the band of
    partial sums.  The error estimate is the larger of the last two changes
    of that centre between checkpoints (each doubling the depth); summation
    continues until
    it falls below ``tolerance`` relative to the value.  The band half-width,
    a cruder bound, is kept in the diagnostics as ``envelope``.

    The series converges only for ``gamma > alpha - 5/2``, and slowly when
    ``gamma`` is close to that; :func:`series_confluent_abel` does not need
    term-by-term convergence.
    """
    SeriesParams(alpha, None, gamma, x2).validate()
    x = math.sqrt(x2)
    coeffs = _outer_coefficients(alpha)
    inner = kummer_sequence(gamma, x2)
    next(inner)
    partial: list[float] = []
    acc = Neumaier()
    f = 1.0
    check = 512
    n = 0
    err = math.inf
    previous = None
    last_change = math.inf
    while True:
        while n < check:
            c = next(coeffs)
            f = next(inner)
            n += 1
            acc.add(c * f)
            partial.append(acc.value)
        window = max(8, int(2.0 * 2.0 * math.pi * math.sqrt(n) / x) + 1, n // 8)
        window = min(window, n // 2)
        recent = partial[-window:]
        hi, lo = max(recent), min(recent)
        spread = 0.5 * (hi - lo)
        value = 0.5 * (hi + lo)
        if previous is not None:
            change = abs(value - previous)
            err = max(change, last_change) + 4.0 * EPS * acc.abs_total
            last_change = change
        if err <= tolerance * abs(value) or n >= max_n:
            break
        previous = value
        check = min(2 * check, max_n)
    cancel = _kummer_cancellation(gamma, x2, n, f)
    diag: dict = {"window": window, "envelope": spread, "partial_sum": acc.value, "cancellation_log10": cancel}
    if cancel > 6.0:
        diag["CancellationWarning"] = True
    done = err <= tolerance * abs(value)
    result = EvalResult(value, err, n, Status.TAIL_BOUNDED if done else Status.FAILED_TO_CONVERGE, diag)
    if not done:
        raise ConvergenceError(f"series_confluent: error {err:.3g} after {n} terms", result)
    return result


def series_confluent_abel(alpha: float, gamma: float, x2: float, tolerance: float = 1e-12) -> EvalResult:
    """Confluent series through the Laguerre generating function.

    With ``h = alpha/2`` and ``1/n = int_0^1 r^(n-1) dr``,

        S = int_0^inf [(1+s)^h 1F1(h; gamma; -x2 s) - 1] / (s (1+s)) ds,

    which is the Abel sum of the series.  It equals the ordinary sum where
    that converges and needs only ``gamma > alpha/2``.
    """
    SeriesParams(alpha, None, gamma, x2).validate()
    h = 0.5 * alpha

    def f(s: float) -> float:
        u = x2 * s
        if u <= 1.0:
            log_g = h * math.log1p(s) + math.log(kummer_negative(h, gamma, u))
        else:
            # (1+s)^h M = ((1+s)/u)^h * u^h M, finite as s -> inf
            log_g = h * (math.log1p(1.0 / s) - math.log(x2)) + math.log(kummer_negative(h, gamma, u, scaled=True))
        return math.expm1(log_g) / (s * (1.0 + s))

    split = 60.0 / x2
    parts = [
        integrate(f, 0.0, split, tolerance=1e-300, rel_tolerance=tolerance),
        integrate(f, split, math.inf, tolerance=1e-300, rel_tolerance=tolerance),
    ]
    value = math.fsum(r.value for r in parts)
    err = math.fsum(r.abs_error_estimate for r in parts) + 16 * EPS * abs(value)
    return EvalResult(value, err, sum(r.terms_used for r in parts), Status.CONVERGED, {"pathway": "abel"})


def _kummer_cancellation(gamma: float, x2: float, n: int, value: float) -> float:
    """log10 of the largest explicit term of 1F1(-n; gamma; x2) over ``|value|``."""
    log_t = 0.0
    log_peak = 0.0
    for k in range(n):
        log_t += math.log(abs((k - n) * x2 / ((gamma + k) * (k + 1))))
        log_peak = max(log_peak, log_t)
        if log_t < log_peak - 46.0:
            break
    if value == 0.0:
        return math.inf
    return (log_peak - math.log(abs(value))) / math.log(10.0)


def _take(it: Iterator[float], count: int) -> Iterator[float]:
    for _, v in zip(range(count), it):
        yield v


def series_at_y0(alpha: float) -> float:
    """Limit ``y -> 0`` of the Gauss series: ``psi(1) - psi(1 - alpha/2)``, ``0 < alpha < 2``."""
    if not 0.0 < alpha < 2.0:
        raise DomainError("the y = 0 series converges only for 0 < alpha < 2")
    return digamma(1.0) - digamma(1.0 - 0.5 * alpha)


def series_at_y0_direct(alpha: float, tolerance: float = 1e-12, max_n: int = 400_000) -> EvalResult:
    """Direct summation of ``sum (alpha/2)_n / (n n!)`` for ``0 < alpha < 2``."""
    if not 0.0 < alpha < 2.0:
        raise DomainError("the y = 0 series converges only for 0 < alpha < 2")
    return sum_algebraic(
        lambda: _outer_coefficients(alpha), 2.0 - 0.5 * alpha, tolerance, max_n, min_terms=2000,
        label="series_at_y0",
    )


def series_at_y1(alpha: float, b: float, gamma: float, tolerance: float = 1e-13) -> EvalResult:
    """The Gauss series at ``y = 1`` as a ``4F3`` at unit argument.

    Chu-Vandermonde turns the inner polynomials into ``(gamma-b)_n/(gamma)_n``;
    shifting the index gives
    ``(alpha/2)(gamma-b)/gamma * 4F3(1+alpha/2, gamma-b+1, 1, 1; gamma+1, 2, 2; 1)``.
    """
    if not 0.5 * alpha < 1.0 + b:
        raise DomainError("the y = 1 series needs alpha/2 < 1 + b")
    if gamma == b:
        return EvalResult(0.0, 0.0, 1, Status.TERMINATED)
    spec = PFQSpec((1.0 + 0.5 * alpha, gamma - b + 1.0, 1.0, 1.0), (gamma + 1.0, 2.0, 2.0), 1.0)
    f = pfq(spec, tolerance=tolerance, max_terms=2_000_000)
    front = 0.5 * alpha * (gamma - b) / gamma
    return EvalResult(front * f.value, abs(front) * f.abs_error_estimate, f.terms_used, f.status, f.diagnostics)


def integral_representation(p: SeriesParams, tolerance: float = 1e-12) -> EvalResult:
    """Gauss series as a Beta-weighted integral of the ``3F2`` kernel.

    ``(alpha/2) / B(b, gamma-b) * int_0^1 t^(b-1) (1-t)^(gamma-b-1) K(1 - y t) dt``
    with ``K(z) = z 3F2(1+alpha/2, 1, 1; 2, 2; z)``.  Needs ``gamma > b > 0``
    and ``0 < y <= 2``.
    """
    p.validate()
    if p.b is None:
        raise DomainError("integral_representation needs a Gauss parameter b")
    b, gamma, y = p.b, p.gamma, p.y
    if not gamma > b > 0.0:
        raise DomainError("integral_representation needs gamma > b > 0")
    if y > 2.0:
        raise DomainError("kernel argument 1 - y t leaves (-1, 1) for y > 2")
    a = 0.5 * p.alpha
    c = gamma - b

    def left(t: float) -> float:
        return (1.0 - t) ** (c - 1.0) * _power_times_kernel(b - 1.0, t, a, y)

    def right(s: float) -> float:
        # t = 1 - s; keeps the (1-t)^(c-1) endpoint at the lower limit
        w = y * (1.0 - s)
        if w >= 2.0:
            w = math.nextafter(2.0, 0.0)
        return (1.0 - s) ** (b - 1.0) * s ** (c - 1.0) * f3_kernel_complement(a, w).value

    r1 = integrate(left, 0.0, 0.5, tolerance=1e-300, rel_tolerance=tolerance)
    r2 = integrate(right, 0.0, 0.5, tolerance=1e-300, rel_tolerance=tolerance)
    # (alpha/2) Gamma(gamma) / (Gamma(b) Gamma(gamma-b))
    front = a * math.exp(ln_gamma(gamma) - ln_gamma(b) - ln_gamma(c))
    value = front * (r1.value + r2.value)
    err = front * (r1.abs_error_estimate + r2.abs_error_estimate) + 16 * EPS * abs(value)
    return EvalResult(value, err, r1.terms_used + r2.terms_used, Status.CONVERGED)


def _power_times_kernel(e: float, t: float, a: float, y: float) -> float:
    """t**e * K(1 - y t), safe when K overflows at tiny t."""
    w = y * t
    if w >= 1e-60 or a <= 1.0:
        return t**e * f3_kernel_complement(a, max(w, 1e-60)).value
    # K ~ w^(1-a) / (a (a-1)); the next terms are smaller by w^(a-1) or w
    return math.exp(e * math.log(t) + (1.0 - a) * math.log(w)) / (a * (a - 1.0))


def euler_2f1(n: int, b: float, gamma: float, y: float, tolerance: float = 1e-13) -> float:
    """``2F1(-n, b; gamma; y)`` from Euler's integral, for ``gamma > b > 0``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if not gamma > b > 0.0:
        raise DomainError("euler_2f1 needs gamma > b > 0")
    c = gamma - b

    def left(t: float) -> float:
        return t ** (b - 1.0) * (1.0 - t) ** (c - 1.0) * (1.0 - y * t) ** n

    def right(s: float) -> float:
        return (1.0 - s) ** (b - 1.0) * s ** (c - 1.0) * (1.0 - y * (1.0 - s)) ** n

    total = (
        integrate(left, 0.0, 0.5, tolerance=1e-300, rel_tolerance=tolerance).value
        + integrate(right, 0.0, 0.5, tolerance=1e-300, rel_tolerance=tolerance).value
    )
    return total * math.exp(ln_gamma(gamma) - ln_gamma(b) - ln_gamma(c))


def confluent_limit_probe(n: int, gamma: float, x2: float, b_sequence: Sequence[float]) -> list[float]:
    """Deviations ``|2F1(-n, b; gamma; x2/b) - 1F1(-n; gamma; x2)|`` along ``b_sequence``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    bs = list(b_sequence)
    if any(b2 <= b1 for b1, b2 in zip(bs, bs[1:])):
        raise DomainError("b_sequence must be strictly increasing")
    if any(b <= x2 for b in bs):
        raise DomainError("every b must exceed x2")
    target = hyp((-float(n),), (gamma,), x2)
    return [abs(hyp((-float(n), b), (gamma,), x2 / b) - target) for b in bs]


def series_generating(
    lam: float,
    a: float,
    c: float,
    z: float,
    tolerance: float = 1e-10,
    max_terms: int = 200_000,
) -> EvalResult:
    """``sum_{n>=0} (-lam)_n / n! * 2F1(-n, a; c; z)`` for ``0 < z < 2``."""
    if not (lam + a > 0.0 and lam + c > 0.0):
        raise DomainError("need lam + a > 0 and lam + c > 0")
    if not 0.0 < z < 2.0:
        raise DomainError("the generating series needs 0 < z < 2")
    if lam >= 0 and lam == math.floor(lam):
        # finite sum of n <= lam terms
        m = int(lam)
        vals = []
        coef = 1.0
        for n, f in enumerate(_take(gauss_sequence(a, c, z), m + 1)):
            vals.append(coef * f)
            coef *= (n - lam) / (n + 1)
        return EvalResult(math.fsum(vals), 4 * EPS * math.fsum(map(abs, vals)), m + 1, Status.TERMINATED)

    def terms() -> Iterator[float]:
        coef = 1.0
        for n, f in enumerate(gauss_sequence(a, c, z)):
            yield coef * f
            coef *= (n - lam) / (n + 1)

    gap = abs(1.0 - z)
    n_geo = 40.0 / -math.log(gap) if 0.0 < gap < 1.0 else 0.0
    start = int(max(1000.0, n_geo, 4.0 * (a * a + abs(c) * a + 1.0) / z))
    return sum_algebraic(
        terms, 1.0 + lam + a, tolerance, max_terms, min_terms=min(start, max_terms), first_index=0,
        label="generating series",
    )


__all__ = [
    "DEFAULT_MAX_N",
    "SeriesParams",
    "confluent_limit_probe",
    "euler_2f1",
    "integral_representation",
    "series_at_y0",
    "series_at_y0_direct",
    "series_at_y1",
    "series_confluent",
    "series_confluent_abel",
    "series_gauss",
    "series_generating",
]
