"""Generalized hypergeometric series, terminating polynomials and Li2."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ..errors import ConvergenceError, DomainError, PoleError
from .result import EvalResult, Status
from .summation import EPS, Neumaier, sum_algebraic

PI2_6 = math.pi**2 / 6.0


class SeriesKind(enum.Enum):
    TERMINATING = "terminating"
    ENTIRE = "p<q+1"
    DISK = "p=q+1,|z|<1"
    UNIT_CIRCLE = "p=q+1,|z|=1"
    DIVERGENT = "divergent"


def _negint(x: float) -> int | None:
    """Return m when x == -m for an integer m >= 0, else None."""
    if x <= 0.0 and x == math.floor(x):
        return int(-x)
    return None


@dataclass(frozen=True)
class PFQSpec:
    """pFq(upper; lower; argument) with real parameters."""

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    argument: float
    # upper parameters that are nonpositive integers cut the series at this index
    _cut: int | None = field(init=False, repr=False, compare=False)

    def __init__(self, upper: Sequence[float], lower: Sequence[float], argument: float):
        object.__setattr__(self, "upper", tuple(float(a) for a in upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in lower))
        object.__setattr__(self, "argument", float(argument))
        cuts = [m for m in map(_negint, self.upper) if m is not None]
        object.__setattr__(self, "_cut", min(cuts) if cuts else None)
        self.validate()

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    @property
    def terminates_at(self) -> int | None:
        """Index of the last nonzero term for a terminating series."""
        return self._cut

    @property
    def balance(self) -> float:
        """sum(lower) - sum(upper); decides convergence on the unit circle."""
        return math.fsum(self.lower) - math.fsum(self.upper)

    def validate(self) -> None:
        for v in self.upper + self.lower + (self.argument,):
            if not math.isfinite(v):
                raise DomainError(f"non-finite hypergeometric parameter {v!r}")
        for b in self.lower:
            m = _negint(b)
            if m is None:
                continue
            # (b)_k vanishes for k > m; harmless only if the series stops first
            if self._cut is None or self._cut > m:
                raise PoleError(f"lower parameter {b:g} is a pole of the series")

    def classify(self) -> SeriesKind:
        if self._cut is not None or self.argument == 0.0:
            return SeriesKind.TERMINATING
        if self.p < self.q + 1:
            return SeriesKind.ENTIRE
        if self.p == self.q + 1:
            z = abs(self.argument)
            if z < 1.0:
                return SeriesKind.DISK
            if z == 1.0:
                return SeriesKind.UNIT_CIRCLE
        return SeriesKind.DIVERGENT

    def term_ratio(self, k: int) -> float:
        """t_{k+1} / t_k."""
        r = self.argument / (k + 1.0)
        for a in self.upper:
            r *= a + k
        for b in self.lower:
            r /= b + k
        return r


def pfq(spec: PFQSpec, tolerance: float = 1e-15, max_terms: int = 200_000) -> EvalResult:
    """Evaluate a generalized hypergeometric series by direct summation.

    Terminating series are summed exactly over their support.  Inside the
    convergence region the sum is accumulated with compensation and stopped
    once three consecutive terms and a rigorous geometric tail bound are all
    below ``tolerance * |sum|``.  On the unit circle (p = q+1) the series is
    only attempted when ``balance > 0``; the algebraic tail is then modelled
    with decay exponent ``1 + balance``.
    """
    kind = spec.classify()
    if kind is SeriesKind.TERMINATING:
        return _pfq_terminating(spec)
    if kind is SeriesKind.DIVERGENT:
        raise DomainError(
            f"{spec.p}F{spec.q} series diverges at z={spec.argument:g} and does not terminate"
        )
    if kind is SeriesKind.UNIT_CIRCLE:
        s = spec.balance
        if not s > 0.0:
            raise DomainError(
                f"{spec.p}F{spec.q} at |z|=1 needs sum(lower)-sum(upper) > 0, got {s:g}"
            )
        if spec.argument == 1.0:
            return _pfq_unit(spec, tolerance, max_terms)
        return _pfq_alternating(spec, tolerance, max_terms)
    return _pfq_geometric(spec, tolerance, max_terms)


def _pfq_terminating(spec: PFQSpec) -> EvalResult:
    n = spec._cut if spec._cut is not None else 0
    terms = [1.0]
    t = 1.0
    for k in range(n):
        t *= spec.term_ratio(k)
        terms.append(t)
    value = math.fsum(terms)
    scale = math.fsum(abs(x) for x in terms)
    return EvalResult(
        value=value,
        abs_error_estimate=4.0 * EPS * scale,
        terms_used=len(terms),
        status=Status.TERMINATED,
        diagnostics={"cancellation": scale / abs(value) if value else math.inf},
    )


def _ratio_bound(spec: PFQSpec, k: int) -> float:
    """Upper bound on |t_{j+1}/t_j| for every j >= k (inf if none yet)."""
    if any(a + k <= 0.0 for a in spec.upper) or any(b + k <= 0.0 for b in spec.lower):
        return math.inf
    ups = sorted(spec.upper, reverse=True)
    lows = sorted(spec.lower + (1.0,), reverse=True)
    bound = abs(spec.argument)
    for i, a in enumerate(ups):
        bound *= max((k + a) / (k + lows[i]), 1.0)
    for b in lows[len(ups):]:
        bound /= k + b
    return bound


def _pfq_geometric(spec: PFQSpec, tolerance: float, max_terms: int) -> EvalResult:
    acc = Neumaier(1.0)
    t = 1.0
    small_run = 0
    for k in range(max_terms):
        t *= spec.term_ratio(k)
        acc.add(t)
        s = abs(acc.value)
        small_run = small_run + 1 if abs(t) <= tolerance * s else 0
        if small_run >= 3:
            r = _ratio_bound(spec, k + 1)
            if r < 1.0:
                tail = abs(t) * r / (1.0 - r)
                if tail <= tolerance * s:
                    return EvalResult(
                        value=acc.value,
                        abs_error_estimate=tail + 4.0 * EPS * acc.abs_total,
                        terms_used=k + 2,
                        status=Status.CONVERGED,
                        diagnostics={"cancellation": acc.abs_total / s if s else math.inf},
                    )
    result = EvalResult(acc.value, abs(t), max_terms + 1, Status.FAILED_TO_CONVERGE)
    raise ConvergenceError(f"{spec.p}F{spec.q} did not converge in {max_terms} terms", result)


def _pfq_unit(spec: PFQSpec, tolerance: float, max_terms: int) -> EvalResult:
    def terms() -> Iterator[float]:
        t = 1.0
        k = 0
        while True:
            yield t
            t *= spec.term_ratio(k)
            k += 1

    big = max(abs(x) for x in spec.upper + spec.lower + (1.0,))
    return sum_algebraic(
        terms,
        sigma=1.0 + spec.balance,
        tolerance=tolerance,
        max_terms=max_terms,
        min_terms=int(256 + 32 * big),
        first_index=0,
        label=f"{spec.p}F{spec.q}(1)",
    )


def _pfq_alternating(spec: PFQSpec, tolerance: float, max_terms: int) -> EvalResult:
    # z = -1: eventually alternating with decreasing magnitude; the tail is
    # bounded by the first omitted term and centred by half of it.
    acc = Neumaier(1.0)
    t = 1.0
    big = max(abs(x) for x in spec.upper + spec.lower + (1.0,))
    for k in range(max_terms):
        nxt = t * spec.term_ratio(k)
        if k > 2 * big and abs(nxt) <= tolerance * abs(acc.value):
            return EvalResult(
                value=acc.value + 0.5 * nxt,
                abs_error_estimate=0.5 * abs(nxt) + 4.0 * EPS * acc.abs_total,
                terms_used=k + 1,
                status=Status.TAIL_BOUNDED,
            )
        t = nxt
        acc.add(t)
    result = EvalResult(acc.value, abs(t), max_terms, Status.FAILED_TO_CONVERGE)
    raise ConvergenceError(f"{spec.p}F{spec.q}(-1) did not converge", result)


def hyp(upper: Sequence[float], lower: Sequence[float], z: float, **kw) -> float:
    """Shorthand returning only the value of :func:`pfq`."""
    return pfq(PFQSpec(upper, lower, z), **kw).value


def laguerre(n: int, a: float, y: float) -> float:
    """Generalized Laguerre polynomial L_n^(a)(y) by upward recurrence."""
    if n < 0:
        raise DomainError("laguerre degree must be nonnegative")
    prev, cur = 1.0, 1.0 + a - y
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + a - y) * cur - (k + a) * prev) / (k + 1)
    return cur


def kummer_sequence(gamma: float, x2: float) -> Iterator[float]:
    """Yield 1F1(-n; gamma; x2) for n = 0, 1, 2, ...

    This is the Laguerre recurrence rescaled by n!/(gamma)_n, i.e.
    1F1(-n; gamma; x2) = n!/(gamma)_n L_n^(gamma-1)(x2).
    """
    if _negint(gamma) is not None:
        raise PoleError(f"1F1 lower parameter {gamma:g} is a pole")
    prev, cur = 1.0, 1.0 - x2 / gamma
    yield prev
    n = 1
    while True:
        yield cur
        prev, cur = cur, ((2 * n + gamma - x2) * cur - n * prev) / (gamma + n)
        n += 1


def gauss_sequence(b: float, gamma: float, y: float) -> Iterator[float]:
    """Yield 2F1(-n, b; gamma; y) for n = 0, 1, 2, ... by the contiguous recurrence.

    (gamma+n) F_{n+1} = (2n + gamma - (b+n) y) F_n + n (y-1) F_{n-1}.
    Forward recurrence is stable for 0 < y < 2, where the wanted solution
    is the dominant one.
    """
    if _negint(gamma) is not None:
        raise PoleError(f"2F1 lower parameter {gamma:g} is a pole")
    prev, cur = 1.0, 1.0 - b * y / gamma
    yield prev
    n = 1
    while True:
        yield cur
        prev, cur = cur, ((2 * n + gamma - (b + n) * y) * cur + n * (y - 1.0) * prev) / (gamma + n)
        n += 1


def kummer_negative(a: float, b: float, u: float, scaled: bool = False) -> float:
    """Kummer function 1F1(a; b; -u) for u >= 0 and b > a.

    With ``scaled=True`` the result is multiplied by ``u**a``, which tends to
    ``Gamma(b)/Gamma(b-a)`` and stays finite for huge ``u``.

    Small ``u`` uses the transformation ``e^-u 1F1(b-a; b; u)``, whose series
    has positive terms.  Large ``u`` uses the algebraic asymptotic series; the
    neglected exponentially small part is below ``e^-u u^(2a-b)``.
    """
    if u < 0.0:
        raise DomainError("kummer_negative needs u >= 0")
    if not b > a:
        raise DomainError("kummer_negative needs b > a")
    if u == 0.0:
        return 0.0 if scaled and a > 0 else 1.0
    if u <= _KUMMER_SWITCH:
        shift = a * math.log(u) if scaled else 0.0
        return math.exp(shift - u) * pfq(PFQSpec((b - a,), (b,), u)).value
    # Gamma(b)/Gamma(b-a) u^-a 2F0(a, 1+a-b; ; 1/u), truncated at the smallest term
    log_front = math.lgamma(b) - math.lgamma(b - a)
    front = math.exp(log_front if scaled else log_front - a * math.log(u))
    acc = Neumaier(1.0)
    t = 1.0
    k = 0
    while True:
        nxt = t * (a + k) * (1.0 + a - b + k) / ((k + 1) * u)
        if abs(nxt) >= abs(t) or abs(nxt) <= 1e-17 * abs(acc.value):
            break
        t = nxt
        acc.add(t)
        k += 1
    return front * acc.value


_KUMMER_SWITCH = 60.0


def dilog(z: float) -> float:
    """Real dilogarithm Li2(z) = -int_0^z log(1-t)/t dt for z <= 1."""
    if z > 1.0:
        raise DomainError(f"dilog is real only for z <= 1, got {z!r}")
    if z == 1.0:
        return PI2_6
    if z == 0.0:
        return 0.0
    if z < -1.0:
        lz = math.log(-z)
        return -PI2_6 - 0.5 * lz * lz - dilog(1.0 / z)
    if z < 0.0:
        # Landen: maps [-1, 0) onto (0, 1/2]
        l1 = math.log1p(-z)
        return -_dilog_series(z / (z - 1.0)) - 0.5 * l1 * l1
    if z <= 0.5:
        return _dilog_series(z)
    return PI2_6 - math.log(z) * math.log1p(-z) - _dilog_series(1.0 - z)


def _dilog_series(z: float) -> float:
    acc = Neumaier()
    power = z
    k = 1
    while True:
        term = power / (k * k)
        acc.add(term)
        if abs(term) <= 1e-18 * abs(acc.value):
            return acc.value
        k += 1
        power *= z
