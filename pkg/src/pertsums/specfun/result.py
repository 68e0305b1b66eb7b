from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any


class Status(enum.Enum):
    CONVERGED = "Converged"
    TERMINATED = "Terminated"
    TAIL_BOUNDED = "TailBounded"
    FAILED_TO_CONVERGE = "FailedToConverge"


@dataclass(frozen=True)
class EvalResult:
    """A computed value together with its error bookkeeping.

    ``abs_error_estimate`` covers truncation plus an allowance for rounding.
    ``diagnostics`` carries free-form notes (cancellation ratios, tail
    model parameters, continuation flags).
    """

    value: float
    abs_error_estimate: float
    terms_used: int
    status: Status
    diagnostics: dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.abs_error_estimate >= 0.0:
            raise ValueError("abs_error_estimate must be non-negative")
        if self.terms_used < 0:
            raise ValueError("terms_used must be non-negative")

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAILED_TO_CONVERGE

    def __float__(self) -> float:
        return self.value


def combined_error(a: EvalResult, b: EvalResult) -> float:
    """Error budget for comparing two results: both estimates plus 10 ulps."""
    scale = max(abs(a.value), abs(b.value))
    return a.abs_error_estimate + b.abs_error_estimate + 10.0 * math.ulp(scale)
