"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PertSumsError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PertSumsError, ValueError):
    """Arguments fall outside the domain where a formula or series is valid."""


class PoleError(DomainError):
    """An argument sits on (or within the guard distance of) a pole."""


class ConvergenceError(PertSumsError, ArithmeticError):
    """A series or quadrature did not reach the requested tolerance.

    The partially converged :class:`~pertsums.specfun.EvalResult` is kept on
    ``result`` for diagnostics; its status is ``FailedToConverge`` and the
    value must not be fed into identity checks.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ContinuationWarning(UserWarning):
    """A closed form is evaluated outside the domain where it was proved."""
