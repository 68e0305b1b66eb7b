"""Perturbed Gol'dman-Krivchenkov oscillator ``H = -d2/dx2 + x^2 + A/x^2 + lambda x^-alpha``.

The unperturbed problem on ``x > 0`` (Dirichlet at 0) has eigenvalues
``E_n = 2(2n + gamma)`` with ``gamma = 1 + sqrt(1 + 4A)/2`` and
eigenfunctions proportional to ``x^(gamma-1/2) exp(-x^2/2) 1F1(-n; gamma; x^2)``.
The coefficient of ``x^2`` is fixed to 1; a general ``B x^2`` follows by
rescaling ``x``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import closedform
from .errors import ConvergenceError, DomainError
from .specfun import EvalResult, PFQSpec, digamma, gamma_ratio, ln_gamma, pfq, sum_algebraic
from .specfun.hypergeometric import laguerre


def gamma_from_A(A: float) -> float:
    if not A >= 0.0:
        raise DomainError("A must be nonnegative")
    return 1.0 + 0.5 * math.sqrt(1.0 + 4.0 * A)


@dataclass(frozen=True)
class OscillatorModel:
    A: float
    alpha: float
    lam: float = 0.0

    def __post_init__(self):
        if not self.A >= 0.0:
            raise DomainError("A must be nonnegative")
        if not self.alpha > 0.0:
            raise DomainError("alpha must be positive")
        if not self.lam >= 0.0:
            raise DomainError("lambda must be nonnegative")

    @property
    def gamma(self) -> float:
        return gamma_from_A(self.A)

    @classmethod
    def from_gamma(cls, gamma: float, alpha: float, lam: float = 0.0) -> "OscillatorModel":
        if not gamma >= 1.5:
            raise DomainError("gamma = 1 + sqrt(1+4A)/2 is at least 3/2")
        s = 2.0 * (gamma - 1.0)  # sqrt(1 + 4A)
        return cls((s * s - 1.0) / 4.0, alpha, lam)


@dataclass(frozen=True)
class SpectralExpansion:
    """Ground-state energy ``e0 + c1 lambda + c2 lambda^2 + ...``."""

    e0: float
    c1: float
    c2: float
    validity: float  # the expansion needs alpha < validity = gamma + 1
    c2_error: float = 0.0

    def energy(self, lam: float) -> float:
        return self.e0 + lam * (self.c1 + lam * self.c2)


def gamma_from_quantum_numbers(l: int, N: int) -> float:
    """``gamma`` for angular momentum ``l`` in ``N`` dimensions.

    Uses ``A = (l + (N-1)/2)(l + (N-3)/2)``; ``N = 3`` reproduces ``A = l(l+1)``.
    """
    if l < 0 or N < 1:
        raise DomainError("need l >= 0 and N >= 1")
    A = (l + 0.5 * (N - 1)) * (l + 0.5 * (N - 3))
    if A < 0.0:
        raise DomainError(f"(l, N) = ({l}, {N}) gives a negative A = {A:g}")
    return gamma_from_A(A)


def eigenenergy(n: int, gamma: float) -> float:
    return 2.0 * (2 * n + gamma)


def _check_matrix_domain(alpha: float, gamma: float) -> None:
    if not alpha > 0.0:
        raise DomainError("alpha must be positive")
    if not gamma > 0.5 * alpha:
        raise DomainError(f"matrix elements of x^-alpha need gamma > alpha/2 (gamma={gamma:g}, alpha={alpha:g})")


def _log_norm(n: int, gamma: float) -> float:
    # log of sqrt((gamma)_n / n!)
    return 0.5 * (ln_gamma(gamma + n) - ln_gamma(gamma) - math.lgamma(n + 1.0))


def _log_ratio(n: int, alpha: float, gamma: float) -> float:
    # log of (alpha/2)_n / (gamma)_n
    h = 0.5 * alpha
    return ln_gamma(h + n) - ln_gamma(h) - ln_gamma(gamma + n) + ln_gamma(gamma)


def basis_psi(n: int, gamma: float, x: float) -> float:
    """Normalized unperturbed eigenfunction ``psi_n(x)`` for ``x > 0``."""
    if not x > 0.0:
        raise DomainError("basis_psi needs x > 0")
    if n < 0:
        raise DomainError("n must be nonnegative")
    x2 = x * x
    log_amp = (
        0.5 * math.log(2.0) - 0.5 * ln_gamma(gamma) - _log_norm(n, gamma)
        + (gamma - 0.5) * math.log(x) - 0.5 * x2
    )
    if log_amp + n * math.log1p(x2) < -745.0:
        return 0.0  # below the smallest subnormal
    # L_n^(gamma-1) = (gamma)_n/n! 1F1(-n; gamma; x^2), hence the norm factor
    f = laguerre(n, gamma - 1.0, x2) if n else 1.0
    sign = -1.0 if n % 2 else 1.0
    return sign * f * math.exp(log_amp)


def _terminating_3f2(m: int, n: int, alpha: float, gamma: float) -> float:
    """3F2(-m, gamma-alpha/2, 1-alpha/2; gamma, 1-n-alpha/2; 1) without poles.

    With ``c = 1 - alpha/2`` the ratio ``(c)_k / (c-n)_k`` equals
    ``(c-n+k)_n / (c-n)_n``, whose denominator never vanishes for alpha > 0.
    """
    c = 1.0 - 0.5 * alpha
    g = gamma - 0.5 * alpha
    denom = math.prod(c - n + i for i in range(n))
    terms = []
    coef = 1.0  # (-m)_k (g)_k / ((gamma)_k k!)
    for k in range(m + 1):
        num = math.prod(c - n + k + i for i in range(n))
        terms.append(coef * num / denom)
        coef *= (k - m) * (g + k) / ((gamma + k) * (k + 1))
    return math.fsum(terms)


def matrix_element_x_neg_alpha(m: int, n: int, alpha: float, gamma: float) -> float:
    """``<psi_m | x^-alpha | psi_n>`` in closed form."""
    _check_matrix_domain(alpha, gamma)
    if m < 0 or n < 0:
        raise DomainError("indices must be nonnegative")
    sign = -1.0 if (m + n) % 2 else 1.0
    # (alpha/2)_n/(gamma)_n * sqrt((gamma)_n (gamma)_m/(n! m!))
    front = math.exp(_log_ratio(n, alpha, gamma) + _log_norm(n, gamma) + _log_norm(m, gamma))
    return sign * front * gamma_ratio(gamma - 0.5 * alpha, gamma) * _terminating_3f2(m, n, alpha, gamma)


def h0n(n: int, alpha: float, gamma: float, lam: float) -> float:
    """Coupling of the ground state to level ``n >= 1``: ``lambda <psi_0|x^-alpha|psi_n>``."""
    _check_matrix_domain(alpha, gamma)
    if n < 1:
        raise DomainError("h0n needs n >= 1")
    sign = -1.0 if n % 2 else 1.0
    amp = math.exp(_log_ratio(n, alpha, gamma) + _log_norm(n, gamma))
    return sign * lam * amp * gamma_ratio(gamma - 0.5 * alpha, gamma)


def hamiltonian_matrix(N: int, alpha: float, gamma: float, lam: float) -> np.ndarray:
    """Truncated ``N x N`` Hamiltonian in the unperturbed basis."""
    if N < 1:
        raise DomainError("N must be positive")
    _check_matrix_domain(alpha, gamma)
    H = np.zeros((N, N))
    for m in range(N):
        H[m, m] = eigenenergy(m, gamma)
        if lam == 0.0:
            continue
        for n in range(m, N):
            v = lam * matrix_element_x_neg_alpha(m, n, alpha, gamma)
            H[m, n] += v
            if n != m:
                H[n, m] = v
    return H


def energy_expansion(alpha: float, gamma: float, tolerance: float = 1e-9) -> SpectralExpansion:
    """Second-order ground-state energy coefficients.

    ``c1 = Gamma(gamma-alpha/2)/Gamma(gamma)`` and
    ``c2 = -alpha^2/(16 gamma) c1^2 4F3(1, 1, alpha/2+1, alpha/2+1; gamma+1, 2, 2; 1)``,
    which requires ``alpha < gamma + 1``.
    """
    _check_matrix_domain(alpha, gamma)
    if not alpha < gamma + 1.0:
        raise DomainError("the second-order coefficient needs alpha < gamma + 1")
    c1 = gamma_ratio(gamma - 0.5 * alpha, gamma)
    h = 0.5 * alpha + 1.0
    f = pfq(PFQSpec((1.0, 1.0, h, h), (gamma + 1.0, 2.0, 2.0), 1.0), tolerance=tolerance, max_terms=4_000_000)
    scale = alpha * alpha / (16.0 * gamma) * c1 * c1
    return SpectralExpansion(2.0 * gamma, c1, -scale * f.value, gamma + 1.0, scale * f.abs_error_estimate)


def second_order_direct(alpha: float, gamma: float, n_max: int = 10_000, tolerance: float = 1e-9) -> EvalResult:
    """``-sum_n H_0n^2 / (E_n - E_0)`` at ``lambda = 1``, summed state by state.

    The terms decay like ``n^(alpha-gamma-2)``; the remainder beyond the
    last state is taken from the algebraic tail model.
    """
    _check_matrix_domain(alpha, gamma)
    if not alpha < gamma + 1.0:
        raise DomainError("the second-order sum needs alpha < gamma + 1")

    def terms():
        n = 1
        while True:
            yield -h0n(n, alpha, gamma, 1.0) ** 2 / (4.0 * n)
            n += 1

    return sum_algebraic(
        terms, gamma + 2.0 - alpha, tolerance, n_max, min_terms=min(2000, n_max), label="second-order sum"
    )


def _confluent_sum(alpha: int, gamma: float, x2: float) -> float:
    if alpha % 2:
        return closedform.sum_odd_confluent((alpha - 1) // 2, gamma, x2)
    if alpha == 2:
        return digamma(gamma) - math.log(x2)
    return closedform.sum_even_confluent(alpha // 2 - 2, gamma, x2)


def psi1_correction(alpha: int, gamma: float, x: float) -> float:
    """First-order ground-state wavefunction correction per unit ``lambda``.

    ``alpha`` must be a positive integer; the series over excited states is
    replaced by the matching closed-form confluent sum.
    """
    if isinstance(alpha, bool) or int(alpha) != alpha or alpha < 1:
        raise DomainError("psi1_correction is available for integer alpha >= 1 only")
    alpha = int(alpha)
    if not gamma > 0.5 * alpha:
        raise DomainError(f"psi1_correction for alpha={alpha} needs gamma > {0.5 * alpha:g}")
    if not x > 0.0:
        raise DomainError("x must be positive")
    x2 = x * x
    front = -gamma_ratio(gamma - 0.5 * alpha, gamma) / (2.0 * math.sqrt(2.0))
    envelope = math.exp((gamma - 0.5) * math.log(x) - 0.5 * x2 - 0.5 * ln_gamma(gamma))
    return front * envelope * _confluent_sum(alpha, gamma, x2)


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted ascending.

    Sweeps stop once the off-diagonal Frobenius norm is below ``tol`` times
    the norm of the whole matrix.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("matrix must be square")
    if not np.array_equal(a, a.T):
        raise DomainError("matrix must be exactly symmetric")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol * scale:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    # rotation angle below rounding: t ~ apq/diff
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
    raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def variational_ground_energy(N: int, alpha: float, gamma: float, lam: float) -> float:
    """Lowest eigenvalue of the ``N x N`` truncated Hamiltonian (an upper bound)."""
    H = hamiltonian_matrix(N, alpha, gamma, lam)
    if N == 1:
        return float(H[0, 0])
    return float(jacobi_eigenvalues(H)[0])


__all__ = [
    "OscillatorModel",
    "SpectralExpansion",
    "basis_psi",
    "eigenenergy",
    "energy_expansion",
    "gamma_from_A",
    "gamma_from_quantum_numbers",
    "h0n",
    "hamiltonian_matrix",
    "jacobi_eigenvalues",
    "matrix_element_x_neg_alpha",
    "psi1_correction",
    "second_order_direct",
    "variational_ground_energy",
]
