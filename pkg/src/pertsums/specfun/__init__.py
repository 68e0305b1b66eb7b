"""Foundation kernels: gamma family, Pochhammer, Li2, pFq, Laguerre, quadrature."""

from .gammafn import (
    POLE_GUARD,
    check_pole,
    digamma,
    gamma,
    gamma_ratio,
    gamma_sign,
    ln_gamma,
    pochhammer,
)
from .hypergeometric import (
    PFQSpec,
    SeriesKind,
    dilog,
    gauss_sequence,
    hyp,
    kummer_negative,
    kummer_sequence,
    laguerre,
    pfq,
)
from .quadrature import integrate
from .result import EvalResult, Status, combined_error
from .summation import Neumaier, fitted_tail, hurwitz_tail, sum_algebraic

__all__ = [
    "POLE_GUARD",
    "EvalResult",
    "Neumaier",
    "PFQSpec",
    "SeriesKind",
    "Status",
    "check_pole",
    "combined_error",
    "digamma",
    "dilog",
    "fitted_tail",
    "gamma",
    "gamma_ratio",
    "gamma_sign",
    "gauss_sequence",
    "hurwitz_tail",
    "hyp",
    "integrate",
    "kummer_negative",
    "kummer_sequence",
    "laguerre",
    "ln_gamma",
    "pfq",
    "pochhammer",
    "sum_algebraic",
]
