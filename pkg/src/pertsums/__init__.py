"""Closed-form sums of perturbation series built from hypergeometric functions.

Subpackages/modules:

* :mod:`pertsums.specfun` - gamma family, Pochhammer, Li2, pFq, quadrature
* :mod:`pertsums.oracle` - brute-force evaluators used as ground truth
* :mod:`pertsums.closedform` - the closed-form sums and kernels
* :mod:`pertsums.oscillator` - spiked harmonic oscillator perturbation theory
* :mod:`pertsums.laplace` - real-axis checks of inverse Laplace identities
* :mod:`pertsums.cli` - command-line front end
"""

from .errors import ConvergenceError, DomainError, PertSumsError, PoleError

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "DomainError", "PertSumsError", "PoleError", "__version__"]
