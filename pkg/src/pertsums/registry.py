"""Registry of identities checked by seeded random sweeps.

Each :class:`IdentityRecord` pairs a brute-force pathway (``lhs``) with a
closed-form pathway (``rhs``) over a parameter box.  :func:`run_sweep`
draws points from the box with a ``random.Random`` seeded by the identity
id and the user seed, so sweeps are reproducible point for point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from . import closedform as cf
from . import laplace as lp
from . import oracle as orc
from .errors import PertSumsError
from .specfun import digamma, gamma, hyp, integrate

Params = dict
Sampler = Callable[[random.Random], Params]
Evaluator = Callable[[Params], float]


@dataclass(frozen=True)
class IdentityRecord:
    id: str
    description: str
    lhs: Evaluator  # oracle pathway
    rhs: Evaluator  # closed-form pathway
    domain: str
    sample: Sampler = field(repr=False)
    default_tolerance: float = 1e-8


@dataclass(frozen=True)
class SweepReport:
    identity: str
    samples: int
    max_rel_error: float
    worst_point: tuple
    passed: bool
    seed: int
    tolerance: float


def relative_error(lhs: float, rhs: float) -> float:
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return math.inf
    return abs(lhs - rhs) / scale


def run_sweep(record: IdentityRecord, samples: int, seed: int, tolerance: float | None = None) -> SweepReport:
    tol = record.default_tolerance if tolerance is None else tolerance
    rng = random.Random(f"{record.id}:{seed}")
    worst = -1.0
    worst_point: tuple = ()
    for _ in range(samples):
        p = record.sample(rng)
        try:
            err = relative_error(record.lhs(p), record.rhs(p))
        except PertSumsError:
            err = math.inf
        if err > worst or math.isnan(err):
            worst = math.inf if math.isnan(err) else err
            worst_point = tuple(sorted(p.items()))
    worst = max(worst, 0.0)
    return SweepReport(record.id, samples, worst, worst_point, worst <= tol, seed, tol)


# ---------------------------------------------------------------------------
# parameter boxes


def _u(rng: random.Random, lo: float, hi: float) -> float:
    return rng.uniform(lo, hi)


def _box_gauss_even(rng):
    m = rng.randrange(4)
    return {"m": m, "b": _u(rng, m + 2.3, m + 6), "gamma": _u(rng, m + 2.3, m + 7), "y": _u(rng, 0.15, 1.0)}


def _box_gauss_odd(rng, j=None):
    j = rng.randrange(4) if j is None else j
    b = _u(rng, j + 0.6, j + 4.5)
    return {"j": j, "b": b, "gamma": _u(rng, b + 0.05, b + 4), "y": _u(rng, 0.15, 0.95)}


def _box_confluent(rng, alpha):
    return {"gamma": _u(rng, alpha + 1.0, alpha + 3.0), "x2": _u(rng, 0.25, 4.0)}


def _kernel_box(rng):
    a = rng.choice((0.0, 0.5, 1.0, 2.0, 3.0, 3.7, _u(rng, -0.9, 4.5)))
    return {"a": a, "z": _u(rng, -0.5, 0.9)}


def _gauss(alpha, p, tol=1e-12):
    return orc.series_gauss(orc.SeriesParams(alpha, p["b"], p["gamma"], p["y"]), tolerance=tol, max_n=200_000).value


def _confluent(alpha, p, tol=1e-9):
    return orc.series_confluent(alpha, p["gamma"], p["x2"], tolerance=tol, max_n=4_000_000).value


def _f3_either(p):
    # past z = 1/2 the complement 1 - z is exact, so go through it
    if p["z"] > 0.5:
        return cf.f3_kernel_complement(p["a"], 1.0 - p["z"]).value
    return cf.f3_kernel(p["a"], p["z"]).value


def _closure(p):
    g, x = p["gamma"], p["x"]
    q = integrate(lambda t: lp.f_gamma_derivative(g, t), 0.0, x, tolerance=1e-300, rel_tolerance=1e-13)
    return q.value


def _antiderivative(p, side):
    # both integrands are positive on the box, so the sums cannot cancel
    pairs = lp.antiderivative_identities_check(p["gamma"], p["x"])
    return sum(getattr(q, side) for q in pairs)


def _generating(p):
    return cf.generating_identity_check(p["lam"], p["a"], p["c"], p["z"], tolerance=1e-11)


def _build() -> dict[str, IdentityRecord]:
    recs = [
        IdentityRecord(
            "lemma1", "z 2F1(a+1,1;2;z) kernel against its series",
            lambda p: p["z"] * hyp((p["a"] + 1.0, 1.0), (2.0,), p["z"]),
            lambda p: cf.gauss_kernel(p["a"], p["z"]).value,
            "a in {0,1/2,1,2,3,3.7} or U(-0.9,4.5), z in [-0.5,0.9]", _kernel_box, 1e-11,
        ),
        IdentityRecord(
            "lemma2", "z 3F2(a+1,1,1;2,2;z) kernel against its series",
            lambda p: p["z"] * hyp((p["a"] + 1.0, 1.0, 1.0), (2.0, 2.0), p["z"]),
            _f3_either,
            "a in {0,1/2,1,2,3,3.7} or U(-0.9,4.5), z in [-0.5,0.9]", _kernel_box, 1e-10,
        ),
        IdentityRecord(
            "lemma3", "reduction of z 3F2(a+1,1,1;c,2;z) to argument z/(z-1)",
            lambda p: p["z"] * hyp((p["a"] + 1.0, 1.0, 1.0), (p["c"], 2.0), p["z"]),
            lambda p: cf.luke_reduction(p["a"], p["c"], p["z"]),
            "a in [0.2,4], c in [1.2,5], z in [-0.9,0.45]",
            lambda r: {"a": _u(r, 0.2, 4.0), "c": _u(r, 1.2, 5.0), "z": _u(r, -0.9, 0.45)}, 1e-10,
        ),
        IdentityRecord(
            "eq34", "alpha=2 Gauss sum",
            lambda p: _gauss(2.0, p),
            lambda p: cf.sum_alpha2(p["b"], p["gamma"], p["y"]),
            "b in [0.3,5], gamma in (b, b+4], y in [0.15,1.5]",
            lambda r: (lambda b: {"b": b, "gamma": _u(r, b + 0.05, b + 4), "y": _u(r, 0.15, 1.5)})(_u(r, 0.3, 5)),
        ),
        IdentityRecord(
            "eq37", "generating sum with parameter nu",
            lambda p: orc.series_generating(p["nu"], p["b"], p["gamma"], p["y"], tolerance=1e-11).value,
            lambda p: cf.buchholz_sum(p["nu"], p["b"], p["gamma"], p["y"]),
            "nu in [-1.4,1.4], b in [1.5,4], gamma in [1.5,5], y in [0.2,1.5]",
            lambda r: {"nu": _u(r, -1.4, 1.4), "b": _u(r, 1.5, 4), "gamma": _u(r, 1.5, 5), "y": _u(r, 0.2, 1.5)},
        ),
        IdentityRecord(
            "eq41", "even alpha = 2m+4 Gauss sum",
            lambda p: _gauss(2.0 * p["m"] + 4.0, p),
            lambda p: cf.sum_even(p["m"], p["b"], p["gamma"], p["y"]),
            "m in 0..3, b, gamma in (m+2.3, ...), y in [0.15,1]", _box_gauss_even,
        ),
        IdentityRecord(
            "eq42", "even alpha = 2m+4 confluent sum",
            lambda p: _confluent(2.0 * p["m"] + 4.0, p),
            lambda p: cf.sum_even_confluent(p["m"], p["gamma"], p["x2"]),
            "m in 0..3, gamma in [alpha+1, alpha+3], x2 in [0.25,4]",
            lambda r: (lambda m: {"m": m, **_box_confluent(r, 2 * m + 4)})(r.randrange(4)), 1e-7,
        ),
        IdentityRecord(
            "eq14", "Laguerre form of the even confluent sum",
            lambda p: cf.sum_even_confluent(p["m"], p["gamma"], p["x2"]),
            lambda p: cf.hall_even_laguerre(p["m"], p["gamma"], p["x2"]),
            "m in 0..3, gamma in (m+2, m+7], x2 in [0.25,4]",
            lambda r: (lambda m: {"m": m, "gamma": _u(r, m + 2.05, m + 7), "x2": _u(r, 0.25, 4)})(r.randrange(4)),
            1e-10,
        ),
        IdentityRecord(
            "eq13", "alpha=2 confluent sum (Laguerre series)",
            lambda p: _confluent(2.0, p),
            lambda p: cf.toscano(p["gamma"], p["x2"]),
            "gamma in [3,5], x2 in [0.25,4]", lambda r: _box_confluent(r, 2), 1e-7,
        ),
        IdentityRecord(
            "lemma7", "alpha=1 Gauss sum",
            lambda p: _gauss(1.0, p),
            lambda p: cf.sum_half(p["b"], p["gamma"], p["y"]),
            "b in [0.6,4.5], gamma in (b, b+4], y in [0.15,0.95]", lambda r: _box_gauss_odd(r, 0),
        ),
        IdentityRecord(
            "eq44", "odd alpha = 2j+1 Gauss sum by recursion",
            lambda p: _gauss(2.0 * p["j"] + 1.0, p),
            lambda p: cf.sum_odd(p["j"], p["b"], p["gamma"], p["y"]),
            "j in 1..3, b in (j+0.6, j+4.5], gamma in (b, b+4], y in [0.15,0.95]",
            lambda r: _box_gauss_odd(r, 1 + r.randrange(3)),
        ),
        IdentityRecord(
            "eq50", "alpha=1 confluent sum",
            lambda p: _confluent(1.0, p),
            lambda p: cf.sum_half_confluent(p["gamma"], p["x2"]),
            "gamma in [2,4], x2 in [0.25,4]", lambda r: _box_confluent(r, 1), 1e-7,
        ),
        IdentityRecord(
            "eq51", "odd alpha = 2j+1 confluent sum",
            lambda p: _confluent(2.0 * p["j"] + 1.0, p),
            lambda p: cf.sum_odd_confluent(p["j"], p["gamma"], p["x2"]),
            "j in 1..3, gamma in [alpha+1, alpha+3], x2 in [0.25,4]",
            lambda r: (lambda j: {"j": j, **_box_confluent(r, 2 * j + 1)})(1 + r.randrange(3)), 1e-7,
        ),
        IdentityRecord(
            "eq65", "generating sum with non-integer lambda",
            lambda p: _generating(p).lhs,
            lambda p: _generating(p).rhs,
            "lam in (0,2.5) non-integer, a in [0.5,3], c in [0.8,4], z in [0.1,1]",
            lambda r: {"lam": _u(r, 0.05, 0.95) + r.randrange(3), "a": _u(r, 0.5, 3), "c": _u(r, 0.8, 4),
                       "z": _u(r, 0.1, 1.0)},
        ),
        IdentityRecord(
            "eq66", "2F1(1/2,1;3/2;y) as a logarithm",
            lambda p: cf.log_identity_2f1(p["y"]).lhs,
            lambda p: cf.log_identity_2f1(p["y"]).rhs,
            "y in [0.05,0.95]", lambda r: {"y": _u(r, 0.05, 0.95)}, 1e-12,
        ),
        IdentityRecord(
            "eq60", "inverse transform of s^-gamma log(s/x2) against the alpha=2 sum",
            lambda p: _confluent(2.0, p) / gamma(p["gamma"]),
            lambda p: lp.inverse_log_formula(p["gamma"], p["x2"]),
            "gamma in [3,5], x2 in [0.25,4]", lambda r: _box_confluent(r, 2), 1e-7,
        ),
        IdentityRecord(
            "eq62", "f_gamma chain against the alpha=1 confluent sum",
            lambda p: _confluent(1.0, p),
            lambda p: 2 * math.log(2) + digamma(p["gamma"]) - 2 * gamma(p["gamma"]) * lp.f_gamma(p["gamma"], math.sqrt(p["x2"])),
            "gamma in [2,4], x2 in [0.25,4]", lambda r: _box_confluent(r, 1), 1e-7,
        ),
        IdentityRecord(
            "eq64", "f_gamma(x) - f_gamma(0) against the integral of its derivative",
            _closure,
            lambda p: lp.f_gamma(p["gamma"], p["x"]) - lp.f_gamma(p["gamma"], 0.0),
            "gamma in [0.6,4], x in [0.1,2.5]",
            lambda r: {"gamma": _u(r, 0.6, 4), "x": _u(r, 0.1, 2.5)},
        ),
        IdentityRecord(
            "antideriv", "antiderivatives of 1F1(1; ., t^2): quadrature against 2F2 forms",
            lambda p: _antiderivative(p, "lhs"),
            lambda p: _antiderivative(p, "rhs"),
            "gamma in [-0.4,4], x in [0.1,2.5]",
            lambda r: {"gamma": _u(r, -0.4, 4), "x": _u(r, 0.1, 2.5)}, 1e-9,
        ),
        IdentityRecord(
            "eq26", "Gauss sum as a Beta-weighted kernel integral",
            lambda p: _gauss(p["alpha"], p),
            lambda p: orc.integral_representation(orc.SeriesParams(p["alpha"], p["b"], p["gamma"], p["y"])).value,
            "alpha in 1..6, b in [alpha/2+0.6, alpha/2+4], gamma in (b, b+4], y in [0.15,1]",
            lambda r: (lambda a: (lambda b: {"alpha": a, "b": b, "gamma": _u(r, b + 0.05, b + 4),
                                             "y": _u(r, 0.15, 1.0)})(_u(r, a / 2 + 0.6, a / 2 + 4)))(
                float(1 + r.randrange(6))),
        ),
        IdentityRecord(
            "eq21", "Gauss sum at y = 1 as a unit-argument 4F3",
            lambda p: _gauss(p["alpha"], {**p, "y": 1.0}),
            lambda p: orc.series_at_y1(p["alpha"], p["b"], p["gamma"]).value,
            "alpha in [0.5,6], b in [alpha/2+0.3, alpha/2+4], gamma in (b, b+4]",
            lambda r: (lambda a: (lambda b: {"alpha": a, "b": b, "gamma": _u(r, b + 0.05, b + 4)})(
                _u(r, a / 2 + 0.3, a / 2 + 4)))(_u(r, 0.5, 6)),
        ),
    ]
    return {r.id: r for r in recs}


REGISTRY: dict[str, IdentityRecord] = _build()

# closed-form operation -> the identity id that exercises it
OPERATIONS: dict[str, str] = {
    "closedform.gauss_kernel": "lemma1",
    "closedform.f3_kernel": "lemma2",
    "closedform.f3_kernel_complement": "lemma2",
    "closedform.luke_reduction": "lemma3",
    "closedform.sum_alpha2": "eq34",
    "closedform.buchholz_sum": "eq37",
    "closedform.sum_even": "eq41",
    "closedform.sum_even_confluent": "eq42",
    "closedform.hall_even_laguerre": "eq14",
    "closedform.toscano": "eq13",
    "closedform.sum_half": "lemma7",
    "closedform.sum_odd": "eq44",
    "closedform.sum_half_confluent": "eq50",
    "closedform.sum_odd_confluent": "eq51",
    "closedform.generating_identity_check": "eq65",
    "closedform.log_identity_2f1": "eq66",
    "laplace.inverse_log_formula": "eq60",
    "laplace.f_gamma": "eq62",
    "laplace.f_gamma_derivative": "eq64",
    "laplace.antiderivative_identities_check": "antideriv",
}


def sweep_all(samples: int, seed: int, tolerance: float | None = None) -> list[SweepReport]:
    return [run_sweep(rec, samples, seed, tolerance) for rec in REGISTRY.values()]
