import math
import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rel
from pertsums import closedform as cf
from pertsums.errors import ContinuationWarning, ConvergenceError, DomainError
from pertsums.oracle import (
    SeriesParams,
    confluent_limit_probe,
    euler_2f1,
    integral_representation,
    series_at_y0,
    series_at_y0_direct,
    series_at_y1,
    series_confluent,
    series_confluent_abel,
    series_gauss,
    series_generating,
)
from pertsums.specfun import Status, combined_error, digamma, gamma_ratio, hyp

# References from mpmath at 30 digits, using the generating-function integral
#   S = int_0^inf [(1+s)^h 2F1(h, b; gamma; -y s) - 1] / (s (1+s)) ds,  h = alpha/2
# (and 1F1(h; gamma; -x2 s) for the confluent series).
MP_GAUSS = {
    (1.0, 2.0, 3.0, 0.25): 0.716914271031488744841524373514,
    (8.0, 5.5, 7.0, 0.6): 8.51002415890116726563966892516,
    (7.0, 5.5, 7.0, 0.7): 4.05974925501144467017608342891,
    (5.0, 4.0, 5.0, 0.6): 2.92003762727844062774634913862,
    (1.0, 1.5, 3.0, 1.0): 0.364514671571618558612209536412,
}
MP_CONFLUENT = {
    (1.0, 1.5, 0.81): 0.178123993014341927563335015575,
    (4.0, 2.5, 0.49): 3.47773101831862638601202794787,
    (1.0, 1.5, 1.0): 0.0772384539986603884179164671308,
    (1.0, 2.5, 4.0): -0.34009546143683410922202523544,
    (3.0, 1.75, 0.36): 1.9572834924453033580678917645,
    (2.0, 1.5, 0.64): 0.482777076606996011274932135899,
    (8.0, 5.5, 1.44): 10.7313957011461061675434265628,
}


def test_params_validation():
    with pytest.raises(DomainError, match="gamma > alpha/2"):
        SeriesParams(4.0, 1.0, 1.5, 0.5).validate()
    with pytest.raises(DomainError):
        SeriesParams(1.0, 1.0, 2.0, 0.0).validate()
    with pytest.raises(DomainError):
        SeriesParams(1.0, None, 2.0, math.nan).validate()
    assert SeriesParams(1.0, None, 2.0, 1.0).is_confluent


def test_series_gauss_telescoping_example():
    res = series_gauss(SeriesParams(2.0, 1.7, 1.7, 0.5))
    assert res.value == pytest.approx(-math.log(0.5), rel=1e-12)


def test_series_gauss_alpha2_example():
    res = series_gauss(SeriesParams(2.0, 2.0, 3.0, 0.5))
    assert res.value == pytest.approx(0.5 + math.log(2.0), rel=1e-12)
    assert res.abs_error_estimate < 1e-10


@pytest.mark.parametrize("key", sorted(MP_GAUSS))
def test_series_gauss_against_mpmath(key):
    res = series_gauss(SeriesParams(*key))
    assert rel(res.value, MP_GAUSS[key]) < 1e-12


@given(st.floats(0.1, 0.9))
def test_telescoping_identity(y):
    assert series_gauss(SeriesParams(2.0, 2.3, 2.3, y)).value == pytest.approx(-math.log(y), rel=1e-10)


def test_series_gauss_refuses_divergent_region():
    with pytest.raises(DomainError):
        series_gauss(SeriesParams(2.0, 2.0, 3.0, 2.5))
    with pytest.raises(DomainError):
        series_gauss(SeriesParams(1.0, None, 3.0, 0.5))
    with pytest.raises(ConvergenceError):
        series_gauss(SeriesParams(1.0, 2.0, 3.0, 0.25), tolerance=1e-18, max_n=2000)


def test_series_confluent_examples():
    psi3 = digamma(3.0)
    assert series_confluent(2.0, 3.0, 1.0, tolerance=1e-9, max_n=1_000_000).value == pytest.approx(psi3, rel=1e-8)
    # p = 7/4 + gamma/2 - alpha/2 = 5/4 here: the direct series crawls, so only its
    # error estimate is checked against the exact value
    with pytest.raises(ConvergenceError) as info:
        series_confluent(4.0, 3.0, 1.0, tolerance=1e-8, max_n=200_000)
    partial = info.value.result
    assert abs(partial.value - (psi3 + 1.0)) <= partial.abs_error_estimate


def _direct(key, tolerance, max_n):
    try:
        return series_confluent(*key, tolerance=tolerance, max_n=max_n)
    except ConvergenceError as exc:
        return exc.result


@pytest.mark.parametrize("key", [(1.0, 1.5, 0.81), (4.0, 2.5, 0.49), (1.0, 1.5, 1.0), (3.0, 1.75, 0.36),
                                 (2.0, 1.5, 0.64), (1.0, 2.5, 4.0)])
@pytest.mark.parametrize("max_n", [20_000, 200_000])
def test_series_confluent_error_estimate_is_honest(key, max_n):
    res = _direct(key, 1e-10, max_n)
    assert abs(res.value - MP_CONFLUENT[key]) <= res.abs_error_estimate


@pytest.mark.parametrize("key", [(1.0, 1.5, 0.81), (1.0, 1.5, 1.0), (1.0, 2.5, 4.0)])
def test_series_confluent_converges_where_decay_is_fast(key):
    res = series_confluent(*key, tolerance=1e-9, max_n=1_000_000)
    assert res.status is Status.TAIL_BOUNDED
    assert rel(res.value, MP_CONFLUENT[key]) < 1e-9


@given(st.sampled_from([1.0, 2.0, 3.0, 4.0]), st.floats(1.0, 3.0), st.floats(0.25, 4.0))
def test_series_confluent_agrees_with_abel(alpha, dg, x2):
    g = alpha + dg
    res = series_confluent(alpha, g, x2, tolerance=1e-9, max_n=2_000_000)
    ref = series_confluent_abel(alpha, g, x2).value
    assert abs(res.value - ref) <= max(res.abs_error_estimate, 1e-12)
    assert rel(res.value, ref) < 1e-8


def test_series_confluent_cancellation_diagnostics():
    res = series_confluent(1.0, 2.5, 4.0, tolerance=1e-9, max_n=40_000)
    assert rel(res.value, MP_CONFLUENT[(1.0, 2.5, 4.0)]) < 1e-8
    # explicit summation of 1F1(-n; 2.5; 4) at this depth would lose hundreds of digits
    assert res.diagnostics["cancellation_log10"] > 6
    assert res.diagnostics["CancellationWarning"] is True


def test_series_confluent_failure_keeps_partial_result():
    # terms decay like n^(-3/4 - ...) here: far too slow for 2000 terms
    with pytest.raises(ConvergenceError) as info:
        series_confluent(8.0, 5.5, 1.44, tolerance=1e-10, max_n=2000)
    assert info.value.result is not None
    assert info.value.result.status is Status.FAILED_TO_CONVERGE


@pytest.mark.parametrize("key", sorted(MP_CONFLUENT))
def test_abel_pathway_against_mpmath(key):
    assert rel(series_confluent_abel(*key).value, MP_CONFLUENT[key]) < 1e-13


def test_series_at_y0():
    assert series_at_y0(1.0) == pytest.approx(2.0 * math.log(2.0), rel=1e-15)
    assert series_at_y0(1e-12) == pytest.approx(0.0, abs=1e-11)
    for a in (0.5, 1.0, 1.5):
        assert abs(series_at_y0_direct(a).value - series_at_y0(a)) < 1e-10
    with pytest.raises(DomainError):
        series_at_y0(2.0)
    with pytest.raises(DomainError):
        series_at_y0_direct(2.5)


def test_series_at_y1_examples():
    assert series_at_y1(1.3, 2.2, 2.2).value == 0.0
    assert series_at_y1(2.0, 2.0, 3.0).value == pytest.approx(0.5, rel=1e-12)
    assert rel(series_at_y1(1.0, 1.5, 3.0).value, MP_GAUSS[(1.0, 1.5, 3.0, 1.0)]) < 1e-12
    with pytest.raises(DomainError):
        series_at_y1(8.0, 2.0, 5.0)


@given(st.floats(0.5, 5.0), st.floats(0.3, 4.0), st.floats(0.05, 4.0))
def test_boundary_continuity(alpha, db, dg):
    b = 0.5 * alpha + db
    g = b + dg
    lhs = series_gauss(SeriesParams(alpha, b, g, 1.0), tolerance=1e-12, max_n=200_000)
    rhs = series_at_y1(alpha, b, g)
    assert abs(lhs.value - rhs.value) <= combined_error(lhs, rhs) + 1e-12 * abs(rhs.value)


def test_integral_representation_examples():
    p = SeriesParams(2.0, 2.0, 4.0, 0.5)
    assert rel(integral_representation(p).value, series_gauss(p).value) < 1e-12
    at1 = integral_representation(SeriesParams(2.0, 2.0, 4.0, 1.0)).value
    assert at1 == pytest.approx(digamma(4.0) - digamma(2.0), rel=1e-12)
    with pytest.raises(DomainError):
        integral_representation(SeriesParams(2.0, 2.0, 4.0, 2.5))
    with pytest.raises(DomainError):
        integral_representation(SeriesParams(2.0, 4.0, 3.0, 0.5))


def test_oracle_self_consistency_grid():
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(200):
        alpha = float(rng.randint(1, 6))
        b = rng.uniform(alpha / 2 + 0.6, alpha / 2 + 4)
        g = rng.uniform(b + 1e-3, b + 4)
        y = rng.uniform(0.15, 1.0)
        p = SeriesParams(alpha, b, g, y)
        worst = max(worst, rel(series_gauss(p).value, integral_representation(p).value))
    assert worst < 1e-8


def test_euler_2f1_examples():
    assert euler_2f1(0, 1.3, 3.7, 0.4) == pytest.approx(1.0, rel=1e-12)
    assert euler_2f1(1, 1.0, 2.0, 0.5) == pytest.approx(0.75, rel=1e-12)
    assert euler_2f1(6, 1.3, 3.7, 0.9) == pytest.approx(hyp((-6.0, 1.3), (3.7,), 0.9), rel=1e-10)
    with pytest.raises(DomainError):
        euler_2f1(2, 3.0, 2.0, 0.5)


@given(st.integers(0, 12), st.floats(0.2, 4.0), st.floats(0.2, 4.0), st.floats(0.05, 1.5))
def test_euler_2f1_matches_terminating_series(n, b, dg, y):
    ref = hyp((-float(n), b), (b + dg,), y)
    assert abs(euler_2f1(n, b, b + dg, y) - ref) <= 1e-10 * max(1.0, abs(ref))


def test_confluent_limit_probe():
    assert confluent_limit_probe(0, 2.5, 1.0, [10.0, 100.0]) == [0.0, 0.0]
    devs = confluent_limit_probe(3, 2.5, 1.0, [10.0, 100.0, 1000.0])
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] * 1000.0 < 2.0 * devs[1] * 100.0  # O(1/b)
    # n = 1: 2F1(-1, b; g; x2/b) - 1F1(-1; g; x2) = 0 exactly up to rounding
    assert confluent_limit_probe(1, 1.7, 0.8, [5.0, 50.0])[1] < 1e-15
    with pytest.raises(DomainError):
        confluent_limit_probe(2, 2.0, 1.0, [10.0, 5.0])


@pytest.mark.parametrize("alpha, closed", [
    (1.0, cf.sum_half),
    (2.0, cf.sum_alpha2),
    (3.0, lambda b, g, y: cf.sum_odd(1, b, g, y)),
])
@pytest.mark.parametrize("x2", [0.25, 1.0, 2.25])
def test_confluent_limit_consistency(alpha, closed, x2):
    g = alpha / 2 + 1
    b = 1e4
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ContinuationWarning)
        gauss = closed(b, g, x2 / b)
    conf = series_confluent(alpha, g, x2, tolerance=1e-6, max_n=400_000)
    assert rel(gauss, conf.value) < 5e-4


def test_series_generating_finite_and_infinite():
    # lam = 2 terminates: sum_{n<=2} (-2)_n/n! 2F1(-n, a; c; z)
    a, c, z = 1.3, 2.9, 0.6
    expect = 1 - 2 * hyp((-1.0, a), (c,), z) + hyp((-2.0, a), (c,), z)
    res = series_generating(2.0, a, c, z)
    assert res.status is Status.TERMINATED
    assert res.value == pytest.approx(expect, rel=1e-14)
    inf = series_generating(0.3, 1.2, 2.4, 0.7, tolerance=1e-12)
    expect = gamma_ratio(1.5, 1.2) * gamma_ratio(2.4, 2.7) * 0.7**0.3
    assert inf.value == pytest.approx(expect, rel=1e-11)
