import math

import mpmath
import pytest

from esn_extremes import (
    DomainError,
    EsnParams,
    PrecisionContext,
    PrecisionError,
    closed_form_rate_check,
    h_function,
    kappa,
    omega,
    rate_constant,
    rate_profile,
)


def oracle_h(power, x, ln_n, dps=60):
    """(b_n, h) for survivals Q(y)**power, Q the normal tail, by mpmath alone.

    power = 1 is the ESN at alpha = 0; power = 2 is alpha = -1, tau = 0, where the
    density 2 phi(y) Q(y) integrates to Q(y)^2. The auxiliary function is 1/(power b).
    """
    with mpmath.workdps(dps):
        def log_s(y):
            return power * mpmath.log(mpmath.erfc(y / mpmath.sqrt(2)) / 2)

        big = mpmath.mpf(ln_n)
        b = mpmath.findroot(lambda y: log_s(y) + big, mpmath.sqrt(2 * big / power))
        y = x / (power * b) + b
        h = mpmath.exp(big) * mpmath.log1p(-mpmath.exp(log_s(y))) + mpmath.exp(-mpmath.mpf(x))
        return b, h


# --- theory coefficients -------------------------------------------------------

def test_kappa_examples():
    assert kappa(EsnParams(0.3, 1), 0) == 0
    assert kappa(EsnParams(1, 0), 2) == pytest.approx(4 * math.exp(-2), rel=1e-15)
    assert kappa(EsnParams(1, 0), 2) == pytest.approx(0.5413411, abs=1e-7)
    assert kappa(EsnParams(-1, 0), 2) == pytest.approx(0.4060058, abs=1e-7)


def test_omega_examples():
    for p in (EsnParams(0, 0), EsnParams(-2, 1)):
        assert omega(p, 0) == 0
    assert omega(EsnParams(0, 0), 1) == pytest.approx(-29 / (8 * math.e), rel=1e-15)
    assert omega(EsnParams(0, 0), 1) == pytest.approx(-1.3335630, abs=1e-7)
    assert omega(EsnParams(-1, 0), 1) == pytest.approx(-(4 / 8) * (64 + 33) / math.e, rel=1e-15)


def test_omega_corrected_prefactor():
    p = EsnParams(-1, 0)
    for x in (-1.0, 0.5, 2.0):
        closed = -(x ** 4 + 8 * x ** 3 + 24 * x ** 2 + 64 * x) / 32 * math.exp(-x)
        assert omega(p, x, corrected=True) == pytest.approx(closed, rel=1e-14)
    q = EsnParams(-2, 1)
    assert omega(q, 1.0, corrected=True) / omega(q, 1.0) == pytest.approx(1 / (4 * 25) ** 2)
    assert omega(EsnParams(1, 0), 1.0, corrected=True) == omega(EsnParams(1, 0), 1.0)


def test_rate_constant_selection():
    assert rate_constant(EsnParams(0.5, 0)) == 16
    assert rate_constant(EsnParams(0, 0)) == 16
    assert rate_constant(EsnParams(-0.5, -1)) == 4


# --- h ---------------------------------------------------------------------------

@pytest.mark.parametrize("power,params", [(1, EsnParams(0, 0)), (2, EsnParams(-1, 0))])
@pytest.mark.parametrize("ln_n", [1e3, 1e6])
def test_h_matches_independent_oracle(power, params, ln_n):
    _, h = oracle_h(power, 1.0, ln_n)
    assert abs(float(h_function(params, 1.0, ln_n) / h - 1)) < 1e-18


@pytest.mark.parametrize("power,params", [(1, EsnParams(0, 0)), (2, EsnParams(-1, 0))])
def test_oracle_limits(power, params):
    """The two limits, independently of the package, with the corrected alpha < 0 omega."""
    for x in (-1.0, 2.0):
        b, h = oracle_h(power, x, 1e6)
        with mpmath.workdps(60):
            first = b * b * h
            second = b * b * (first - kappa(params, x))
        assert float(first) == pytest.approx(kappa(params, x), rel=1e-3)
        assert float(second) == pytest.approx(omega(params, x, corrected=True), rel=1e-3)


def test_h_vanishes_with_n():
    p = EsnParams(1, -0.5)
    vals = [abs(float(h_function(p, 0.5, ln_n))) for ln_n in (10, 1e2, 1e3, 1e4)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-4


def test_h_at_zero_is_small_against_kappa():
    p = EsnParams(0, 0)
    grid = (-1.0, 0.0, 0.5, 1.0, 2.0)
    b2h = float(h_function(p, 0.0, 1e4)) * float(oracle_h(1, 0.0, 1e4)[0]) ** 2
    assert abs(b2h) <= 0.15 * max(abs(kappa(p, x)) for x in grid)


def test_first_order_trend_standard_normal():
    p = EsnParams(0, 0)
    gaps = []
    for ln_n in (1e3, 1e4, 1e5):
        prof = rate_profile(p, [1.0], ln_n, monitor=False)
        gaps.append(abs(prof.first_order[0] / kappa(p, 1.0) - 1))
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_precision_floor():
    low = PrecisionContext(digits=20, quad_rel_tol=1e-12)
    with pytest.raises(PrecisionError):
        h_function(EsnParams(0, 0), 1.0, 1e3, low)
    with pytest.raises(PrecisionError):
        rate_profile(EsnParams(0, 0), [1.0], 1e3, low)


# --- profiles ------------------------------------------------------------------------

def test_profile_shape_and_branch():
    p = EsnParams(-1, 0)
    xs = [-1.0, 0.5, 1.0, 2.0, 40.0]
    prof = rate_profile(p, xs, 1e4, corrected_omega=True)
    for col in (prof.h, prof.first_order, prof.second_order, prof.kappa_theory, prof.omega_theory,
                prof.phi_n_minus_g0, prof.series_route, prof.direct_route):
        assert len(col) == len(xs)
    assert prof.kappa_theory[1] == kappa(p, 0.5)
    assert prof.omega_theory[1] == omega(p, 0.5, corrected=True)
    # every quantity carries e^-x
    assert all(abs(col[-1]) < 1e-12 for col in (prof.h, prof.first_order, prof.second_order,
                                                prof.phi_n_minus_g0, prof.kappa_theory))


def test_profile_two_routes_agree():
    p = EsnParams(0, 0)
    prof = rate_profile(p, [0.5, 1.0], 1e6, monitor=False)
    for x, s, d in zip(prof.x_grid, prof.series_route, prof.direct_route):
        target = omega(p, x) + kappa(p, x) ** 2 / 2
        assert s == pytest.approx(d, rel=0.01)
        assert d == pytest.approx(target, rel=0.1)


def test_profile_rejects_empty_grid():
    with pytest.raises(DomainError):
        rate_profile(EsnParams(0, 0), [], 1e3)


# --- closed-form rate -----------------------------------------------------------------

def test_closed_form_rate_positive_alpha():
    r = closed_form_rate_check(EsnParams(1, 0), 1.0, [1e2, 1e4, 1e6])
    assert all(v > 0 for v in r)
    gaps = [abs(v - 1) for v in r]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_closed_form_rate_corrected_standard_normal():
    r = closed_form_rate_check(EsnParams(0, 0), 1.0, [1e2, 1e4, 1e6], corrected=True)
    assert all(v > 0 for v in r)
    gaps = [abs(v - 1) for v in r]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_closed_form_rate_domain():
    with pytest.raises(DomainError):
        closed_form_rate_check(EsnParams(0, 0), 1.0, [2.0])
