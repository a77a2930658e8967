import math

import numpy as np
import pytest
from scipy import stats

from esn_extremes import (
    DomainError,
    EsnParams,
    Normalization,
    RegimeError,
    ResourceError,
    closed_form_constants,
    run_maxima_experiment,
    solve_bn,
)
from esn_extremes.simulation import (
    block_maxima,
    dkw_check,
    dkw_epsilon,
    exact_max_law,
    sampler_ks_test,
    sup_distance,
)


def test_zero_replicates_is_an_error():
    with pytest.raises(DomainError):
        run_maxima_experiment(EsnParams(0, 0), 100, 0)


def test_budget():
    with pytest.raises(ResourceError):
        run_maxima_experiment(EsnParams(0, 0), 10 ** 5, 10 ** 5)
    with pytest.raises(ResourceError):
        run_maxima_experiment(EsnParams(0, 0), 100, 20, budget=1000)


def test_regime_and_block_size():
    with pytest.raises(RegimeError):
        run_maxima_experiment(EsnParams(-1, 2), 100, 10)
    with pytest.raises(DomainError):
        run_maxima_experiment(EsnParams(0, 0), 2, 10)


def test_determinism_independent_of_workers():
    p = EsnParams(1, 0.5)
    serial = block_maxima(p, 300, 40, seed=11)
    threaded = block_maxima(p, 300, 40, seed=11, workers=4)
    np.testing.assert_array_equal(serial, threaded)
    other = block_maxima(p, 300, 40, seed=12)
    assert not np.array_equal(serial, other)


def test_experiment_fields():
    p = EsnParams(0, 0)
    ex = run_maxima_experiment(p, 500, 200, "exact", seed=5)
    assert ex.normalization is Normalization.Exact
    assert 0 <= ex.ks_statistic <= 1
    assert ex.maxima.shape == ex.normalized.shape == (200,)
    np.testing.assert_allclose(ex.normalized, (ex.maxima - ex.location) / ex.scale)
    assert ex.ks_statistic == pytest.approx(stats.kstest(ex.normalized, stats.gumbel_r.cdf).statistic)
    assert ex.location == pytest.approx(float(solve_bn(p, math.log(500))[1]), rel=1e-12)
    closed = run_maxima_experiment(p, 500, 200, Normalization.ClosedForm, seed=5)
    np.testing.assert_array_equal(closed.maxima, ex.maxima)
    assert (closed.scale, closed.location) == closed_form_constants(p, math.log(500))


def test_exact_beats_closed_form_in_median():
    p = EsnParams(0, 0)
    exact = [run_maxima_experiment(p, 1000, 500, "exact", s).ks_statistic for s in range(10)]
    closed = [run_maxima_experiment(p, 1000, 500, "closed", s).ks_statistic for s in range(10)]
    assert np.median(exact) <= np.median(closed)


def test_closed_form_can_be_closer_at_feasible_n():
    """For alpha > 0 the c = 16 rate constant makes the closed-form law closer to G0 at n = 1e4."""
    p = EsnParams(1, 0)
    n = 10 ** 4
    xs = np.linspace(-3, 8, 300)
    g0 = np.exp(-np.exp(-xs))
    a, b, _ = solve_bn(p, math.log(n))
    exact = np.abs(exact_max_law(p, n, float(a), float(b), -3, 8)(xs) - g0).max()
    an, bn = closed_form_constants(p, math.log(n))
    closed = np.abs(exact_max_law(p, n, an, bn, -3, 8)(xs) - g0).max()
    assert closed < exact


def test_sup_distance_matches_scipy():
    rng = np.random.default_rng(3)
    z = rng.gumbel(size=400)
    assert sup_distance(z, stats.gumbel_r.cdf) == pytest.approx(stats.kstest(z, stats.gumbel_r.cdf).statistic,
                                                                rel=1e-12)
    with pytest.raises(DomainError):
        sup_distance([], stats.gumbel_r.cdf)


def test_dkw_epsilon():
    assert dkw_epsilon(5000) == pytest.approx(math.sqrt(math.log(200) / 10000), rel=1e-15)
    assert dkw_epsilon(5000) == pytest.approx(0.0230, abs=1e-4)


@pytest.mark.parametrize("alpha,tau", [(0, 0), (1, 1), (-1, 0)])
def test_sampler_ks(alpha, tau):
    res = sampler_ks_test(EsnParams(alpha, tau), 10 ** 4, seed=2)
    assert res.pvalue > 0.01


def test_small_blocks_inside_dkw_band():
    p = EsnParams(1, 1)
    ex = run_maxima_experiment(p, 100, 2000, "exact", seed=3)
    sup, eps = dkw_check(ex, p)
    assert sup < eps
