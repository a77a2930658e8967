"""Monte Carlo block maxima and goodness-of-fit diagnostics.

Each replicate draws its own child seed from ``numpy.random.SeedSequence(seed)``,
so results are identical for any number of worker threads.
"""

from __future__ import annotations

import concurrent.futures
import dataclasses
import enum
import math

import numpy as np
from scipy import interpolate, stats

from .constants import closed_form_constants, solve_bn
from .core import EsnParams, cdf_grid, draw, survival_grid
from .errors import DomainError, ResourceError
from .precision import FAST_CONTEXT, PrecisionContext

DEFAULT_BUDGET = 10 ** 9


class Normalization(str, enum.Enum):
    Exact = "exact"
    ClosedForm = "closed"


@dataclasses.dataclass(frozen=True)
class MaximaExperiment:
    block_size: int
    replicates: int
    seed: int
    normalization: Normalization
    ks_statistic: float
    maxima: np.ndarray = dataclasses.field(repr=False)
    normalized: np.ndarray = dataclasses.field(repr=False)
    scale: float = 1.0
    location: float = 0.0


def block_maxima(params: EsnParams, block_size: int, replicates: int, seed: int,
                 workers: int | None = None) -> np.ndarray:
    """Maxima of ``replicates`` independent blocks of ``block_size`` ESN draws."""
    children = np.random.SeedSequence(seed).spawn(replicates)

    def one(child):
        return draw(params, block_size, np.random.Generator(np.random.PCG64(child))).max()

    if workers is None or workers <= 1:
        return np.array([one(c) for c in children])
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(one, children)))


def _constants_for(params, block_size, normalization, ctx):
    ln_n = math.log(block_size)
    if normalization is Normalization.Exact:
        a, b, _ = solve_bn(params, ln_n, ctx)
        return float(a), float(b)
    return closed_form_constants(params, ln_n)


def run_maxima_experiment(params: EsnParams, block_size: int, replicates: int,
                          normalization: Normalization | str = Normalization.Exact, seed: int = 0, *,
                          budget: int = DEFAULT_BUDGET, workers: int | None = None,
                          ctx: PrecisionContext = FAST_CONTEXT) -> MaximaExperiment:
    """Simulate block maxima, normalize them and measure the KS distance to the Gumbel law."""
    normalization = Normalization(normalization)
    if replicates < 1:
        raise DomainError("replicates must be at least 1; the KS statistic of an empty sample is undefined")
    if block_size < 3:
        raise DomainError("block_size must be at least 3 so that ln ln n > 0")
    if block_size * replicates > budget:
        raise ResourceError(f"{block_size} x {replicates} draws exceed the budget of {budget}")
    if params.alpha < 0:
        params.require_regime()
    scale, location = _constants_for(params, block_size, normalization, ctx)
    maxima = block_maxima(params, block_size, replicates, seed, workers)
    normalized = (maxima - location) / scale
    ks = float(stats.kstest(normalized, stats.gumbel_r.cdf).statistic)
    return MaximaExperiment(block_size, replicates, int(seed), normalization, ks,
                            maxima, normalized, scale, location)


# ---------------------------------------------------------------------------
# reference laws and band checks

def cdf_interpolant(params: EsnParams, lo: float, hi: float, points: int = 2000,
                    ctx: PrecisionContext = FAST_CONTEXT):
    """Monotone cubic interpolant of the ESN cdf on [lo, hi], clipped outside."""
    xs = np.linspace(lo, hi, points)
    vals = np.array([float(v) for v in cdf_grid(params, xs, ctx)])
    spline = interpolate.PchipInterpolator(xs, vals, extrapolate=False)

    def f(x):
        x = np.clip(np.asarray(x, dtype=float), lo, hi)
        return spline(x)

    return f


def exact_max_law(params: EsnParams, block_size: int, scale: float, location: float,
                  lo: float, hi: float, points: int = 400, ctx: PrecisionContext = FAST_CONTEXT):
    """Interpolant of P((M_n - location)/scale <= x) = Phi^n(scale x + location) on [lo, hi]."""
    xs = np.linspace(lo, hi, points)
    surv = np.array([float(v) for v in survival_grid(params, scale * xs + location, ctx)])
    vals = np.exp(block_size * np.log1p(-surv))
    spline = interpolate.PchipInterpolator(xs, vals, extrapolate=False)

    def f(x):
        x = np.clip(np.asarray(x, dtype=float), lo, hi)
        return spline(x)

    return f


def sup_distance(sample, cdf) -> float:
    """Kolmogorov distance between the empirical cdf of ``sample`` and ``cdf``."""
    s = np.sort(np.asarray(sample, dtype=float))
    m = s.size
    if m == 0:
        raise DomainError("empty sample")
    f = cdf(s)
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - f), np.max(f - (i - 1) / m)))


def dkw_epsilon(m: int, level: float = 0.99) -> float:
    """Half-width of the Dvoretzky-Kiefer-Wolfowitz band at confidence ``level``."""
    return math.sqrt(math.log(2.0 / (1.0 - level)) / (2.0 * m))


def dkw_check(experiment: MaximaExperiment, params: EsnParams, level: float = 0.99,
              ctx: PrecisionContext = FAST_CONTEXT) -> tuple[float, float]:
    """(sup distance to the exact finite-n law, DKW half-width)."""
    z = experiment.normalized
    pad = 1e-9 * max(1.0, float(np.ptp(z)))
    law = exact_max_law(params, experiment.block_size, experiment.scale, experiment.location,
                        float(z.min()) - pad, float(z.max()) + pad, ctx=ctx)
    return sup_distance(z, law), dkw_epsilon(z.size, level)


def sampler_ks_test(params: EsnParams, count: int, seed: int, ctx: PrecisionContext = FAST_CONTEXT):
    """KS test of ``count`` sampler draws against the quadrature cdf; returns scipy's result."""
    from .core import sample

    x = sample(params, count, seed).values
    pad = 1e-9 * max(1.0, float(np.ptp(x)))
    f = cdf_interpolant(params, float(x.min()) - pad, float(x.max()) + pad, ctx=ctx)
    return stats.kstest(x, f)
