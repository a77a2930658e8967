"""The standardized extended skew-normal distribution ESN(alpha, tau).

Density ``phi(x) * Phi(alpha*x + tau) / Phi(tau / sqrt(1 + alpha**2))``.
Distribution functions are computed by adaptive quadrature in extended
precision and serve as the oracle for everything else in the package.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy import special

from .errors import DomainError, QuadratureError, RegimeError, RejectedParametersError
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .quadrature import integrate, integrate_ray
from .roots import expand_bracket, find_root


@dataclasses.dataclass(frozen=True)
class EsnParams:
    alpha: float
    tau: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.tau)):
            raise DomainError(f"alpha and tau must be finite, got ({self.alpha}, {self.tau})")

    @property
    def alpha_bar(self) -> float:
        return math.sqrt(1.0 + self.alpha * self.alpha)

    @property
    def paper_regime_ok(self) -> bool:
        """Standing assumption of the alpha < 0 tail results (always true for alpha >= 0)."""
        if self.alpha >= 0:
            return True
        a, t = self.alpha, self.tau
        return (1.0 + a * a + a * t > 0) and (a + t < 0)

    def require_regime(self) -> None:
        if not self.paper_regime_ok:
            raise RegimeError(
                f"alpha={self.alpha}, tau={self.tau}: the alpha < 0 results assume "
                "alpha + tau < 0 and 1 + alpha^2 + alpha*tau > 0")


@dataclasses.dataclass(frozen=True)
class EsnSample:
    values: np.ndarray
    seed: int
    params: EsnParams


# ---------------------------------------------------------------------------
# log-space building blocks (mpmath numbers in, mpmath numbers out)

def log_ncdf(z, mp):
    return mp.log(mp.ncdf(z))


def log_npdf(z, mp):
    return -z * z / 2 - mp.log(2 * mp.pi) / 2


def _mills_inverse(z, mp):
    """phi(z) / Phi(z), stable for very negative z."""
    return mp.exp(log_npdf(z, mp) - log_ncdf(z, mp))


def _log_norm_const(params, mp):
    return log_ncdf(mp.mpf(params.tau) / mp.sqrt(1 + mp.mpf(params.alpha) ** 2), mp)


def _check_x(x):
    try:
        finite = math.isfinite(float(x))
    except OverflowError:  # mpf beyond the double range
        finite = False
    if not finite:
        raise DomainError(f"x must be finite, got {x}")


def log_pdf(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    _check_x(x)
    mp = ctx.mp
    x = mp.mpf(x)
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    return log_npdf(x, mp) + log_ncdf(a * x + t, mp) - _log_norm_const(params, mp)


def pdf(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    return ctx.mp.exp(log_pdf(params, x, ctx))


def _dlog_pdf(params, x, mp):
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    return -x + a * _mills_inverse(a * x + t, mp)


def mean(params: EsnParams, ctx: PrecisionContext = DEFAULT_CONTEXT):
    mp = ctx.mp
    abar = mp.sqrt(1 + mp.mpf(params.alpha) ** 2)
    return mp.mpf(params.alpha) / abar * _mills_inverse(mp.mpf(params.tau) / abar, mp)


def _kernel(params, mp, log_ref):
    """pdf(t) / exp(log_ref) as a closure over mpmath numbers."""
    a, t0 = mp.mpf(params.alpha), mp.mpf(params.tau)
    shift = log_ref + mp.log(2 * mp.pi) / 2 + _log_norm_const(params, mp)

    def k(t):
        return mp.exp(-t * t / 2 + log_ncdf(a * t + t0, mp) - shift)

    return k


def _log_ray(params, x, direction, ctx, use_abs_tol):
    """log of the integral of the pdf from x towards direction*inf."""
    mp = ctx.mp
    x = mp.mpf(x)
    lp = log_pdf(params, x, ctx)
    slope = -direction * _dlog_pdf(params, x, mp)
    scale = 1 / max(mp.one, slope)
    abs_tol = 0.0
    if use_abs_tol:
        # absolute tolerance on the probability, expressed on the rescaled integrand
        abs_tol = ctx.quad_abs_tol / 10 * mp.exp(-lp)
    res = integrate_ray(_kernel(params, mp, lp), x, direction, scale, mp,
                        ctx.quad_rel_tol / 10, abs_tol, ctx.max_subdivisions)
    if res.value <= 0:
        raise QuadratureError("non-positive tail integral", res.value, res.error)
    return lp + mp.log(res.value)


def _finite_integral(params, lo, hi, ctx, use_abs_tol=True):
    mp = ctx.mp
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    if lo == hi:
        return mp.zero
    k = _kernel(params, mp, mp.zero)
    n_panels = max(1, int(mp.ceil(hi - lo)))
    pts = [lo + (hi - lo) * i / n_panels for i in range(n_panels + 1)]
    abs_tol = ctx.quad_abs_tol / 10 if use_abs_tol else 0.0
    return integrate(k, pts, mp, ctx.quad_rel_tol / 10, abs_tol, ctx.max_subdivisions).value


def survival(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """P(X > x) by direct quadrature over (x, inf); never formed as 1 - cdf."""
    _check_x(x)
    mp = ctx.mp
    c = mean(params, ctx)
    x = mp.mpf(x)
    if x >= c:
        return mp.exp(_log_ray(params, x, 1, ctx, True))
    return _finite_integral(params, x, c, ctx) + mp.exp(_log_ray(params, c, 1, ctx, True))


def cdf(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """P(X <= x) by adaptive quadrature of the density."""
    _check_x(x)
    mp = ctx.mp
    c = mean(params, ctx)
    x = mp.mpf(x)
    if x <= c:
        return mp.exp(_log_ray(params, x, -1, ctx, True))
    return mp.exp(_log_ray(params, c, -1, ctx, True)) + _finite_integral(params, c, x, ctx)


def log_survival(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT,
                 use_expansion: bool = True):
    """ln P(X > x), switching to the asymptotic tail expansion far out.

    The expansion is used only where its estimated relative error is below
    ``ctx.quad_rel_tol``; otherwise (or with ``use_expansion=False``) the tail
    is integrated in log space.
    """
    _check_x(x)
    from .tail import expansion_is_accurate, tail_expansion

    mp = ctx.mp
    if use_expansion and expansion_is_accurate(params, x, ctx.quad_rel_tol):
        return mp.mpf(tail_expansion(params, x, ctx).log_survival_approx)
    c = mean(params, ctx)
    xm = mp.mpf(x)
    if xm >= c:
        return _log_ray(params, xm, 1, ctx, False)
    return mp.log(_finite_integral(params, xm, c, ctx, False) + mp.exp(_log_ray(params, c, 1, ctx, False)))


def log_cdf(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """ln P(X <= x); uses log1p of the survival in the upper tail."""
    _check_x(x)
    mp = ctx.mp
    c = mean(params, ctx)
    xm = mp.mpf(x)
    if xm <= c:
        return _log_ray(params, xm, -1, ctx, False)
    return mp.log1p(-mp.exp(log_survival(params, xm, ctx)))


def quantile(params: EsnParams, p, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Solve cdf(x) = p by bracketing plus bisection/secant refinement."""
    if not 0.0 < float(p) < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p}")
    mp = ctx.mp
    p = mp.mpf(p)
    if p <= 0.5:
        def g(x):
            return cdf(params, x, ctx) - p
    else:
        q = 1 - p

        def g(x):
            return q - survival(params, x, ctx)
    c = mean(params, ctx)
    lo, hi, f_lo, f_hi = expand_bracket(g, c - 2, c + 2)
    tol = mp.mpf(ctx.quad_abs_tol)
    x, _, _ = find_root(g, lo, hi, f_lo=f_lo, f_hi=f_hi, ftol=tol,
                        xtol=mp.mpf(10) ** (-(ctx.digits - 4)))
    return x


def cdf_grid(params: EsnParams, xs, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """cdf on an increasing grid by accumulating panel integrals from the left."""
    return _accumulate(params, xs, ctx, cdf, left=True)


def survival_grid(params: EsnParams, xs, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """survival on an increasing grid by accumulating panel integrals from the right."""
    return _accumulate(params, xs, ctx, survival, left=False)


def _accumulate(params, xs, ctx, anchor, left):
    mp = ctx.mp
    xs = [mp.mpf(v) for v in xs]
    if any(b <= a for a, b in zip(xs[:-1], xs[1:])):
        raise DomainError("grid must be strictly increasing")
    k = _kernel(params, mp, mp.zero)
    order = 10
    out = [None] * len(xs)
    idx = range(len(xs)) if left else range(len(xs) - 1, -1, -1)
    prev = None
    for i in idx:
        if prev is None:
            out[i] = anchor(params, xs[i], ctx)
        else:
            lo, hi = (xs[prev], xs[i]) if left else (xs[i], xs[prev])
            piece = integrate(k, [lo, hi], mp, ctx.quad_rel_tol / 10, 0.0,
                              ctx.max_subdivisions, order).value
            out[i] = out[prev] + piece
        prev = i
    return out


# ---------------------------------------------------------------------------
# closed-form CDF through the bivariate normal (double precision)

def _bvn_upper_owen(h, k, rho):
    """P(Z1 <= h, Z2 <= k) for standard bivariate normal, via Owen's T."""
    h = np.asarray(h, dtype=float)
    k = np.broadcast_to(np.asarray(k, dtype=float), h.shape)
    s = math.sqrt(1.0 - rho * rho)
    out = np.empty(h.shape)
    for idx in np.ndindex(h.shape):
        hh, kk = float(h[idx]), float(k[idx])
        if hh == 0.0 and kk == 0.0:
            out[idx] = 0.25 + math.asin(rho) / (2 * math.pi)
            continue
        if hh == 0.0:
            hh = 1e-300 if kk > 0 else -1e-300
        if kk == 0.0:
            kk = 1e-300 if hh > 0 else -1e-300
        t1 = special.owens_t(hh, (kk - rho * hh) / (hh * s))
        t2 = special.owens_t(kk, (hh - rho * kk) / (kk * s))
        corr = 0.5 if hh * kk < 0 else 0.0
        out[idx] = 0.5 * special.ndtr(hh) + 0.5 * special.ndtr(kk) - t1 - t2 - corr
    return out


def cdf_bivariate(params: EsnParams, x):
    """ESN cdf as Phi_2(x, tau/abar; -alpha/abar) / Phi(tau/abar), in double precision.

    Independent second route to the cdf; validated against the quadrature cdf.
    """
    abar = params.alpha_bar
    k = params.tau / abar
    rho = -params.alpha / abar
    return _bvn_upper_owen(x, k, rho) / special.ndtr(k)


# ---------------------------------------------------------------------------
# sampling

ACCEPTANCE_FLOOR = 1e-4


def sample(params: EsnParams, count: int, seed: int, acceptance_floor: float = ACCEPTANCE_FLOOR) -> EsnSample:
    """Rejection sampling: propose Z ~ N(0, 1), accept with probability Phi(alpha*Z + tau)."""
    if count < 0:
        raise DomainError("count must be >= 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    return EsnSample(draw(params, count, rng, acceptance_floor), int(seed), params)


def draw(params: EsnParams, count: int, rng: np.random.Generator,
         acceptance_floor: float = ACCEPTANCE_FLOOR) -> np.ndarray:
    accept = float(special.ndtr(params.tau / params.alpha_bar))
    if accept < acceptance_floor:
        raise RejectedParametersError(
            f"expected acceptance {accept:.3g} is below the floor {acceptance_floor:g}")
    out = np.empty(count)
    filled = 0
    while filled < count:
        need = count - filled
        batch = int(need / accept * 1.1) + 64
        z = rng.standard_normal(batch)
        keep = z[rng.random(batch) < special.ndtr(params.alpha * z + params.tau)]
        take = min(need, keep.size)
        out[filled:filled + take] = keep[:take]
        filled += take
    return out
