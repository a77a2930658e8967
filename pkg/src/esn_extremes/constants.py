"""Normalizing constants for the Gumbel limit of ESN maxima.

The sample size enters only through ``ln_n``, so n may be astronomically large
(ln_n = 1e6 is routine) without ever being formed.

Two pairs are provided:

* exact ``(a_n, b_n)``: ``b_n`` solves ``ln survival(b_n) = -ln_n`` and ``a_n = f(b_n)``;
* closed-form ``(alpha_n, beta_n)`` from explicit expansions in ``ln n``.
"""

from __future__ import annotations

import dataclasses
import math

from .core import EsnParams, log_cdf, log_survival
from .errors import DomainError
from .precision import DEFAULT_CONTEXT, PrecisionContext
from .roots import expand_bracket, find_root
from .tail import von_mises_parts

_LN_2_SQRT_PI = math.log(2.0 * math.sqrt(math.pi))


@dataclasses.dataclass(frozen=True)
class LogSampleSize:
    ln_n: float

    def __post_init__(self):
        if not float(self.ln_n) > 1:
            raise DomainError(f"ln_n must exceed 1 so that ln ln n > 0, got {self.ln_n}")


@dataclasses.dataclass(frozen=True)
class NormalizingConstants:
    a_n: object
    b_n: object
    alpha_n: float
    beta_n: float
    ln_n: float
    residual: object = None

    @property
    def scale_ratio(self) -> float:
        """a_n / alpha_n, which tends to 1."""
        return float(self.a_n) / self.alpha_n

    @property
    def location_gap(self) -> float:
        """(beta_n - b_n) / a_n, which tends to 0."""
        return (self.beta_n - float(self.b_n)) / float(self.a_n)


@dataclasses.dataclass(frozen=True)
class GumbelValue:
    x: float
    g0: float


def gumbel_cdf(x) -> GumbelValue:
    x = float(x)
    if math.isnan(x):
        raise DomainError("x must not be NaN")
    return GumbelValue(x, math.exp(-math.exp(-x)))


def closed_form_constants(params: EsnParams, ln_n, corrected: bool = False) -> tuple[float, float]:
    """Explicit (alpha_n, beta_n).

    The default evaluates the published expressions:

    * alpha >= 0: l = sqrt(2 ln n), alpha_n = 1/l,
      beta_n = l - (ln(2 sqrt(pi)) + ln ln n / 2 + ln Phi(tau/abar)) / l;
    * alpha < 0: l = sqrt(2 ln n (1 + alpha^2)), alpha_n = 1/l,
      beta_n = l - (2 ln(2 sqrt(pi)|alpha|) + ln ln n + ln Phi(tau/abar) - tau^2/2) / (2 l) - alpha tau/abar^2.

    ``corrected=True`` returns constants that are compatible with (a_n, b_n):

    * alpha = 0 uses the classical normal pair (the ESN is exactly N(0, 1) there,
      so the ln Phi term must vanish);
    * alpha < 0 uses the location L = sqrt(2 ln n)/abar obtained by solving
      n phi(x) phi(alpha x + tau) / (Phi(tau/abar) (abar^2 x + alpha tau) |alpha x + tau|) = 1:
      alpha_n = 1/(abar^2 L) and
      beta_n = L - (ln(4 pi |alpha|) + ln ln n + ln Phi(tau/abar) + tau^2/(2 abar^2)) / (abar^2 L)
      - alpha tau/abar^2 + tau/(2 |alpha| abar^2 ln n).
    """
    ln_n = LogSampleSize(float(ln_n)).ln_n
    a, t = float(params.alpha), float(params.tau)
    abar2 = 1.0 + a * a
    abar = math.sqrt(abar2)
    lnln = math.log(ln_n)
    log_norm = _log_ndtr(t / abar)
    if a >= 0:
        ell = math.sqrt(2.0 * ln_n)
        shift = _LN_2_SQRT_PI + 0.5 * lnln
        if not (corrected and a == 0):
            shift += log_norm
        return 1.0 / ell, ell - shift / ell
    if corrected:
        big_l = math.sqrt(2.0 * ln_n) / abar
        shift = math.log(4.0 * math.pi * abs(a)) + lnln + log_norm + t * t / (2.0 * abar2)
        # |alpha x + tau| = (|alpha|/abar)(u - tau/(|alpha| abar)) with u = abar x + alpha tau/abar;
        # its 1/u part moves the root by tau/(2 |alpha| abar^2 ln n), which is O(1/sqrt(ln n))
        # in units of alpha_n and so larger than the (ln ln n)^2/ln n rate itself.
        skew = t / (2.0 * abs(a) * abar2 * ln_n)
        return 1.0 / (abar2 * big_l), big_l - shift / (abar2 * big_l) - a * t / abar2 + skew
    ell = math.sqrt(2.0 * ln_n * abar2)
    shift = 2.0 * math.log(2.0 * math.sqrt(math.pi) * abs(a)) + lnln + log_norm - t * t / 2.0
    return 1.0 / ell, ell - shift / (2.0 * ell) - a * t / abar2


def _log_ndtr(z: float) -> float:
    from scipy.special import log_ndtr

    return float(log_ndtr(z))


def solve_bn(params: EsnParams, ln_n, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Exact constants: b_n with ln survival(b_n) = -ln_n, and a_n = f(b_n).

    Returns ``(a_n, b_n, residual)`` as working-precision numbers. The bracket
    starts at beta_n +- 3 alpha_n (compatible closed form) and is widened if needed.
    """
    ln_n = LogSampleSize(float(ln_n)).ln_n
    if params.alpha < 0:
        params.require_regime()
    mp = ctx.mp
    target = mp.mpf(ln_n)

    def resid(b):
        return -(log_survival(params, b, ctx) + target)  # increasing in b

    alpha_n, beta_n = closed_form_constants(params, ln_n, corrected=True)
    lo, hi = mp.mpf(beta_n - 3 * alpha_n), mp.mpf(beta_n + 3 * alpha_n)
    lo, hi, f_lo, f_hi = expand_bracket(resid, lo, hi)
    ftol = mp.mpf(min(1e-10, 10 * ctx.quad_rel_tol))
    xtol = mp.mpf(10) ** (-(ctx.digits - 4)) * max(1, abs(hi))
    b, fb, _ = find_root(resid, lo, hi, f_lo=f_lo, f_hi=f_hi, ftol=ftol, xtol=xtol)
    a = von_mises_parts(params, ctx).f(b)
    return a, b, fb


def normalizing_constants(params: EsnParams, ln_n, ctx: PrecisionContext = DEFAULT_CONTEXT,
                          corrected: bool = False) -> NormalizingConstants:
    """Both constant pairs at one sample size."""
    a_n, b_n, residual = solve_bn(params, ln_n, ctx)
    alpha_n, beta_n = closed_form_constants(params, ln_n, corrected)
    return NormalizingConstants(a_n, b_n, alpha_n, beta_n, float(ln_n), residual)


def log_max_cdf(params: EsnParams, ln_n, y, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """ln P(max of n draws <= y) = n ln Phi(y), with n = exp(ln_n)."""
    mp = ctx.mp
    ls = log_survival(params, y, ctx)
    if ls < -mp.log(2):
        log_phi = mp.log1p(-mp.exp(ls))
    else:
        log_phi = log_cdf(params, y, ctx)
    return mp.exp(mp.mpf(ln_n)) * log_phi


def max_cdf(params: EsnParams, constants: NormalizingConstants, x, use_closed_form: bool = False,
            ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Phi^n(s x + m) with (s, m) the exact or closed-form constants."""
    if params.alpha < 0:
        params.require_regime()
    mp = ctx.mp
    if mp.isinf(mp.mpf(x)):
        return mp.one if x > 0 else mp.zero
    if use_closed_form:
        s, m = mp.mpf(constants.alpha_n), mp.mpf(constants.beta_n)
    else:
        s, m = mp.mpf(constants.a_n), mp.mpf(constants.b_n)
    return mp.exp(log_max_cdf(params, constants.ln_n, s * mp.mpf(x) + m, ctx))
