"""Rates of convergence of ESN maxima to the Gumbel law.

With exact constants, ``h(x) = n ln Phi(a_n x + b_n) + e^{-x}`` satisfies

    b_n^2 h -> kappa(x),    b_n^2 (b_n^2 h - kappa(x)) -> omega(x),

so ``Phi^n(a_n x + b_n) - G0(x)`` is ``G0(x) (kappa / b_n^2 + (omega + kappa^2/2) / b_n^4 + ...)``.
With the closed-form constants the error is of order ``(ln ln n)^2 / ln n`` instead.

Both second-order quantities subtract numbers that agree to many digits at
ln n ~ 1e6, so everything here runs in extended precision and is re-evaluated at
higher precision as a guard (:class:`~esn_extremes.errors.PrecisionError`).
"""

from __future__ import annotations

import dataclasses
import math
from typing import Sequence

from .constants import closed_form_constants, log_max_cdf, solve_bn
from .core import EsnParams, log_survival
from .errors import DomainError, PrecisionError
from .precision import LAB_CONTEXT, PrecisionContext

MIN_DIGITS = 30
MONITOR_EXTRA_DIGITS = 10
MONITOR_REL_TOL = 1e-6


def kappa(params: EsnParams, x) -> float:
    """First-order coefficient: (x^2 + 2x)/2 e^-x (alpha >= 0), (x^2 + 4x)/(2 abar^2) e^-x (alpha < 0)."""
    x = float(x)
    if params.alpha >= 0:
        return (x * x + 2 * x) / 2 * math.exp(-x)
    return (x * x + 4 * x) / (2 * (1 + params.alpha ** 2)) * math.exp(-x)


def omega(params: EsnParams, x, corrected: bool = False) -> float:
    """Second-order coefficient.

    alpha >= 0: -(x^4 + 4x^3 + 8x^2 + 16x)/8 e^-x.
    alpha < 0 (published): -alpha^2 (1+alpha^2)^2 / 8 * {(1+3 alpha^2) 16x + alpha^2 (x^4 + 8x^3 + 24x^2)} e^-x.

    With ``corrected=True`` the alpha < 0 prefactor is the reciprocal,
    -1/(8 alpha^2 (1+alpha^2)^2). At alpha = -1, tau = 0 the ESN survival is the
    square of the normal one, which gives -(x^4 + 8x^3 + 24x^2 + 64x)/32 e^-x
    directly; only the reciprocal prefactor reproduces it.
    """
    x = float(x)
    if params.alpha >= 0:
        return -(x ** 4 + 4 * x ** 3 + 8 * x * x + 16 * x) / 8 * math.exp(-x)
    a2 = params.alpha ** 2
    brace = (1 + 3 * a2) * 16 * x + a2 * (x ** 4 + 8 * x ** 3 + 24 * x * x)
    if corrected:
        pre = -1.0 / (8 * a2 * (1 + a2) ** 2)
    else:
        pre = -a2 * (1 + a2) ** 2 / 8
    return pre * brace * math.exp(-x)


def rate_constant(params: EsnParams) -> int:
    """c in (Phi^n(alpha_n x + beta_n) - G0) ~ G0 e^-x (ln ln n)^2 / (c ln n)."""
    return 16 if params.alpha >= 0 else 4


def _check_ctx(ctx: PrecisionContext):
    if ctx.digits < MIN_DIGITS:
        raise PrecisionError(f"rate computations need at least {MIN_DIGITS} digits, got {ctx.digits}")


@dataclasses.dataclass(frozen=True)
class _Exact:
    a_n: object
    b_n: object
    ln_n_eff: object  # -ln survival(b_n); equals ln_n up to the solver residual


def _exact(params, ln_n, ctx):
    a, b, _ = solve_bn(params, ln_n, ctx)
    return _Exact(a, b, -log_survival(params, b, ctx))


def _h_value(params, ex: _Exact, x, ctx):
    """h with n := 1/survival(b_n), so that the solver residual cancels exactly.

    n ln Phi(y) = -n S(y) * (-log1p(-S(y)) / S(y)); n S(y) = exp(ln S(y) - ln S(b_n)).
    """
    mp = ctx.mp
    x = mp.mpf(x)
    ls = log_survival(params, ex.a_n * x + ex.b_n, ctx)
    s = mp.exp(ls)
    ratio = mp.exp(ls + ex.ln_n_eff)
    correction = -mp.log1p(-s) / s if s > 0 else mp.one
    return mp.exp(-x) - ratio * correction


def h_function(params: EsnParams, x, ln_n, ctx: PrecisionContext = LAB_CONTEXT):
    """h(x; b_n) = n ln Phi(f(b_n) x + b_n) + e^-x in extended precision."""
    _check_ctx(ctx)
    return _h_value(params, _exact(params, ln_n, ctx), x, ctx)


@dataclasses.dataclass(frozen=True)
class RateProfile:
    x_grid: tuple
    ln_n: float
    b_n: float
    h: tuple
    first_order: tuple
    second_order: tuple
    kappa_theory: tuple
    omega_theory: tuple
    phi_n_minus_g0: tuple
    series_route: tuple   # b^2 (b^2 (e^h - 1) - kappa): the A.5 quantity from h
    direct_route: tuple   # b^2 (b^2 (Phi^n - G0)/G0 - kappa): the same from Phi^n directly


def _profile_values(params, x_grid, ln_n, ctx):
    mp = ctx.mp
    ex = _exact(params, ln_n, ctx)
    b2 = ex.b_n ** 2
    out = []
    for x in x_grid:
        h = _h_value(params, ex, x, ctx)
        k = mp.mpf(kappa(params, x))
        g0 = mp.exp(-mp.exp(-mp.mpf(x)))
        phin = mp.exp(log_max_cdf(params, ln_n, ex.a_n * mp.mpf(x) + ex.b_n, ctx))
        diff = phin - g0
        out.append((h, b2 * h, b2 * (b2 * h - k), diff,
                    b2 * (b2 * mp.expm1(h) - k),
                    b2 * (b2 * diff / g0 - k)))
    return ex, out


def rate_profile(params: EsnParams, x_grid: Sequence[float], ln_n, ctx: PrecisionContext = LAB_CONTEXT,
                 monitor: bool = True, corrected_omega: bool = False) -> RateProfile:
    """First- and second-order rate quantities on a grid of x at one sample size.

    With ``monitor`` the second-order columns are recomputed with 10 more digits;
    a relative change above 1e-6 raises :class:`PrecisionError`.
    """
    _check_ctx(ctx)
    if len(x_grid) == 0:
        raise DomainError("x_grid must not be empty")
    ex, vals = _profile_values(params, x_grid, ln_n, ctx)
    if monitor:
        hi_ctx = ctx.with_digits(ctx.digits + MONITOR_EXTRA_DIGITS)
        _, check = _profile_values(params, x_grid, ln_n, hi_ctx)
        for x, lo, hi in zip(x_grid, vals, check):
            for col in (2, 4, 5):
                scale = max(abs(hi[col]), abs(hi[1]) * 1e-3, hi_ctx.mp.mpf(10) ** -30)
                if abs(lo[col] - hi[col]) > MONITOR_REL_TOL * scale:
                    raise PrecisionError(
                        f"second-order rate at x={x}, ln_n={ln_n} changed by "
                        f"{float(abs(lo[col] - hi[col]) / scale):.2e} relative between {ctx.digits} "
                        f"and {hi_ctx.digits} digits; rerun with more digits")
    cols = list(zip(*vals))
    f = [tuple(float(v) for v in c) for c in cols]
    return RateProfile(
        x_grid=tuple(float(x) for x in x_grid),
        ln_n=float(ln_n),
        b_n=float(ex.b_n),
        h=f[0],
        first_order=f[1],
        second_order=f[2],
        kappa_theory=tuple(kappa(params, x) for x in x_grid),
        omega_theory=tuple(omega(params, x, corrected_omega) for x in x_grid),
        phi_n_minus_g0=f[3],
        series_route=f[4],
        direct_route=f[5],
    )


def closed_form_rate_check(params: EsnParams, x, ln_n_grid: Sequence[float],
                           ctx: PrecisionContext = LAB_CONTEXT, corrected: bool = False) -> list[float]:
    """r(ln n) = (Phi^n(alpha_n x + beta_n) - G0(x)) c ln n / (G0(x) e^-x (ln ln n)^2), which tends to 1."""
    _check_ctx(ctx)
    if params.alpha < 0:
        params.require_regime()
    mp = ctx.mp
    c = rate_constant(params)
    xm = mp.mpf(x)
    g0 = mp.exp(-mp.exp(-xm))
    out = []
    for ln_n in ln_n_grid:
        if not ln_n > math.e:
            raise DomainError(f"ln_n must exceed e, got {ln_n}")
        alpha_n, beta_n = closed_form_constants(params, ln_n, corrected)
        phin = mp.exp(log_max_cdf(params, ln_n, mp.mpf(alpha_n) * xm + mp.mpf(beta_n), ctx))
        lnln = mp.log(ln_n)
        out.append(float((phin - g0) * c * ln_n / (g0 * mp.exp(-xm) * lnln ** 2)))
    return out
