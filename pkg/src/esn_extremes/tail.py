"""Von Mises representation and high-order tail expansions of the ESN survival.

The survival function is written ``c(x) * exp(-int_1^x g/f)`` with

* alpha >= 0: ``f(x) = 1/x``, ``g(x) = 1 + x**-2``;
* alpha < 0:  ``f(x) = 1/(abar^2 x + alpha tau)``,
  ``g(x) = 1 + abar^2/(abar^2 x + alpha tau)^2 + alpha/((alpha x + tau)(abar^2 x + alpha tau))``.

Both integrals have elementary antiderivatives (see :func:`integral_g_over_f`),
so the representation is evaluated exactly at any x.
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Callable

from .core import EsnParams, log_ncdf
from .errors import AccuracyError, DomainError
from .precision import DEFAULT_CONTEXT, PrecisionContext


class Branch(str, enum.Enum):
    NonNegAlpha = "NonNegAlpha"
    NegAlpha = "NegAlpha"


@dataclasses.dataclass(frozen=True)
class TailRepresentation:
    c_limit: object
    g: Callable
    f: Callable
    branch: Branch


@dataclasses.dataclass(frozen=True)
class TailExpansionResult:
    x: float
    log_survival_approx: object
    order_terms: tuple
    est_rel_error: float


def _branch(params):
    return Branch.NonNegAlpha if params.alpha >= 0 else Branch.NegAlpha


def log_c_limit(params: EsnParams, ctx: PrecisionContext = DEFAULT_CONTEXT, corrected: bool = False):
    """ln of the limiting constant c(inf) of the von Mises form.

    The alpha >= 0 constant 1/(Phi(tau/abar) sqrt(2 pi e)) relies on Phi(alpha x + tau) -> 1,
    which fails at alpha = 0 where the ESN is exactly N(0, 1). ``corrected=True`` returns
    the true limit 1/sqrt(2 pi e) there; otherwise the two variants coincide.
    """
    mp = ctx.mp
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    abar = mp.sqrt(1 + a * a)
    log_norm = log_ncdf(t / abar, mp)
    if params.alpha == 0 and corrected:
        return -mp.log(2 * mp.pi * mp.e) / 2
    if params.alpha >= 0:
        return -log_norm - mp.log(2 * mp.pi * mp.e) / 2
    params.require_regime()
    # -exp(-(1 + (a+t)^2)/2) / (2 pi Phi(t/abar) (a(a+t) + 1)(a+t)), positive under the regime
    return (-(1 + (a + t) ** 2) / 2 - mp.log(2 * mp.pi) - log_norm
            - mp.log(a * (a + t) + 1) - mp.log(-(a + t)))


def von_mises_parts(params: EsnParams, ctx: PrecisionContext = DEFAULT_CONTEXT,
                    corrected: bool = False) -> TailRepresentation:
    mp = ctx.mp
    branch = _branch(params)
    c_limit = mp.exp(log_c_limit(params, ctx, corrected))
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    if branch is Branch.NonNegAlpha:
        def f(x):
            return 1 / mp.mpf(x)

        def g(x):
            return 1 + 1 / mp.mpf(x) ** 2
    else:
        abar2 = 1 + a * a

        def f(x):
            return 1 / (abar2 * mp.mpf(x) + a * t)

        def g(x):
            x = mp.mpf(x)
            lin = abar2 * x + a * t
            return 1 + abar2 / lin ** 2 + a / ((a * x + t) * lin)
    return TailRepresentation(c_limit, g, f, branch)


def integral_g_over_f(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Closed form of int_1^x g(v)/f(v) dv.

    alpha >= 0: g/f = v + 1/v, so the integral is (x^2 - 1)/2 + ln x.
    alpha < 0:  g/f = (abar^2 v + alpha tau) + abar^2/(abar^2 v + alpha tau) + alpha/(alpha v + tau);
    the last two terms are logarithmic derivatives, giving
    abar^2 (x^2 - 1)/2 + alpha tau (x - 1) + ln((abar^2 x + alpha tau)/(abar^2 + alpha tau))
    + ln((alpha x + tau)/(alpha + tau)), with both log arguments positive under the regime.
    """
    mp = ctx.mp
    x = mp.mpf(x)
    if params.alpha >= 0:
        return (x * x - 1) / 2 + mp.log(x)
    params.require_regime()
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    abar2 = 1 + a * a
    return (abar2 * (x * x - 1) / 2 + a * t * (x - 1)
            + mp.log((abar2 * x + a * t) / (abar2 + a * t))
            + mp.log((a * x + t) / (a + t)))


def von_mises_survival(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT,
                       corrected: bool = False):
    """c_limit * exp(-int_1^x g/f), the survival with c(x) frozen at its limit."""
    if x < 1:
        raise DomainError(f"von Mises form is anchored at 1; need x >= 1, got {x}")
    mp = ctx.mp
    return mp.exp(log_c_limit(params, ctx, corrected) - integral_g_over_f(params, x, ctx))


# ---------------------------------------------------------------------------
# tail expansions

def _neg_alpha_groups(params, x, mp):
    """Terms of the alpha < 0 correction factor, grouped by nominal order in 1/x.

    Returns a list indexed by order 0..6; the sum is the full correction factor.
    """
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    x = mp.mpf(x)
    abar2 = 1 + a * a
    ta = t * a / abar2              # tau_alpha
    ta2_over_at = a * t / abar2 ** 2  # tau_alpha^2 / (alpha tau), finite at tau = 0
    xa = a * x + t
    xs = x + ta
    at = a * t
    g = [mp.zero] * 7

    # (1 - x^-2 + 3 x^-4)(1 - alpha^2 tau_a / x - alpha tau tau_a / x^2), expanded
    A1, A2 = a * a * ta, at * ta
    g[0] += 1
    g[1] += -A1 / x
    g[2] += -A2 / x ** 2 - 1 / x ** 2
    g[3] += A1 / x ** 3
    g[4] += A2 / x ** 4 + 3 / x ** 4
    g[5] += -3 * A1 / x ** 5
    g[6] += -3 * A2 / x ** 6

    # -(1 - x^-2 - 3 x_at^-2)(abar^2 / x_at^2 + alpha tau / (x x_at^2))
    g[2] += -abar2 / xa ** 2
    g[3] += -at / (x * xa ** 2)
    g[4] += abar2 / (x ** 2 * xa ** 2) + 3 * abar2 / xa ** 4
    g[5] += at / (x ** 3 * xa ** 2) + 3 * at / (x * xa ** 4)

    # (alpha x_at / abar^2) * [ ... ]
    pre = a * xa / abar2
    g[1] += pre * (at * x + 2) / x ** 3
    g[3] += pre * (-(at * x + 4) / x ** 5
                   - (at * x + 2) / (x ** 3 * xs ** 2 * abar2)
                   - (2 * at * x + 6) / (x ** 4 * xs * abar2))
    g[5] += pre * (3 * at / x ** 6
                   - ta2_over_at * (a * a - 1) / (x ** 4 * xs ** 2)
                   + 4 * ta / (x ** 5 * xs)
                   + 11 * ta2_over_at / (x ** 3 * xs ** 3)
                   + 6 * ta2_over_at / (x ** 2 * xs ** 4))
    return g


def _correction_terms(params, x, mp):
    if params.alpha >= 0:
        x = mp.mpf(x)
        return [mp.one, -1 / x ** 2, 3 / x ** 4]
    return _neg_alpha_groups(params, x, mp)


def _est_rel_error(terms, mp):
    total = mp.fsum(terms)
    last = next((v for v in reversed(terms) if v != 0), mp.zero)
    if total == 0:
        return float("inf"), total
    return float(abs(last) / abs(total)), total


def tail_expansion(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> TailExpansionResult:
    """Asymptotic log-survival at large x, with an error estimate from the last retained term.

    alpha >= 0: (2 pi e)^(-1/2) (1 - x^-2 + 3 x^-4) Phi(x_at)/Phi(tau/abar) exp(-int_1^x g/f).
    alpha < 0:  c_limit exp(-int_1^x g/f) times a correction factor 1 + O(x^-2)
    (the grouped terms of :func:`_neg_alpha_groups`).
    """
    mp = ctx.mp
    if not x > 0:
        raise DomainError(f"tail expansion needs x > 0, got {x}")
    if params.alpha < 0:
        params.require_regime()
    terms = _correction_terms(params, x, mp)
    est, total = _est_rel_error(terms, mp)
    if not est < 1 or total <= 0:
        raise AccuracyError(f"tail expansion not yet valid at x={x} (estimated relative error {est:.3g})",
                            est_rel_error=est)
    log_base = log_c_limit(params, ctx) - integral_g_over_f(params, x, ctx)
    if params.alpha >= 0:
        a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
        log_base += log_ncdf(a * mp.mpf(x) + t, mp)
    return TailExpansionResult(float(x), log_base + mp.log(total), tuple(terms), est)


def _neglected_skew(params, x, mp):
    """Relative size of the alpha * int phi(t) phi(alpha t + tau) / t term dropped for alpha > 0."""
    if params.alpha <= 0:
        return 0.0
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    x = mp.mpf(x)
    xa = a * x + t
    ratio = mp.exp(-xa * xa / 2 - mp.log(2 * mp.pi) / 2 - log_ncdf(xa, mp))
    return float(a * ratio / ((1 + a * a) * x + a * t))


# Below this x the alpha < 0 correction factor is not trusted for production use,
# whatever its own error estimate says (validated against quadrature in the tests).
NEG_ALPHA_MIN_X = 12.0


def expansion_is_accurate(params: EsnParams, x, tol) -> bool:
    """Whether log_survival may use the expansion at x for relative tolerance ``tol``."""
    x = float(x)
    if x < 1 or not params.paper_regime_ok:
        return False
    from .precision import _mp_for

    mp = _mp_for(20)
    if params.alpha < 0:
        if x < NEG_ALPHA_MIN_X:
            return False
        a = params.alpha
        xa = a * x + params.tau
        # grouped terms can cancel accidentally; bound by the generic O(x^-4) size too
        generic = (3 + 3 * (1 + a * a) / a ** 4 + (1 + a * a) / a ** 2) / x ** 4 if a != 0 else 1.0
        est, _ = _est_rel_error(_correction_terms(params, x, mp), mp)
        return max(est, generic) < tol and xa < 0
    est = 3.0 / x ** 4
    return est < tol and _neglected_skew(params, x, mp) < tol
