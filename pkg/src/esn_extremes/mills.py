"""Mills-type envelopes for the ESN survival-to-density ratio.

For x > 0 the ratio ``(1 - Phi_{alpha,tau}(x)) / phi_{alpha,tau}(x)`` lies between
closed-form bounds that depend on the signs of alpha, of ``x_at = alpha*x + tau``
and (for alpha < 0, x_at > 0) of ``x + alpha*x_at = abar**2 * x + alpha*tau``.
At alpha = 0 the distribution is N(0, 1) whatever tau is, and the classical
normal envelope is returned.
"""

from __future__ import annotations

import dataclasses
import enum

from .core import EsnParams
from .errors import BoundaryError, DomainError
from .precision import DEFAULT_CONTEXT, PrecisionContext


class MillsCase(str, enum.Enum):
    PosAlpha_PosArg = "PosAlpha_PosArg"
    PosAlpha_NegArg = "PosAlpha_NegArg"
    NegAlpha_PosArg_PosMix = "NegAlpha_PosArg_PosMix"
    NegAlpha_PosArg_NegMix = "NegAlpha_PosArg_NegMix"
    NegAlpha_NegArg = "NegAlpha_NegArg"


class SlopeForm(str, enum.Enum):
    InverseX = "InverseX"
    InverseAffine = "InverseAffine"


@dataclasses.dataclass(frozen=True)
class MillsEnvelope:
    x: float
    case_id: MillsCase
    lower: object
    upper: object


@dataclasses.dataclass(frozen=True)
class MillsRatioAsymptote:
    slope_form: SlopeForm
    affine_scale: float
    affine_shift: float

    @classmethod
    def for_params(cls, params: EsnParams) -> MillsRatioAsymptote:
        if params.alpha >= 0:
            return cls(SlopeForm.InverseX, 1.0, 0.0)
        return cls(SlopeForm.InverseAffine, params.alpha_bar ** 2, params.alpha * params.tau)


def classify_case(params: EsnParams, x) -> MillsCase:
    if not x > 0:
        raise DomainError(f"Mills bounds need x > 0, got {x}")
    a, t = params.alpha, params.tau
    if a == 0:
        # N(0, 1) exactly; the classical envelope never divides by x_at
        return MillsCase.PosAlpha_NegArg if t < 0 else MillsCase.PosAlpha_PosArg
    x_at = a * x + t
    if x_at == 0:
        raise BoundaryError("alpha*x + tau = 0: bounds divide by zero", {"x": x, "x_at": 0.0})
    if a >= 0:
        return MillsCase.PosAlpha_PosArg if x_at > 0 else MillsCase.PosAlpha_NegArg
    if x_at < 0:
        return MillsCase.NegAlpha_NegArg
    mix = x + a * x_at
    if mix == 0:
        raise BoundaryError("x + alpha*(alpha*x + tau) = 0 separates two cases",
                            {"x": x, "x_at": x_at, "mix": 0.0})
    return MillsCase.NegAlpha_PosArg_PosMix if mix > 0 else MillsCase.NegAlpha_PosArg_NegMix


def _positive(name, value, diag):
    if not value > 0:
        raise BoundaryError(f"denominator {name} is not positive ({float(value):.6g})",
                            dict(diag, **{name: float(value)}))


def mills_bounds(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT) -> MillsEnvelope:
    """Lower and upper Mills envelopes at x, evaluated at working precision."""
    case = classify_case(params, float(x))
    mp = ctx.mp
    xm = mp.mpf(x)
    a, t = mp.mpf(params.alpha), mp.mpf(params.tau)
    abar2 = 1 + a * a
    abar = mp.sqrt(abar2)
    x_at = a * xm + t
    lin = abar2 * xm + a * t  # equals x + alpha * x_at
    phi_at = mp.npdf(x_at)
    base_lower = 1 / (xm * (1 + 1 / (xm * xm)))
    diag = {"x": float(x), "x_at": float(x_at), "case": case.value}

    if params.alpha == 0:
        # Phi(alpha x + tau) is constant, the alpha-term of the integration by parts
        # vanishes, and the envelope is the classical x^-1 (1 + x^-2)^-1 < ratio < x^-1.
        lower, upper = base_lower, 1 / xm
    elif case is MillsCase.PosAlpha_PosArg:
        den = 1 - phi_at / x_at
        _positive("1 - phi(x_at)/x_at", den, diag)
        lower, upper = base_lower, 1 / (xm * den)
    elif case is MillsCase.PosAlpha_NegArg:
        lower = base_lower
        upper = -(x_at * x_at + 1) / (x_at * phi_at) / xm
    elif case is MillsCase.NegAlpha_PosArg_PosMix:
        den_l = x_at - phi_at
        _positive("x_at - phi(x_at)", den_l, diag)
        den_u = x_at * x_at + 1 - x_at * phi_at
        lower = base_lower * (1 + a / lin * phi_at * x_at / den_l)
        upper = (1 + a * lin / (lin * lin + abar2) * phi_at * lin / den_u) / xm
    elif case is MillsCase.NegAlpha_PosArg_NegMix:
        # 1/phi(w) and 1/phi(x_at) are both huge; form each ratio in log space.
        w = abar * xm + a * t / abar
        log_inv_phi_w = w * w / 2 + mp.log(2 * mp.pi) / 2
        log_inv_phi_at = x_at * x_at / 2 + mp.log(2 * mp.pi) / 2
        den_l = 1 - mp.exp(-log_inv_phi_at) / x_at  # (1/phi(x_at) - 1/x_at) * phi(x_at)
        den_u = 1 - mp.exp(-log_inv_phi_at) * x_at / (x_at * x_at + 1)
        _positive("1/phi(x_at) - 1/x_at", den_l, diag)
        _positive("1/phi(x_at) - x_at/(x_at^2+1)", den_u, diag)
        lead = a / abar * mp.exp(log_inv_phi_w - log_inv_phi_at)  # (alpha/abar)/phi(w) * phi(x_at)
        tail_l = a * lin / (lin * lin + abar2) * mp.exp(-log_inv_phi_at)
        tail_u = a / lin * mp.exp(-log_inv_phi_at)
        lower = base_lower * (1 + (lead + tail_l) / den_l)
        upper = (1 + (lead + tail_u) / den_u) / xm
    else:
        _positive("abar^2 x + alpha tau", lin, diag)
        lower = base_lower * (1 - a * x_at / lin * (1 + 1 / (x_at * x_at)))
        upper = (1 - a * x_at / lin / (1 + abar2 / (lin * lin))) / xm
    return MillsEnvelope(float(x), case, lower, upper)


def mills_ratio_asymptote(params: EsnParams, x) -> float:
    """Large-x approximation of the Mills ratio: 1/x (alpha >= 0) or 1/(abar^2 x + alpha tau)."""
    asym = MillsRatioAsymptote.for_params(params)
    den = asym.affine_scale * x + asym.affine_shift
    if not den > 0:
        raise DomainError(f"Mills ratio denominator is not positive at x={x}: {den}")
    return 1.0 / den


def mills_ratio(params: EsnParams, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Oracle Mills ratio survival(x)/pdf(x) by quadrature."""
    from .core import log_pdf, log_survival

    mp = ctx.mp
    return mp.exp(log_survival(params, x, ctx, use_expansion=False) - log_pdf(params, x, ctx))
