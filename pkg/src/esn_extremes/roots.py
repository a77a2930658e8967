"""Bracketed root finding: bisection down to a switch width, then Illinois secant."""

from __future__ import annotations

from .errors import SolverError


def expand_bracket(f, lo, hi, target_sign_lo=-1, max_expansions=60, grow=2.0):
    """Widen ``[lo, hi]`` until ``f(lo)`` and ``f(hi)`` have opposite signs.

    ``f`` is assumed increasing when ``target_sign_lo`` is -1. Returns
    ``(lo, hi, f_lo, f_hi)``.
    """
    f_lo, f_hi = f(lo), f(hi)
    width = hi - lo
    for _ in range(max_expansions):
        if f_lo * target_sign_lo > 0 and f_hi * target_sign_lo < 0:
            return lo, hi, f_lo, f_hi
        if f_lo == 0:
            return lo, lo, f_lo, f_lo
        if f_hi == 0:
            return hi, hi, f_hi, f_hi
        width = width * grow
        if f_lo * target_sign_lo <= 0:
            hi, f_hi = lo, f_lo
            lo = lo - width
            f_lo = f(lo)
        else:
            lo, f_lo = hi, f_hi
            hi = hi + width
            f_hi = f(hi)
    raise SolverError("bracket expansion failed",
                      {"lo": float(lo), "hi": float(hi), "f_lo": float(f_lo), "f_hi": float(f_hi)})


def find_root(f, lo, hi, *, f_lo=None, f_hi=None, xtol=1e-30, ftol=0.0,
              switch_width=1e-3, max_iter=400):
    """Root of ``f`` inside a sign-changing bracket ``[lo, hi]``.

    Works with any ordered number type (float or mpf). Returns ``(x, f(x), iterations)``.
    """
    f_lo = f(lo) if f_lo is None else f_lo
    f_hi = f(hi) if f_hi is None else f_hi
    if f_lo == 0:
        return lo, f_lo, 0
    if f_hi == 0:
        return hi, f_hi, 0
    if (f_lo > 0) == (f_hi > 0):
        raise SolverError("root is not bracketed",
                          {"lo": float(lo), "hi": float(hi), "f_lo": float(f_lo), "f_hi": float(f_hi)})
    it = 0
    while hi - lo > switch_width and it < max_iter:
        mid = (lo + hi) / 2
        f_mid = f(mid)
        it += 1
        if f_mid == 0 or abs(f_mid) <= ftol:
            return mid, f_mid, it
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    # Illinois variant of regula falsi: superlinear, never leaves the bracket.
    side = 0
    best = (lo, f_lo) if abs(f_lo) < abs(f_hi) else (hi, f_hi)
    while it < max_iter:
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
        if not lo < x < hi:
            x = (lo + hi) / 2
        fx = f(x)
        it += 1
        if abs(fx) < abs(best[1]):
            best = (x, fx)
        if fx == 0 or abs(fx) <= ftol or hi - lo <= xtol:
            return best[0], best[1], it
        if (fx > 0) == (f_lo > 0):
            lo, f_lo = x, fx
            if side == -1:
                f_hi = f_hi / 2
            side = -1
        else:
            hi, f_hi = x, fx
            if side == 1:
                f_lo = f_lo / 2
            side = 1
    if abs(best[1]) <= ftol or hi - lo <= xtol:
        return best[0], best[1], it
    raise SolverError("root refinement did not converge",
                      {"x": float(best[0]), "f": float(best[1]), "iterations": it})
