"""Adaptive Gauss-Legendre panel quadrature at arbitrary working precision.

Each panel is integrated with an embedded pair of Gauss-Legendre rules
(``n`` and ``2n`` nodes); the higher-order value is kept and the difference
is a conservative error estimate. Panels with the largest estimated error are
bisected until the global tolerance is met, as in QUADPACK's QAG.
"""

from __future__ import annotations

import dataclasses
import functools
import heapq

from .errors import QuadratureError
from .precision import _mp_for


@dataclasses.dataclass(frozen=True)
class QuadResult:
    value: object
    error: object
    panels: int


@functools.lru_cache(maxsize=None)
def gauss_legendre(n: int, digits: int):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    mp = _mp_for(digits + 10)
    eps = mp.mpf(10) ** (-(digits + 8))
    nodes, weights = [], []
    for i in range(1, n + 1):
        x = mp.cos(mp.pi * (i - mp.mpf(0.25)) / (n + mp.mpf(0.5)))
        for _ in range(100):
            p0, p1 = mp.one, x
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
            dp = n * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < eps:
                break
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    out = _mp_for(digits)
    return tuple(out.mpf(v) for v in nodes), tuple(out.mpf(w) for w in weights)


def _panel(f, a, b, mp, n_lo, n_hi):
    half = (b - a) / 2
    mid = (a + b) / 2
    digits = mp.dps
    x_hi, w_hi = gauss_legendre(n_hi, digits)
    x_lo, w_lo = gauss_legendre(n_lo, digits)
    hi = mp.fsum(w * f(mid + half * x) for x, w in zip(x_hi, w_hi)) * half
    lo = mp.fsum(w * f(mid + half * x) for x, w in zip(x_lo, w_lo)) * half
    return hi, abs(hi - lo)


def integrate(f, breakpoints, mp, rel_tol, abs_tol=0.0, max_subdivisions=2000, order=20):
    """Integrate ``f`` over the interval spanned by sorted ``breakpoints``.

    Stops when the summed error estimate is below ``max(abs_tol, rel_tol*|I|)``.
    Raises :class:`QuadratureError` (carrying the current value and error
    estimate) once ``max_subdivisions`` bisections have been spent.
    """
    n_hi = order
    n_lo = max(order // 2, 2)
    pts = [mp.mpf(p) for p in breakpoints]
    heap = []
    for a, b in zip(pts[:-1], pts[1:]):
        val, err = _panel(f, a, b, mp, n_lo, n_hi)
        heap.append((-err, a, b, val, err))
    heapq.heapify(heap)
    splits = 0
    while True:
        total = mp.fsum(item[3] for item in heap)
        err_total = mp.fsum(item[4] for item in heap)
        if err_total <= max(abs_tol, rel_tol * abs(total)):
            return QuadResult(total, err_total, len(heap))
        if splits >= max_subdivisions:
            raise QuadratureError(
                f"quadrature did not converge in {max_subdivisions} subdivisions "
                f"(value {mp.nstr(total, 12)}, error estimate {mp.nstr(err_total, 3)})",
                value=total, error_estimate=err_total)
        _, a, b, _, _ = heapq.heappop(heap)
        mid = (a + b) / 2
        for lo, hi in ((a, mid), (mid, b)):
            val, err = _panel(f, lo, hi, mp, n_lo, n_hi)
            heapq.heappush(heap, (-err, lo, hi, val, err))
        splits += 1


# Geometric initial split of [0, 1): the mapped integrand concentrates near w = 1
# only when the scale is badly chosen, so a few extra panels there are cheap insurance.
_RAY_BREAKS = (0, 0.25, 0.5, 0.75, 0.875, 0.9375, 1)


def integrate_ray(f, start, direction, scale, mp, rel_tol, abs_tol=0.0,
                  max_subdivisions=2000, order=20):
    """Integrate ``f`` over the ray from ``start`` towards ``direction * inf``.

    The substitution ``t = start + direction * scale * w / (1 - w)`` maps the
    ray onto [0, 1); ``scale`` should be the decay length of ``f`` at ``start``.
    """
    start = mp.mpf(start)
    scale = mp.mpf(scale)

    def mapped(w):
        one_minus = 1 - w
        return f(start + direction * scale * w / one_minus) * scale / (one_minus * one_minus)

    return integrate(mapped, _RAY_BREAKS, mp, rel_tol, abs_tol, max_subdivisions, order)
