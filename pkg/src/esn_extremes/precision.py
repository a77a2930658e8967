"""Working precision and quadrature tolerances.

Every numerical routine takes a :class:`PrecisionContext`. Arithmetic is done
with a private :class:`mpmath.MPContext` per digit count, so no routine touches
mpmath's global precision and contexts can be shared between threads.
"""

from __future__ import annotations

import dataclasses
import functools

import mpmath

from .errors import DomainError


@functools.lru_cache(maxsize=None)
def _mp_for(digits: int) -> mpmath.MPContext:
    mp = mpmath.MPContext()
    mp.dps = digits
    return mp


@dataclasses.dataclass(frozen=True)
class PrecisionContext:
    digits: int = 34
    quad_rel_tol: float = 1e-12
    quad_abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 15:
            raise DomainError(f"digits must be an integer >= 15, got {self.digits}")
        for name in ("quad_rel_tol", "quad_abs_tol"):
            tol = getattr(self, name)
            if not 0.0 < tol < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {tol}")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")

    @property
    def mp(self) -> mpmath.MPContext:
        return _mp_for(int(self.digits))

    def with_digits(self, digits: int) -> PrecisionContext:
        return dataclasses.replace(self, digits=digits)

    def to_float(self, value) -> float:
        return float(value)


DEFAULT_CONTEXT = PrecisionContext()

# Tolerances tight enough for fourth-order cancellation in the convergence lab:
# b_n**4 * h at ln n = 1e6 needs log-survival to ~1e-17 absolute.
LAB_CONTEXT = PrecisionContext(digits=34, quad_rel_tol=1e-24, quad_abs_tol=1e-26,
                               max_subdivisions=5000)

# Monte Carlo comparisons only need double-precision-class accuracy.
FAST_CONTEXT = PrecisionContext(digits=20, quad_rel_tol=1e-12, quad_abs_tol=1e-14)
