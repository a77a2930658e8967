"""Mills-ratio envelopes for a few ESN shapes.

Prints the lower bound, the quadrature ratio and the upper bound on a short grid,
together with the case that produced the bounds and the large-x asymptote.

    python3 demos/mills_envelope.py
"""

import numpy as np

from esn_extremes import BoundaryError, DomainError, EsnParams, mills_bounds, mills_ratio, mills_ratio_asymptote

SHAPES = [EsnParams(0, 0), EsnParams(1.5, -1), EsnParams(-1, 0), EsnParams(-2, 0.9)]


def show(params, xs):
    print(f"\nalpha={params.alpha:g}, tau={params.tau:g}")
    print(f"{'x':>7} {'case':>26} {'lower':>12} {'ratio':>12} {'upper':>12} {'asymptote':>12}")
    for x in xs:
        try:
            env = mills_bounds(params, x)
        except BoundaryError as exc:
            print(f"{x:7.3f} {'(case boundary)':>26}  {exc}")
            continue
        ratio = float(mills_ratio(params, x))
        try:
            asym = f"{mills_ratio_asymptote(params, x):12.6g}"
        except DomainError:
            asym = f"{'-':>12}"
        print(f"{x:7.3f} {env.case_id.value:>26} {float(env.lower):12.6g} {ratio:12.6g} "
              f"{float(env.upper):12.6g} {asym}")


if __name__ == "__main__":
    for p in SHAPES:
        xs = np.linspace(0.1, -p.tau / p.alpha, 5)[:-1] if p.alpha < 0 and p.tau > 0 else [0.5, 1, 2, 5, 10, 20]
        show(p, xs)
