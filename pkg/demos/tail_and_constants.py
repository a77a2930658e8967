"""Tail expansion accuracy and the two kinds of normalizing constants.

Part one compares the asymptotic log-survival with quadrature as x grows.
Part two solves for the exact constants (a_n, b_n) and sets them against the
closed-form pair, in both the published and the corrected versions.

    python3 demos/tail_and_constants.py
"""

import mpmath

from esn_extremes import EsnParams, closed_form_constants, log_survival, solve_bn, tail_expansion
from esn_extremes.precision import LAB_CONTEXT


def expansion_table(params):
    print(f"\ntail expansion, alpha={params.alpha:g}, tau={params.tau:g}")
    print(f"{'x':>6} {'ln S (quadrature)':>22} {'relative error':>15} {'estimate':>10}")
    for x in (8, 12, 16, 20, 30):
        res = tail_expansion(params, x, LAB_CONTEXT)
        exact = log_survival(params, x, LAB_CONTEXT, use_expansion=False)
        err = abs(float(mpmath.expm1(res.log_survival_approx - exact)))
        print(f"{x:6d} {float(exact):22.12f} {err:15.3e} {res.est_rel_error:10.2e}")


def constants_table(params):
    print(f"\nconstants, alpha={params.alpha:g}, tau={params.tau:g}")
    print(f"{'ln n':>8} {'b_n':>10} {'a_n/alpha_n':>12} {'gap':>10} {'gap (corr.)':>12}")
    for ln_n in (1e2, 1e3, 1e4, 1e5):
        a, b, _ = solve_bn(params, ln_n)
        a, b = float(a), float(b)
        alpha_n, beta_n = closed_form_constants(params, ln_n)
        _, beta_c = closed_form_constants(params, ln_n, corrected=True)
        print(f"{ln_n:8.0e} {b:10.4f} {a / alpha_n:12.6f} {(beta_n - b) / a:10.4g} {(beta_c - b) / a:12.4g}")


if __name__ == "__main__":
    for p in (EsnParams(1, 1), EsnParams(-1, -0.5)):
        expansion_table(p)
    for p in (EsnParams(0, 0), EsnParams(2, -1), EsnParams(-1, 0)):
        constants_table(p)
