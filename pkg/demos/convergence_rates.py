"""How fast normalized ESN maxima approach the Gumbel law.

With exact constants the error shrinks like 1/b_n^2, and the scaled quantities
b_n^2 h and b_n^2 (b_n^2 h - kappa) settle on kappa(x) and omega(x). With the
closed-form constants the error is of order (ln ln n)^2 / ln n, which is far
slower; the ratio r printed at the end tends to 1 only very gradually.

    python3 demos/convergence_rates.py     # about a minute
"""

from esn_extremes import EsnParams, closed_form_rate_check, rate_profile

X = [-1.0, 0.5, 1.0, 2.0]


def lemma_table(params, corrected):
    print(f"\nalpha={params.alpha:g}, tau={params.tau:g}  (columns: b^2 h | kappa | b^2(b^2 h - kappa) | omega)")
    for ln_n in (1e3, 1e4, 1e5, 1e6):
        prof = rate_profile(params, X, ln_n, monitor=False, corrected_omega=corrected)
        cells = "  ".join(f"{f:8.5f} {k:8.5f} {s:9.5f} {w:9.5f}"
                          for f, k, s, w in zip(prof.first_order, prof.kappa_theory,
                                                prof.second_order, prof.omega_theory))
        print(f"ln n={ln_n:7.0e}  {cells}")


if __name__ == "__main__":
    lemma_table(EsnParams(0, 0), corrected=False)
    lemma_table(EsnParams(-1, 0), corrected=True)

    ladder = [1e2, 1e3, 1e4, 1e5, 1e6]
    print("\nclosed-form rate ratio r at x = 1")
    for p, corrected in ((EsnParams(1, 0), False), (EsnParams(0, 0), True), (EsnParams(-1, 0), True)):
        r = closed_form_rate_check(p, 1.0, ladder, corrected=corrected)
        tag = "corrected" if corrected else "published"
        print(f"alpha={p.alpha:g} ({tag}): " + "  ".join(f"{v:.4f}" for v in r))
