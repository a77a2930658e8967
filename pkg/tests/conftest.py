import sys

import pytest

from esn_extremes import EsnParams

ALPHAS = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)
TAUS = (-1.0, -0.5, 0.0, 0.5, 1.0)


def grid_params():
    """The (alpha, tau) grid, with alpha < 0 cells kept only inside the tail-result regime."""
    return [EsnParams(a, t) for a in ALPHAS for t in TAUS if EsnParams(a, t).paper_regime_ok]


@pytest.fixture(scope="session")
def param_grid():
    return grid_params()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None) and not getattr(mod, "CRITERIA", None):
        return
    terminalreporter.section("acceptance criteria")
    for number, title in mod.CRITERIA.items():
        if number in mod.RESULTS:
            ok, detail = mod.RESULTS[number]
            status = "PASS" if ok else "FAIL"
        else:
            status, detail = "NOT RUN", "no result recorded"
        terminalreporter.write_line(f"criterion {number:2d} {status:7s} {title}: {detail}")
