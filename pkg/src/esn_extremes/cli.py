"""Command-line front end: ``esn-extremes <command> [options]``.

Exit codes: 0 success, 2 invalid arguments, 3 alpha < 0 outside the tail-result
regime, 4 numerical failure (quadrature, root finding, precision, accuracy, budget).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import math
import os
import sys
from typing import Sequence

import numpy as np

from .core import EsnParams, cdf, log_survival, pdf, survival
from .errors import EsnError, NumericError, RegimeError, ResourceError
from .precision import PrecisionContext

COMMANDS = ("eval", "bounds", "tail", "constants", "rates", "simulate")

_DEFAULT_GRIDS = {
    "eval": (0.0, 0.0, 1),
    "bounds": (0.5, 20.0, 40),
    "tail": (8.0, 24.0, 5),
    "rates": (-1.0, 2.0, 4),
}
_DEFAULT_LN_N = {"constants": [10.0, 100.0, 1000.0], "rates": [1e3, 1e4]}

EXIT_OK, EXIT_USAGE, EXIT_REGIME, EXIT_NUMERIC = 0, 2, 3, 4


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    alpha: float
    tau: float
    x_grid: tuple
    ln_n_list: tuple
    precision_digits: int
    seed: int
    output_format: str
    output_path: str | None
    block_size: int = 1000
    replicates: int = 200
    normalization: str = "exact"
    corrected: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    env = os.environ.get("ESN_PRECISION")
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--alpha", type=float, required=True, help="slant parameter")
    common.add_argument("--tau", type=float, default=0.0, help="extension parameter")
    common.add_argument("--x", type=float, action="append", help="evaluation point (repeatable)")
    common.add_argument("--x-min", type=float)
    common.add_argument("--x-max", type=float)
    common.add_argument("--x-steps", type=int)
    common.add_argument("--ln-n", type=float, action="append", dest="ln_n", help="ln of the sample size (repeatable)")
    common.add_argument("--block-size", type=int, default=1000)
    common.add_argument("--replicates", type=int, default=200)
    common.add_argument("--normalization", choices=("exact", "closed"), default="exact")
    common.add_argument("--precision", default=env if env is not None else "34",
                        help="working digits (default 34, or $ESN_PRECISION)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv", dest="output_format")
    common.add_argument("--out", default=None, help="output file (default: standard output)")
    common.add_argument("--corrected", action="store_true",
                        help="use the corrected closed-form constants and omega (see README)")

    parser = _Parser(prog="esn-extremes", description="Extremes of the extended skew-normal distribution.",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], allow_abbrev=False)
    return parser


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Strict parse into a :class:`RunConfig`.

    Raises ``_UsageError`` (exit 2) or :class:`RegimeError` (exit 3).
    """
    ns = _build_parser().parse_args(list(argv))
    try:
        digits = int(ns.precision)
    except ValueError:
        raise _UsageError(f"precision must be an integer, got {ns.precision!r}") from None
    if digits < 15:
        raise _UsageError(f"precision must be >= 15 digits, got {digits}")
    if not (math.isfinite(ns.alpha) and math.isfinite(ns.tau)):
        raise _UsageError("alpha and tau must be finite")

    if ns.x:
        grid = tuple(ns.x)
    else:
        lo, hi, steps = _DEFAULT_GRIDS.get(ns.command, (0.0, 0.0, 1))
        lo = lo if ns.x_min is None else ns.x_min
        hi = hi if ns.x_max is None else ns.x_max
        steps = steps if ns.x_steps is None else ns.x_steps
        if steps < 1:
            raise _UsageError("x-steps must be >= 1")
        if lo > hi:
            raise _UsageError("x-min must not exceed x-max")
        grid = (lo,) if steps == 1 else tuple(float(v) for v in np.linspace(lo, hi, steps))
    if not all(math.isfinite(v) for v in grid):
        raise _UsageError("x values must be finite")
    ln_n = tuple(ns.ln_n) if ns.ln_n else tuple(_DEFAULT_LN_N.get(ns.command, ()))
    if any(not v > 1 for v in ln_n):
        raise _UsageError("every --ln-n must exceed 1")
    if ns.block_size < 3 or ns.replicates < 1:
        raise _UsageError("block-size must be >= 3 and replicates >= 1")

    params = EsnParams(ns.alpha, ns.tau)
    params.require_regime()
    return RunConfig(ns.command, ns.alpha, ns.tau, grid, ln_n, digits, ns.seed, ns.output_format,
                     ns.out, ns.block_size, ns.replicates, ns.normalization, ns.corrected)


# ---------------------------------------------------------------------------
# commands; each returns (columns, rows, summary-or-None)

def _ctx(config, lab=False):
    if lab:
        return PrecisionContext(config.precision_digits, 10.0 ** -(config.precision_digits - 10),
                                10.0 ** -(config.precision_digits - 8), 5000)
    return PrecisionContext(config.precision_digits)


def _cmd_eval(config, params):
    ctx = _ctx(config)
    rows = []
    for x in config.x_grid:
        rows.append([x, pdf(params, x, ctx), cdf(params, x, ctx), survival(params, x, ctx),
                     log_survival(params, x, ctx)])
    return ["x", "pdf", "cdf", "survival", "log_survival"], rows, None


def _cmd_bounds(config, params):
    from .errors import BoundaryError, DomainError
    from .mills import mills_bounds, mills_ratio

    ctx = _ctx(config)
    rows = []
    for x in config.x_grid:
        try:
            env = mills_bounds(params, x, ctx)
        except (BoundaryError, DomainError):
            rows.append([x, "Boundary", math.nan, math.nan, math.nan, False])
            continue
        ratio = mills_ratio(params, x, ctx)
        rows.append([x, env.case_id.value, env.lower, ratio, env.upper, bool(env.lower < ratio < env.upper)])
    return ["x", "case_id", "lower", "ratio_oracle", "upper", "sandwich_ok"], rows, None


def _cmd_tail(config, params):
    from .tail import log_c_limit, integral_g_over_f, tail_expansion

    ctx = _ctx(config)
    mp = ctx.mp
    rows = []
    for x in config.x_grid:
        exp_res = tail_expansion(params, x, ctx)
        oracle = log_survival(params, x, ctx, use_expansion=False)
        vm = mp.expm1(oracle + integral_g_over_f(params, x, ctx) - log_c_limit(params, ctx, config.corrected))
        rows.append([x, exp_res.log_survival_approx, oracle,
                     mp.expm1(exp_res.log_survival_approx - oracle), exp_res.est_rel_error, vm])
    return ["x", "expansion_log_survival", "oracle_log_survival", "rel_error", "est_rel_error",
            "von_mises_rel_dev"], rows, None


def _cmd_constants(config, params):
    from .constants import normalizing_constants

    ctx = _ctx(config)
    rows = []
    for ln_n in config.ln_n_list:
        c = normalizing_constants(params, ln_n, ctx, corrected=config.corrected)
        rows.append([config.alpha, config.tau, ln_n, c.a_n, c.b_n, c.alpha_n, c.beta_n, c.residual,
                     c.scale_ratio, c.location_gap])
    return ["alpha", "tau", "ln_n", "a_n", "b_n", "alpha_n", "beta_n", "residual", "scale_ratio",
            "location_gap"], rows, None


def _cmd_rates(config, params):
    from .rates import rate_profile

    ctx = _ctx(config, lab=True)
    rows = []
    for ln_n in config.ln_n_list:
        prof = rate_profile(params, config.x_grid, ln_n, ctx, corrected_omega=config.corrected)
        for i, x in enumerate(prof.x_grid):
            rows.append([x, ln_n, prof.b_n, prof.h[i], prof.first_order[i], prof.kappa_theory[i],
                         prof.second_order[i], prof.omega_theory[i]])
    return ["x", "ln_n", "b_n", "h", "first_order", "kappa", "second_order", "omega"], rows, None


def _cmd_simulate(config, params):
    from .simulation import run_maxima_experiment

    exp = run_maxima_experiment(params, config.block_size, config.replicates, config.normalization,
                                config.seed, ctx=_ctx(config))
    rows = [[i, m, z] for i, (m, z) in enumerate(zip(exp.maxima, exp.normalized))]
    summary = {
        "alpha": config.alpha, "tau": config.tau, "block_size": exp.block_size,
        "replicates": exp.replicates, "seed": exp.seed, "normalization": exp.normalization.value,
        "scale": exp.scale, "location": exp.location, "ks_statistic": exp.ks_statistic,
    }
    return ["replicate", "maximum", "normalized"], rows, summary


_COMMANDS = {
    "eval": _cmd_eval, "bounds": _cmd_bounds, "tail": _cmd_tail,
    "constants": _cmd_constants, "rates": _cmd_rates, "simulate": _cmd_simulate,
}


# ---------------------------------------------------------------------------
# serialization

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    f = float(v)
    if math.isnan(f):
        return "nan"
    if math.isinf(f):
        return "inf" if f > 0 else "-inf"
    return format(f, ".17g")


def _json_value(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f'"{k}": {_json_value(val)}' for k, val in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return "null"
    s = _fmt(v)
    return "null" if s in ("nan", "inf", "-inf") else s


def to_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def to_json(columns, rows, summary=None) -> str:
    records = [dict(zip(columns, row)) for row in rows]
    if summary is None:
        return _json_value(records) + "\n"
    return _json_value({"summary": summary, "rows": records}) + "\n"


def run(config: RunConfig) -> int:
    params = EsnParams(config.alpha, config.tau)
    try:
        columns, rows, summary = _COMMANDS[config.command](config, params)
    except RegimeError as exc:
        _err(f"{config.command}: {exc}")
        return EXIT_REGIME
    except (NumericError, ResourceError) as exc:
        _err(f"{config.command} failed for alpha={config.alpha}, tau={config.tau}: "
             f"{type(exc).__name__}: {exc}")
        return EXIT_NUMERIC
    except EsnError as exc:
        _err(f"{config.command}: invalid input for alpha={config.alpha}, tau={config.tau}: {exc}")
        return EXIT_USAGE

    if config.output_format == "json":
        text = to_json(columns, rows, summary)
        summary_text = None
    else:
        text = to_csv(columns, rows)
        summary_text = None if summary is None else _json_value(summary) + "\n"
    if config.output_path:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
        if summary_text is not None:
            with open(config.output_path + ".summary.json", "w", newline="") as fh:
                fh.write(summary_text)
    else:
        sys.stdout.write(text)
        if summary_text is not None:
            sys.stderr.write(summary_text)
    return EXIT_OK


def _err(msg):
    sys.stderr.write(f"esn-extremes: error: {msg}\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
    except _UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help, or argparse exiting on its own
        return int(exc.code or 0)
    except RegimeError as exc:
        _err(str(exc))
        return EXIT_REGIME
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
