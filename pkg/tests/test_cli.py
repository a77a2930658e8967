import csv
import io
import json
import math
import os
import shutil
import subprocess
import sys

import pytest
from scipy import special, stats

from esn_extremes.cli import EXIT_NUMERIC, EXIT_OK, EXIT_REGIME, EXIT_USAGE, main, parse_args


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("ESN_PRECISION", None)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "esn_extremes.cli", *args], capture_output=True,
                          env=full_env, timeout=300)


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_console_script_installed():
    assert shutil.which("esn-extremes") is not None


def test_eval_golden(capsys):
    assert main(["eval", "--alpha", "0", "--tau", "0", "--x", "0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == "x,pdf,cdf,survival,log_survival\n0,0.3989422804014327,0.5,0.5,-0.69314718055994529\n"
    row = rows_of(out)[0]
    assert float(row["pdf"]) == stats.norm.pdf(0.0)


def test_constants_example(capsys):
    assert main(["constants", "--alpha", "0", "--tau", "0", "--ln-n", "4.60517"]) == EXIT_OK
    rows = rows_of(capsys.readouterr().out)
    assert len(rows) == 1
    assert float(rows[0]["b_n"]) == pytest.approx(-special.ndtri(math.exp(-4.60517)), abs=1e-9)
    assert float(rows[0]["b_n"]) == pytest.approx(2.3263, abs=1e-4)


def test_bounds_schema(capsys):
    assert main(["bounds", "--alpha", "1", "--tau", "0", "--x-min", "1", "--x-max", "5", "--x-steps", "3"]) == 0
    rows = rows_of(capsys.readouterr().out)
    assert list(rows[0]) == ["x", "case_id", "lower", "ratio_oracle", "upper", "sandwich_ok"]
    assert [r["sandwich_ok"] for r in rows] == ["true"] * 3


def test_rates_schema(capsys):
    assert main(["rates", "--alpha", "0", "--x", "1", "--ln-n", "1000"]) == EXIT_OK
    rows = rows_of(capsys.readouterr().out)
    assert list(rows[0]) == ["x", "ln_n", "b_n", "h", "first_order", "kappa", "second_order", "omega"]


def test_simulate_schema_and_summary(tmp_path):
    out = tmp_path / "sim.csv"
    assert main(["simulate", "--alpha", "0", "--block-size", "50", "--replicates", "4", "--out", str(out)]) == 0
    rows = rows_of(out.read_text())
    assert list(rows[0]) == ["replicate", "maximum", "normalized"] and len(rows) == 4
    summary = json.loads((tmp_path / "sim.csv.summary.json").read_text())
    assert 0 <= summary["ks_statistic"] <= 1


def test_json_output(capsys):
    assert main(["bounds", "--alpha", "1", "--tau", "-2", "--x", "2", "--x", "3", "--format", "json"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert records[0]["case_id"] == "Boundary" and records[0]["lower"] is None
    assert records[1]["sandwich_ok"] is True


def test_float_format_round_trips(capsys):
    from esn_extremes import EsnParams, cdf, pdf

    main(["eval", "--alpha", "1.3", "--tau", "-0.4", "--x", "0.1"])
    row = rows_of(capsys.readouterr().out)[0]
    p = EsnParams(1.3, -0.4)
    # 17 significant digits reproduce the double exactly
    assert float(row["cdf"]) == float(cdf(p, 0.1))
    assert float(row["pdf"]) == float(pdf(p, 0.1))


# --- exit codes --------------------------------------------------------------------

@pytest.mark.parametrize("args", [
    ["eval", "--alpha", "0", "--bogus", "1"],
    ["eval", "--tau", "0"],
    ["frobnicate", "--alpha", "0"],
    ["eval", "--alpha", "0", "--precision", "12"],
    ["eval", "--alpha", "0", "--precision", "many"],
    ["bounds", "--alpha", "0", "--x-steps", "0"],
    ["bounds", "--alpha", "0", "--x-min", "3", "--x-max", "1"],
    ["constants", "--alpha", "0", "--ln-n", "0.5"],
    ["simulate", "--alpha", "0", "--replicates", "0"],
    ["eval", "--alpha", "nan"],
    ["eval", "--alpha", "0", "--alp", "1"],
])
def test_usage_errors_exit_2(args, capsys):
    assert main(args) == EXIT_USAGE
    assert "esn-extremes" in capsys.readouterr().err


def test_env_precision_override():
    assert run_cli("eval", "--alpha", "0", env={"ESN_PRECISION": "12"}).returncode == EXIT_USAGE
    ok = run_cli("eval", "--alpha", "0", "--x", "1", env={"ESN_PRECISION": "20"})
    assert ok.returncode == EXIT_OK
    assert parse_args(["eval", "--alpha", "0"]).precision_digits == 34


@pytest.mark.parametrize("command", ["eval", "constants", "rates", "tail", "simulate"])
def test_regime_violation_exit_3(command, capsys):
    assert main([command, "--alpha", "-1", "--tau", "2"]) == EXIT_REGIME
    err = capsys.readouterr().err
    assert "alpha + tau < 0" in err


@pytest.mark.parametrize("args", [
    ["rates", "--alpha", "0", "--x", "1", "--ln-n", "1000", "--precision", "20"],  # precision floor
    ["tail", "--alpha", "0", "--x", "1"],                                          # expansion not valid
    ["simulate", "--alpha", "0", "--block-size", "1000000", "--replicates", "2000"],  # draw budget
])
def test_numeric_failures_exit_4(args, capsys):
    assert main(args) == EXIT_NUMERIC
    err = capsys.readouterr().err
    assert args[0] in err and "alpha=0" in err


def test_help_exits_zero():
    assert run_cli("--help").returncode == 0


# --- determinism ------------------------------------------------------------------------

@pytest.mark.parametrize("args", [
    ["simulate", "--alpha", "1", "--tau", "0.5", "--block-size", "200", "--replicates", "30", "--seed", "7"],
    ["bounds", "--alpha", "-1", "--tau", "0", "--x-steps", "8"],
    ["tail", "--alpha", "-1", "--tau", "-0.5", "--x", "14", "--x", "20", "--format", "json"],
])
def test_byte_identical_reruns(args):
    first, second = run_cli(*args), run_cli(*args)
    assert first.returncode == second.returncode == EXIT_OK
    assert first.stdout == second.stdout
    assert first.stderr == second.stderr
    assert b"\r\n" not in first.stdout
