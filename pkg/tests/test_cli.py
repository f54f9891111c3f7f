import re

import pytest

from app import cli_run
from data_io import read_trace_csv

SUMMARY = re.compile(
    r"^status=(\w+) iters=(\d+) f=(\S+) grad_norm=(\S+) violations=(\d+)$",
    re.MULTILINE,
)


def summary_of(capsys):
    match = SUMMARY.search(capsys.readouterr().out)
    assert match is not None
    return match


def test_smoke_run_converges(capsys):
    assert cli_run(["--problem", "quadratic", "--method", "reg_newton", "--H", "1", "--tol", "1e-8"]) == 0
    match = summary_of(capsys)
    assert match.group(1) == "converged"
    assert float(match.group(4)) <= 1e-8
    assert match.group(5) == "0"


def test_unknown_method_is_a_usage_error(capsys):
    assert cli_run(["--method", "bogus"]) == 64
    assert "bogus" in capsys.readouterr().err


def test_missing_dataset_is_a_usage_error(capsys):
    assert cli_run(["--problem", "logistic", "--dataset", "missing.txt"]) == 64
    assert "missing.txt" in capsys.readouterr().err


def test_unknown_flag_is_a_usage_error():
    assert cli_run(["--learning-rate", "0.1"]) == 64


def test_method_family_mismatch(capsys):
    assert cli_run(["--problem", "quadratic", "--method", "lm"]) == 64
    assert "cannot run" in capsys.readouterr().err


def test_invalid_setting_is_a_usage_error():
    assert cli_run(["--problem", "quadratic", "--tol", "-1"]) == 64


def test_max_iters_exit_code(capsys):
    assert cli_run(["--problem", "cubic_worstcase", "--method", "gd", "--max-iters", "3"]) == 2
    match = summary_of(capsys)
    assert (match.group(1), match.group(2)) == ("max_iters", "3")


def test_singular_hessian_exit_code(capsys):
    assert cli_run(["--problem", "cubic_worstcase", "--method", "newton_armijo"]) == 3
    assert summary_of(capsys).group(1) == "singular_system"


def test_lm_run_writes_lm_trace(tmp_path, capsys):
    out = tmp_path / "lm.csv"
    code = cli_run(["--problem", "least_squares", "--method", "lm", "--dim", "3", "--c", "10", "--out", str(out)])
    assert code == 0
    match = summary_of(capsys)
    assert float(match.group(3)) <= 1e-12
    trace = read_trace_csv(out)
    assert len(trace) == int(match.group(2)) + 1
    assert trace[-1].lam == 0.0


def test_trace_file_matches_summary(tmp_path, capsys):
    out = tmp_path / "runs" / "adan.csv"
    assert cli_run(["--problem", "cubic_worstcase", "--method", "adan", "--h0", "1e-3", "--out", str(out)]) == 0
    match = summary_of(capsys)
    trace = read_trace_csv(out)
    assert len(trace) == int(match.group(2)) + 1
    assert trace[-1].grad_norm == pytest.approx(float(match.group(4)), rel=1e-6)


def test_config_file_with_flag_override(tmp_path, capsys):
    config = tmp_path / "run.env"
    config.write_text("problem = cubic_worstcase\nmethod = adan_plus\nmax_iters = 2\ndim = 3\n", encoding="utf-8")
    assert cli_run(["--config", str(config)]) == 2
    assert summary_of(capsys).group(2) == "2"
    assert cli_run(["--config", str(config), "--method", "reg_newton", "--max-iters", "1000"]) == 0


def test_config_file_with_unknown_key(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("problem = quadratic\nstep = 3\n", encoding="utf-8")
    assert cli_run(["--config", str(config)]) == 64


def test_experiment_run(tmp_path, capsys):
    code = cli_run(
        ["--experiment", "logsumexp_rho", "--n", "20", "--d", "4", "--max-iters", "10", "--out-dir", str(tmp_path)]
    )
    assert code == 0
    assert (tmp_path / "summary.csv").is_file()
    assert "logsumexp_rho" in capsys.readouterr().out
