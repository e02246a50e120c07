"""
Tests for the command-line entry point
"""

import json

import pytest

from src.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main


@pytest.mark.parametrize("argv", [
    [],
    ["learn", "--n", "1", "--m", "1", "--epsilon", "0.1"],
    ["learn", "--n", "1", "--m", "1", "--seed", "0"],
    ["learn", "--n", "1", "--m", "1", "--seed", "0", "--epsilon", "0.1", "--mode", "loud"],
    ["verify", "--checks", "nope"],
    ["sweep", "--n", "1", "--m", "1", "--seed", "0", "--epsilons", "0.1", "--out", "s.csv"],
    ["sweep", "--n", "1", "--m", "1", "--seed", "0", "--epsilons", "0.1,x"],
])
def test_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


def test_missing_input_file_is_usage_error(tmp_path):
    argv = ["learn", "--in", str(tmp_path / "missing.txt"), "--seed", "0", "--epsilon", "0.1"]
    assert main(argv) == EXIT_USAGE


def test_gen_then_learn_from_file(tmp_path):
    instance = tmp_path / "h.txt"
    report = tmp_path / "report.json"
    assert main(["gen", "--n", "1", "--m", "1", "--seed", "3", "--out", str(instance)]) == EXIT_OK
    argv = ["learn", "--in", str(instance), "--m", "1", "--seed", "3", "--epsilon", "0.25",
            "--out", str(report)]
    assert main(argv) == EXIT_OK
    assert json.loads(report.read_text())["success"] is True


def test_learn_from_file_needs_explicit_sparsity(tmp_path):
    instance = tmp_path / "h.txt"
    instance.write_text("XZ 0.25\nZI -0.5\n")
    argv = ["learn", "--in", str(instance), "--seed", "3", "--epsilon", "0.25"]
    assert main(argv) == EXIT_USAGE


def test_oversized_relaxation_is_usage_error(tmp_path):
    argv = ["learn", "--n", "1", "--m", "1", "--seed", "1", "--epsilon", "0.03125",
            "--rho", "20000", "--out", str(tmp_path / "report.json")]
    assert main(argv) == EXIT_USAGE
    assert not (tmp_path / "report.json").exists()


def test_learn_writes_metrics(tmp_path):
    metrics = tmp_path / "metrics.txt"
    argv = ["--metrics-out", str(metrics), "learn", "--n", "1", "--m", "1", "--seed", "3",
            "--epsilon", "0.25", "--out", str(tmp_path / "report.json")]
    assert main(argv) == EXIT_OK
    assert "hamlearn_oracle_queries_total" in metrics.read_text()


def test_verify_exit_codes(tmp_path):
    checks = ["--checks", "duhamel,distance_metric", "--trials", "5"]
    assert main(["verify", *checks]) == EXIT_OK
    assert main(["verify", *checks, "--bound-scale", "0.1"]) == EXIT_FAILURE


def test_verify_accepts_table1_norms():
    assert main(["verify", "--checks", "table1_norms", "--trials", "3"]) == EXIT_OK
