"""Tests for the command line: solve, verify, indexes and exit codes."""
import io
import json

import pytest
from click.testing import CliRunner

from pid_treedepth.cli import cli, run_cli
from pid_treedepth.core import EliminationForest, SolveResult

K2 = "p tdp 2 1\n1 2\n"
P5 = "c path\np tdp 5 4\n1 2\n2 3\n3 4\n4 5\n"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path
    return _write


class TestSolve:
    def test_k2_from_stdin(self, runner):
        result = runner.invoke(cli, ["solve"], input=K2)
        assert result.exit_code == 0
        assert result.stdout == "2\n2\n0\n"

    def test_k1_from_file(self, runner, write):
        result = runner.invoke(cli, ["solve", str(write("k1.gr", "p tdp 1 0\n"))])
        assert result.exit_code == 0
        assert result.stdout == "1\n0\n"

    def test_isolated_vertices(self, runner):
        result = runner.invoke(cli, ["solve"], input="p tdp 2 0\n")
        assert result.stdout == "1\n0\n0\n"

    @pytest.mark.parametrize("flags", [["--no-domination"], ["--no-trie"], ["--validate"], ["--presolve", "none"]])
    def test_flags_keep_depth(self, runner, flags):
        result = runner.invoke(cli, ["solve", *flags], input=P5)
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "3"

    def test_deterministic(self, runner):
        first = runner.invoke(cli, ["solve"], input=P5).stdout
        second = runner.invoke(cli, ["solve"], input=P5).stdout
        assert first == second

    def test_start_depth_from_env(self, write, capsys, monkeypatch):
        monkeypatch.setenv("PID_TREEDEPTH_START_DEPTH", "3")
        assert run_cli(["solve", str(write("p5.gr", P5))]) == 0
        captured = capsys.readouterr()
        assert captured.out.splitlines()[0] == "3"
        assert "Starting at depth 3" in captured.err

    def test_export_report(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(cli, ["solve", "--workers", "2", "--export", str(out)], input=P5)
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["tool"] == "pid-treedepth"
        assert report["graph"] == {"n": 5, "m": 4}
        assert report["options"]["workers"] == 2
        assert report["result"]["depth"] == 3
        assert len(report["result"]["parent"]) == 5

    def test_stats_go_to_stderr(self, write, capsys):
        assert run_cli(["solve", "--stats", str(write("p5.gr", P5))]) == 0
        captured = capsys.readouterr()
        assert captured.out.splitlines()[0] == "3"
        assert "TOTAL" in captured.err
        assert "TOTAL" not in captured.out

    def test_malformed_input_exits_1(self, write, capsys):
        assert run_cli(["solve", str(write("bad.gr", "1 2\n"))]) == 1
        assert "line 1" in capsys.readouterr().err

    def test_empty_graph_exits_1(self, write):
        assert run_cli(["solve", str(write("empty.gr", "p tdp 0 0\n"))]) == 1

    def test_undecodable_input_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.gr"
        path.write_bytes(b"p tdp 2 1\n1 \xff2\n")
        assert run_cli(["solve", str(path)]) == 1
        assert "cannot read input" in capsys.readouterr().err

    def test_failed_self_check_exits_2(self, write, capsys, monkeypatch):
        broken = SolveResult(depth=1, forest=EliminationForest(parent=[None, None], depth=1))
        monkeypatch.setattr("pid_treedepth.cli.solve_treedepth", lambda graph, options: broken)
        assert run_cli(["solve", "--validate", str(write("k2.gr", K2))]) == 2
        assert "Self-check failed" in capsys.readouterr().err

    def test_broken_forest_passes_without_validate(self, write, monkeypatch):
        broken = SolveResult(depth=1, forest=EliminationForest(parent=[None, None], depth=1))
        monkeypatch.setattr("pid_treedepth.cli.solve_treedepth", lambda graph, options: broken)
        assert run_cli(["solve", str(write("k2.gr", K2))]) == 0

    @pytest.mark.parametrize("flags", [["--start-depth", "0"], ["--workers", "0"], ["--presolve", "greedy"]])
    def test_bad_flags_exit_1(self, flags):
        assert run_cli(["solve", *flags]) == 1


class TestDefaultCommand:
    """Without a subcommand the arguments belong to solve."""

    def test_flags_and_path_without_subcommand(self, write, capsys):
        assert run_cli(["--no-domination", str(write("k2.gr", K2))]) == 0
        assert capsys.readouterr().out == "2\n2\n0\n"

    def test_bare_path(self, write, capsys):
        assert run_cli([str(write("p5.gr", P5))]) == 0
        assert capsys.readouterr().out.splitlines()[0] == "3"

    def test_no_arguments_reads_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(K2))
        assert run_cli([]) == 0
        assert capsys.readouterr().out == "2\n2\n0\n"

    def test_options_with_values_and_stdin(self, runner):
        result = runner.invoke(cli, ["--start-depth", "1", "--presolve=none", "--no-trie"], input=P5)
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "3"

    def test_log_level_before_path(self, write, capsys):
        assert run_cli(["--log-level", "ERROR", str(write("k2.gr", K2))]) == 0
        assert capsys.readouterr().out == "2\n2\n0\n"

    def test_unknown_flag_still_fails(self, write):
        assert run_cli(["--no-such-flag", str(write("k2.gr", K2))]) == 1


class TestVerify:
    def test_valid(self, runner, write):
        result = runner.invoke(cli, ["verify", str(write("g.gr", K2)), str(write("t.td", "2\n2\n0\n"))])
        assert result.exit_code == 0
        assert "Valid" in result.output

    def test_invalid_exits_2(self, runner, write):
        result = runner.invoke(cli, ["verify", str(write("g.gr", K2)), str(write("t.td", "1\n0\n0\n"))])
        assert result.exit_code == 2

    def test_wrong_parent_count_exits_1(self, write):
        assert run_cli(["verify", str(write("g.gr", K2)), str(write("t.td", "1\n0\n"))]) == 1

    def test_undecodable_tree_exits_1(self, write, tmp_path):
        tree = tmp_path / "t.td"
        tree.write_bytes(b"\xff\n")
        assert run_cli(["verify", str(write("g.gr", K2)), str(tree)]) == 1

    def test_solver_output_verifies(self, runner, write):
        solved = runner.invoke(cli, ["solve"], input=P5).stdout
        result = runner.invoke(cli, ["verify", str(write("g.gr", P5)), str(write("t.td", solved))])
        assert result.exit_code == 0


def test_indexes_lists_both(runner):
    result = runner.invoke(cli, ["indexes"])
    assert result.exit_code == 0
    assert "trie" in result.output
    assert "scan" in result.output


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.output
