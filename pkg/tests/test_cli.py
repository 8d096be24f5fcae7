"""CLI contract: formats, determinism, and exit codes."""

import subprocess
import sys

import pytest

from pmfstack.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def table(tmp_path):
    def write(text, name="data.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


class TestFit:
    def test_strictly_decreasing_counts_fit_to_empirical(self, table, capsys):
        path = table("0 3\n1 2\n2 1\n")
        code, out, _ = run_cli(
            ["fit", "--input", path, "--loss", "l2", "--mc", "1000", "--seed", "1"], capsys
        )
        assert code == 0
        assert "# beta=0\n" in out
        assert "# branch=degenerate_a_zero\n" in out
        header = next(line for line in out.splitlines() if line.startswith("index"))
        assert header == "index,count,empirical,grenander,theta,band_lower,band_upper"
        data = [line for line in out.splitlines() if line and not line.startswith(("#", "index"))]
        assert len(data) == 3  # one row per support cell

    def test_single_cell_input(self, table, capsys):
        path = table("0 4\n")
        code, out, _ = run_cli(["fit", "--input", path, "--mc", "1000", "--seed", "3"], capsys)
        assert code == 0
        assert "# beta=0\n" in out
        assert "# q_hat=0\n" in out  # point-mass limit is degenerate
        row = out.splitlines()[-1].split(",")
        assert row[:2] == ["0", "4"]
        assert float(row[5]) == float(row[6]) == 1.0

    def test_comments_duplicates_and_order(self, table, capsys):
        messy = table("# header comment\n2 1\n0 1  # inline\n0 1\n1 1\n")
        clean = table("0 2\n1 1\n2 1\n", name="clean.txt")
        code_a, out_a, _ = run_cli(["fit", "--input", messy, "--mc", "1000", "--seed", "5"], capsys)
        code_b, out_b, _ = run_cli(["fit", "--input", clean, "--mc", "1000", "--seed", "5"], capsys)
        assert code_a == code_b == 0
        assert out_a == out_b

    def test_report_reconstructs_the_mixture(self, table, capsys):
        path = table("0 1\n1 3\n2 1\n")
        _, out, _ = run_cli(["fit", "--input", path, "--mc", "1000", "--seed", "9"], capsys)
        beta = float(next(l for l in out.splitlines() if l.startswith("# beta=")).split("=")[1])
        for line in out.splitlines():
            if line.startswith(("#", "index")) or not line:
                continue
            _, _, emp, gren, theta, _, _ = line.split(",")
            assert abs(float(theta) - (beta * float(gren) + (1 - beta) * float(emp))) <= 1e-12

    def test_missing_file_is_usage_error(self, capsys):
        code, _, err = run_cli(["fit", "--input", "/nonexistent.txt", "--seed", "1"], capsys)
        assert code == 2
        assert "error" in err

    @pytest.mark.parametrize("text", ["0\n", "a b\n", "0 1 2\n", "-1 4\n", "0 -2\n"])
    def test_malformed_input_is_usage_error(self, text, table, capsys):
        code, _, err = run_cli(["fit", "--input", table(text), "--seed", "1"], capsys)
        assert code == 2
        assert "error" in err

    def test_tiny_sample_is_domain_error(self, table, capsys):
        code, _, err = run_cli(["fit", "--input", table("0 1\n"), "--seed", "1"], capsys)
        assert code == 3
        assert "n=1" in err


class TestSimulate:
    def test_shape_and_determinism(self, capsys):
        argv = ["simulate", "--model", "M1", "--n", "100", "--reps", "10", "--seed", "6"]
        code, out, _ = run_cli(argv, capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "model,estimator,rep,l2_distance,s2_score,beta"
        assert len(lines) == 1 + 40
        code2, out2, _ = run_cli(argv, capsys)
        assert code2 == 0 and out2 == out

    def test_unknown_model_is_usage_error(self, capsys):
        code, _, _ = run_cli(
            ["simulate", "--model", "M7", "--n", "100", "--reps", "2", "--seed", "1"], capsys
        )
        assert code == 2

    def test_zero_reps_is_usage_error(self, capsys):
        code, _, _ = run_cli(
            ["simulate", "--model", "M1", "--n", "100", "--reps", "0", "--seed", "1"], capsys
        )
        assert code == 2

    @pytest.mark.parametrize("n", ["1", "0", "-4"])
    def test_tiny_n_is_domain_error(self, n, capsys):
        code, _, _ = run_cli(
            ["simulate", "--model", "M1", "--n", n, "--reps", "2", "--seed", "1"], capsys
        )
        assert code == 3


class TestCoverage:
    def test_row_structure(self, capsys):
        code, out, _ = run_cli(
            ["coverage", "--model", "M2", "--n", "50", "--reps", "4", "--mc", "200", "--seed", "2"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "model,estimator,n,reps,covered_fraction"
        assert [line.split(",")[1] for line in lines[1:]] == ["Empirical", "GS_L1", "GS_L2"]

    def test_missing_seed_is_usage_error(self, capsys):
        code, _, _ = run_cli(["coverage", "--model", "M2", "--n", "50", "--reps", "4"], capsys)
        assert code == 2


class TestRisk:
    def test_shape(self, capsys):
        code, out, _ = run_cli(
            ["risk", "--model", "M1", "--sizes", "100,1000", "--reps", "3", "--seed", "4"], capsys
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "model,estimator,n,scaled_risk"
        assert len(lines) == 1 + 8

    def test_malformed_sizes_is_usage_error(self, capsys):
        for sizes in ("", "abc", "100;200", "1e3"):
            code, _, _ = run_cli(
                ["risk", "--model", "M1", "--sizes", sizes, "--reps", "3", "--seed", "4"], capsys
            )
            assert code == 2

    @pytest.mark.parametrize("sizes", ["1,100", "0", "-5"])
    def test_size_below_two_is_domain_error(self, sizes, capsys):
        code, _, _ = run_cli(
            ["risk", "--model", "M1", "--sizes", sizes, "--reps", "3", "--seed", "4"], capsys
        )
        assert code == 3


def test_module_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "pmfstack", "simulate", "--model", "M1", "--n", "20",
         "--reps", "2", "--seed", "0"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0
    assert result.stdout.startswith("model,estimator,rep,")
