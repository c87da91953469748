import subprocess
import sys
from fractions import Fraction as F

import pytest

from emdenseries import Mode, Series, evaluate
from emdenseries.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(out):
    lines = out.strip().split("\n")
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


class TestSolve:
    def test_lane_emden_m5_rational(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--preset", "lane_emden", "--param", "m=5",
            "--order", "10", "--mode", "rational", "--format", "csv",
        )
        assert code == 0
        header, rows = csv_rows(out)
        assert header == ["k", "coefficient"]
        assert rows[4] == ["4", "1/24"]
        assert len(rows) == 11

    def test_isothermal_tail(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--preset", "isothermal", "--order", "10",
            "--mode", "rational", "--format", "csv",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert rows[10] == ["10", "-629/224532000"]

    def test_csv_uses_lf_and_header_first(self, capsys):
        _, out, _ = run_cli(
            capsys, "solve", "--preset", "lane_emden", "--param", "m=0",
            "--order", "4", "--mode", "rational", "--format", "csv",
        )
        assert "\r" not in out
        assert out.startswith("k,coefficient\n")

    def test_missing_file_names_path(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--file", "missing.efp")
        assert code == 1
        assert "missing.efp" in err

    def test_file_solve(self, capsys, problems_dir):
        code, out, _ = run_cli(
            capsys, "solve", "--file", str(problems_dir / "example6.efp"),
            "--format", "csv",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert rows[4] == ["4", "1/2"]

    def test_file_order_and_mode_override(self, capsys, problems_dir):
        code, out, _ = run_cli(
            capsys, "solve", "--file", str(problems_dir / "isothermal.efp"),
            "--order", "4", "--mode", "float", "--format", "csv",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert len(rows) == 5
        assert float(rows[2][1]) == pytest.approx(-1 / 6)

    def test_float_only_preset_in_rational_mode(self, capsys):
        code, _, err = run_cli(
            capsys, "solve", "--preset", "sinh_case", "--order", "8",
            "--mode", "rational",
        )
        assert code == 1
        assert "rational mode" in err

    def test_usage_errors(self, capsys):
        assert run_cli(capsys, "solve", "--preset", "nope", "--order", "6")[0] == 1
        assert run_cli(capsys, "solve", "--preset", "isothermal")[0] == 1
        assert run_cli(capsys, "solve")[0] == 1
        assert run_cli(capsys, "solve", "--preset", "isothermal", "--order", "6",
                       "--param", "m")[0] == 1
        assert run_cli(capsys, "nonsense")[0] == 1

    def test_invalid_order_exits_1(self, capsys, problems_dir):
        code, _, err = run_cli(
            capsys, "solve", "--preset", "isothermal", "--order", "1",
        )
        assert code == 1 and "order" in err
        code, _, err = run_cli(
            capsys, "solve", "--file", str(problems_dir / "isothermal.efp"),
            "--order", "1",
        )
        assert code == 1 and "order" in err

    def test_param_rejected_with_file(self, capsys, problems_dir):
        code, _, err = run_cli(
            capsys, "solve", "--file", str(problems_dir / "isothermal.efp"),
            "--param", "m=1",
        )
        assert code == 1
        assert "--param" in err


class TestEval:
    def test_float_default_at_one(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--preset", "lane_emden", "--param", "m=0",
            "--order", "10", "--at", "1", "--format", "csv",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert rows[0][1].startswith("0.8333333333333333")

    def test_at_zero_echoes_initial_value(self, capsys):
        _, out, _ = run_cli(
            capsys, "eval", "--preset", "sinh_case", "--order", "8",
            "--at", "0", "--format", "csv",
        )
        _, rows = csv_rows(out)
        assert rows[0] == ["0", "1"]

    def test_example6_near_gaussian(self, capsys):
        _, out, _ = run_cli(
            capsys, "eval", "--preset", "example6", "--param", "a=1",
            "--order", "14", "--at", "0.5", "--format", "csv",
        )
        _, rows = csv_rows(out)
        assert float(rows[0][1]) == pytest.approx(0.7788008, abs=1e-6)

    def test_rational_eval_is_exact(self, capsys):
        _, out, _ = run_cli(
            capsys, "eval", "--preset", "lane_emden", "--param", "m=0",
            "--order", "10", "--mode", "rational", "--at", "1", "--format", "csv",
        )
        _, rows = csv_rows(out)
        assert rows[0] == ["1", "5/6"]

    def test_range_point_count(self, capsys):
        _, out, _ = run_cli(
            capsys, "eval", "--preset", "isothermal", "--order", "8",
            "--range", "0:2:0.1", "--format", "csv",
        )
        _, rows = csv_rows(out)
        assert len(rows) == 21

    def test_needs_exactly_one_target(self, capsys):
        base = ["eval", "--preset", "isothermal", "--order", "8"]
        assert run_cli(capsys, *base)[0] == 1
        assert run_cli(capsys, *base, "--at", "1", "--range", "0:1:0.5")[0] == 1

    def test_round_trip_against_solve(self, capsys):
        args = ["--preset", "lane_emden", "--param", "m=1", "--order", "10",
                "--mode", "rational"]
        _, solve_out, _ = run_cli(capsys, "solve", *args, "--format", "csv")
        _, rows = csv_rows(solve_out)
        coeffs = Series([F(cell) for _, cell in rows], Mode.RATIONAL)
        x = F(1, 3)
        expected = evaluate(coeffs, x)
        _, eval_out, _ = run_cli(capsys, "eval", *args, "--at", "1/3", "--format", "csv")
        _, eval_rows = csv_rows(eval_out)
        assert eval_rows[0][1] == str(expected)

    def test_round_trip_in_float_mode(self, capsys):
        # 17 significant digits round-trip doubles exactly
        args = ["--preset", "sin_case", "--order", "10", "--mode", "float"]
        _, solve_out, _ = run_cli(capsys, "solve", *args, "--format", "csv")
        _, rows = csv_rows(solve_out)
        coeffs = Series([float(cell) for _, cell in rows], Mode.FLOAT)
        expected = f"{evaluate(coeffs, 0.25):.17g}"
        _, eval_out, _ = run_cli(capsys, "eval", *args, "--at", "0.25", "--format", "csv")
        _, eval_rows = csv_rows(eval_out)
        assert eval_rows[0][1] == expected

    def test_deterministic_output(self, capsys):
        args = ["eval", "--preset", "sin_case", "--order", "10",
                "--range", "0:1:0.25", "--format", "csv"]
        first = run_cli(capsys, *args)
        second = run_cli(capsys, *args)
        assert first == second


class TestCompare:
    def test_reference_table_shape(self, capsys):
        code, out, err = run_cli(
            capsys, "compare", "--preset", "isothermal", "--order", "10",
            "--against", "reference", "--format", "csv",
        )
        assert code == 0
        header, rows = csv_rows(out)
        assert header == ["x", "dtm", "reference", "abs_delta"]
        assert len(rows) == 21
        assert "k=10" in err  # the quoted-series mismatch is reported

    def test_exact_comparison_passes_tolerance(self, capsys):
        code, _, _ = run_cli(
            capsys, "compare", "--preset", "lane_emden", "--param", "m=1",
            "--order", "10", "--against", "exact", "--range", "0:1:0.1",
            "--tol", "1e-6",
        )
        assert code == 0

    def test_tolerance_breach_exits_3(self, capsys):
        code, _, err = run_cli(
            capsys, "compare", "--preset", "lane_emden", "--param", "m=5",
            "--order", "10", "--against", "exact", "--range", "0:2:0.5",
            "--tol", "1e-6",
        )
        assert code == 3
        assert "tolerance exceeded" in err

    def test_domain_error_during_integration_exits_2(self, capsys):
        # the m = 3/2 polytrope crosses zero near x ~ 3.7, after which
        # y^(3/2) is undefined on the integrator's trajectory
        code, _, err = run_cli(
            capsys, "compare", "--preset", "lane_emden", "--param", "m=3/2",
            "--order", "10", "--against", "numeric", "--range", "0:5:1",
        )
        assert code == 2
        assert "negative" in err

    def test_no_closed_form_exits_1(self, capsys):
        code, _, err = run_cli(
            capsys, "compare", "--preset", "sinh_case", "--order", "8",
            "--against", "exact",
        )
        assert code == 1
        assert "no closed form" in err

    def test_numeric_oracle(self, capsys):
        code, out, _ = run_cli(
            capsys, "compare", "--preset", "example6", "--param", "a=1",
            "--order", "10", "--against", "numeric", "--range", "0:0.4:0.2",
            "--tol", "1e-5", "--format", "csv",
        )
        assert code == 0
        _, rows = csv_rows(out)
        assert len(rows) == 3


class TestPresets:
    def test_listing_contents(self, capsys):
        code, out, _ = run_cli(capsys, "presets")
        assert code == 0
        assert "isothermal" in out and "e^y" in out
        assert "example5" in out and "p=5" in out
        lines = out.strip().split("\n")
        assert len(lines) == 7  # header + six presets


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "emdenseries", "presets"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "lane_emden" in proc.stdout
