import math
from fractions import Fraction as F

import pytest

from emdenseries import (
    Mode,
    OracleUnavailableError,
    PresetId,
    build_preset,
    compare,
    compare_pointwise,
    evaluate,
    exact_solution,
    reference_series,
    rk_oracle,
    solve,
)
from emdenseries.validation import (
    DEFAULT_SAMPLE_GRID,
    evaluate_constant,
    has_exact_solution,
)

import oracles
from conftest import floating, rational, relclose


class TestExactSolutions:
    def test_values(self):
        assert exact_solution(PresetId("lane_emden", m=1), 0) == 1.0
        assert exact_solution(PresetId("lane_emden", m=0), 1.0) == pytest.approx(5 / 6)
        assert exact_solution(PresetId("lane_emden", m=5), 1.0) == pytest.approx(
            (4 / 3) ** -0.5
        )
        assert exact_solution(PresetId("example5", a=1), 1.0) == pytest.approx(
            -2 * math.log(2)
        )
        assert exact_solution(PresetId("example6", a=1), 0.5) == pytest.approx(
            math.exp(-0.25)
        )

    def test_unavailable(self):
        with pytest.raises(OracleUnavailableError):
            exact_solution(PresetId("sinh_case"), 0.5)
        with pytest.raises(OracleUnavailableError):
            exact_solution(PresetId("lane_emden", m=3), 0.5)

    def test_domain_violation(self):
        with pytest.raises(ValueError):
            exact_solution(PresetId("example5", a=-1), 1.5)

    def test_availability_helper(self):
        assert has_exact_solution(PresetId("lane_emden", m=5))
        assert not has_exact_solution(PresetId("sin_case"))


class TestConstantEvaluator:
    def test_arithmetic(self):
        assert evaluate_constant("61/1632960") == pytest.approx(61 / 1632960)
        assert evaluate_constant("-(e^2+1)/(12*e)") == pytest.approx(
            -(math.e**2 + 1) / (12 * math.e)
        )
        assert evaluate_constant("sin(1)*cos(1)/120") == pytest.approx(
            math.sin(1) * math.cos(1) / 120
        )
        assert evaluate_constant("2^-1") == 0.5
        assert evaluate_constant("sqrt(4) + pi*0") == 2.0

    def test_power_binds_tighter_than_division(self):
        assert evaluate_constant("sin(1)^2/3024") == pytest.approx(
            math.sin(1) ** 2 / 3024
        )

    def test_errors(self):
        from emdenseries import ParseError

        with pytest.raises(ParseError):
            evaluate_constant("frob(1)")
        with pytest.raises(ParseError):
            evaluate_constant("1 +")


class TestReferenceSeries:
    def test_isothermal_tail_coefficient(self):
        ref = reference_series(PresetId("isothermal"))
        assert ref.order == 10 and ref.mode is Mode.FLOAT
        assert ref[10] == pytest.approx(-4087 / 1796256000, rel=1e-15)

    def test_sinh_quarter_coefficient(self):
        ref = reference_series(PresetId("sinh_case"))
        assert ref[4] == pytest.approx((math.e**4 - 1) / (480 * math.e**2), rel=1e-15)

    def test_sin_quarter_coefficient(self):
        ref = reference_series(PresetId("sin_case"))
        assert ref[4] == pytest.approx(math.sin(1) * math.cos(1) / 120, rel=1e-15)

    def test_unavailable(self):
        with pytest.raises(OracleUnavailableError):
            reference_series(PresetId("lane_emden", m=1))


class TestRkOracle:
    def test_lane_emden_m1_hits_the_closed_form(self):
        problem = build_preset(PresetId("lane_emden", m=1), 10, Mode.RATIONAL)
        assert rk_oracle(problem, 1.0, 1e-3, 1e-10) == pytest.approx(
            math.sin(1.0), abs=1e-8
        )

    def test_example6_hits_the_closed_form(self):
        problem = build_preset(PresetId("example6", a=1), 10, Mode.RATIONAL)
        assert rk_oracle(problem, 0.5, 1e-3, 1e-10) == pytest.approx(
            math.exp(-0.25), abs=1e-8
        )

    def test_isothermal_agrees_with_series(self):
        problem = build_preset(PresetId("isothermal"), 10, Mode.RATIONAL)
        dtm = evaluate(solve(problem).series.to_float(), 0.5)
        assert rk_oracle(problem, 0.5, 1e-3, 1e-10) == pytest.approx(dtm, abs=1e-6)

    def test_target_at_start_returns_seed(self):
        problem = build_preset(PresetId("lane_emden", m=0), 6, Mode.RATIONAL)
        series = solve(problem).series.to_float()
        assert rk_oracle(problem, 1e-3) == evaluate(series, 1e-3)

    def test_bad_arguments(self):
        problem = build_preset(PresetId("lane_emden", m=0), 6, Mode.RATIONAL)
        with pytest.raises(ValueError):
            rk_oracle(problem, 0.5, x_start=0.0)
        with pytest.raises(ValueError):
            rk_oracle(problem, 1e-4, x_start=1e-3)


class TestCompare:
    def test_equal_series_all_zero(self):
        s = rational([1, 0, F(-1, 6)])
        report = compare(s, s)
        assert report.max_coeff_delta == 0.0
        assert report.max_point_delta == 0.0
        assert report.exact_match is True
        assert report.mismatched_indices() == ()

    def test_isothermal_against_quoted_series(self):
        dtm = solve(build_preset(PresetId("isothermal"), 10, Mode.RATIONAL)).series
        report = compare(dtm.to_float(), reference_series(PresetId("isothermal")))
        assert report.mismatched_indices(1e-9) == (10,)
        row = report.coeff_deltas[10]
        assert row.a == pytest.approx(-629 / 224532000, rel=1e-15)
        assert row.b == pytest.approx(-4087 / 1796256000, rel=1e-15)
        # agreement through x^8
        assert all(report.coeff_deltas[k].rel_delta < 1e-12 for k in range(9))

    def test_sin_case_against_quoted_series(self):
        dtm = solve(build_preset(PresetId("sin_case"), 10, Mode.FLOAT)).series
        report = compare(dtm, reference_series(PresetId("sin_case")))
        assert all(d.rel_delta < 1e-12 for d in report.coeff_deltas)

    def test_sinh_case_flags_the_known_misprints(self):
        dtm = solve(build_preset(PresetId("sinh_case"), 10, Mode.FLOAT)).series
        report = compare(dtm, reference_series(PresetId("sinh_case")))
        flagged = report.mismatched_indices(1e-9)
        assert 2 in flagged
        assert flagged == (2, 6, 8)
        assert report.coeff_deltas[4].rel_delta < 1e-12
        assert report.coeff_deltas[10].rel_delta < 1e-12

    def test_tolerance_verdict(self):
        a = rational([1, 0, F(-1, 6)])
        b = rational([1, 0, F(-1, 7)])
        grid = [0.0, 0.5, 1.0]
        assert compare(a, b, grid, tolerance=1e-1).within_tolerance is True
        assert compare(a, b, grid, tolerance=1e-4).within_tolerance is False
        assert compare(a, b, grid).within_tolerance is None

    def test_order_mismatch(self):
        with pytest.raises(ValueError):
            compare(rational([1, 0]), rational([1, 0, 0]))

    def test_default_grid(self):
        assert len(DEFAULT_SAMPLE_GRID) == 21
        assert DEFAULT_SAMPLE_GRID[0] == 0.0
        assert DEFAULT_SAMPLE_GRID[-1] == 2.0

    def test_pointwise_against_callable(self):
        s = floating([1, 0, -1 / 6])
        report = compare_pointwise(s, lambda x: 1 - x * x / 6, [0.0, 0.3, 0.9], 1e-12)
        assert report.within_tolerance is True
        assert report.coeff_deltas == ()


class TestConvergenceTowardClosedForms:
    CASES = [
        (PresetId("lane_emden", m=0), Mode.RATIONAL),
        (PresetId("lane_emden", m=1), Mode.RATIONAL),
        (PresetId("lane_emden", m=5), Mode.RATIONAL),
        (PresetId("example5", a=1), Mode.RATIONAL),
        (PresetId("example6", a=1), Mode.RATIONAL),
    ]

    def test_error_decreases_with_order(self):
        for pid, mode in self.CASES:
            errors = []
            for n in (4, 6, 8, 10):
                series = solve(build_preset(pid, n, mode)).series.to_float()
                errors.append(
                    abs(evaluate(series, 0.5) - exact_solution(pid, 0.5))
                )
            for lo, hi in zip(errors[1:], errors[:-1]):
                assert lo <= hi + 1e-14, (pid, errors)

    def test_rational_solves_match_taylor_exactly(self):
        # closed forms with rational Taylor coefficients agree bit for bit
        taylors = {
            "lane_emden_0": ([1, 0, F(-1, 6)] + [0] * 8, PresetId("lane_emden", m=0)),
            "lane_emden_5": (oracles.inverse_sqrt_one_plus_third(10), PresetId("lane_emden", m=5)),
            "example5": (oracles.minus_two_log_one_plus(1, 10), PresetId("example5", a=1)),
            "example6": (oracles.gaussian(1, 10), PresetId("example6", a=1)),
        }
        for name, (coeffs, pid) in taylors.items():
            series = solve(build_preset(pid, 10, Mode.RATIONAL)).series
            assert list(series.coeffs) == [F(c) for c in coeffs], name

    def test_float_solve_matches_sine_series(self):
        series = solve(build_preset(PresetId("lane_emden", m=1), 10, Mode.FLOAT)).series
        for got, want in zip(series.coeffs, oracles.sin_x_over_x(10)):
            assert relclose(got, float(want), 1e-12)
