"""Command-line front end.

Four subcommands::

    emdenseries solve    (--file F | --preset NAME [--param k=v]...) --order N
                         [--mode rational|float] [--format csv|text]
    emdenseries eval     ... (--at X | --range LO:HI:STEP)
    emdenseries compare  --preset NAME --order N --against exact|reference|numeric
                         [--range LO:HI:STEP] [--tol T]
    emdenseries presets

Exit codes: 0 success; 1 usage, parse, or validation failure; 2 a
domain error while solving or integrating; 3 a comparison exceeded the
requested --tol.  Tables go to stdout (CSV: comma-separated, LF line
endings, header row first); messages go to stderr.  Identical
invocations produce byte-identical output: rationals print as p/q and
floats with 17 significant digits.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from .kernels import KernelDomainError, TranscendentalSeedError
from .problem import (
    PRESET_CATALOG,
    PRESET_NAMES,
    EmdenProblem,
    ParseError,
    PresetId,
    build_preset,
    parse_number,
    parse_problem_file,
)
from .series import Mode, Series, evaluate
from .solver import ProblemValidationError, SolveError, solve
from .validation import (
    OracleUnavailableError,
    StepSizeUnderflowError,
    compare,
    compare_pointwise,
    exact_solution,
    reference_series,
    rk_oracle,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_TOLERANCE = 3


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits on its own; route everything through our exit codes
    def error(self, message):
        raise _UsageError(message)


@dataclass(frozen=True)
class OutputTable:
    """Rows of already-formatted cells plus a header."""

    headers: tuple
    rows: tuple

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            lines = [",".join(self.headers)]
            lines += [",".join(row) for row in self.rows]
            return "\n".join(lines) + "\n"
        widths = [len(h) for h in self.headers]
        for row in self.rows:
            for i, cell in enumerate(row):
                widths[i] = max(widths[i], len(cell))
        def fit(cells):
            return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
        lines = [fit(self.headers)]
        lines += [fit(row) for row in self.rows]
        return "\n".join(lines) + "\n"


def format_value(v) -> str:
    """Canonical cell text: exact p/q for rationals, 17 significant
    digits for floats (enough to round-trip)."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    return f"{float(v):.17g}"


def _parse_param(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise _UsageError(f"--param expects k=v, got {text!r}")
    try:
        return key.strip(), parse_number(value.strip())
    except ParseError as exc:
        raise _UsageError(f"bad value in --param {text!r}: {exc}") from None


def _parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"--range expects LO:HI:STEP, got {text!r}")
    try:
        lo, hi, step = (parse_number(p.strip()) for p in parts)
    except ParseError as exc:
        raise _UsageError(f"bad number in --range {text!r}: {exc}") from None
    if step <= 0:
        raise _UsageError("--range step must be positive")
    if hi < lo:
        raise _UsageError("--range needs LO <= HI")
    points = []
    x = lo
    while x <= hi:
        points.append(x)
        x += step
    return points


def _load_problem(args) -> EmdenProblem:
    if args.file and args.preset:
        raise _UsageError("give either --file or --preset, not both")
    params = dict(_parse_param(p) for p in (args.param or ()))
    if args.file:
        if params:
            raise _UsageError("--param only applies to --preset problems")
        try:
            with open(args.file, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise _UsageError(f"cannot read problem file {args.file!r}: {exc.strerror}") from None
        problem = parse_problem_file(data)
        order = args.order if args.order is not None else problem.order
        mode = Mode(args.mode) if args.mode else problem.mode
        if order != problem.order or mode is not problem.mode:
            try:
                problem = _rebuild(problem, order, mode)
            except (ValueError, TypeError) as exc:
                raise _UsageError(str(exc)) from None
        return problem
    if args.preset:
        if args.preset not in PRESET_NAMES:
            raise _UsageError(
                f"unknown preset {args.preset!r} (known: {', '.join(PRESET_NAMES)})"
            )
        if args.order is None:
            raise _UsageError("--order is required with --preset")
        mode = Mode(args.mode) if args.mode else Mode.FLOAT
        try:
            pid = PresetId.from_params(args.preset, params)
            return build_preset(pid, args.order, mode)
        except (ValueError, TypeError) as exc:
            raise _UsageError(str(exc)) from None
    raise _UsageError("a problem is required: --file PATH or --preset NAME")


def _rebuild(problem: EmdenProblem, order: int, mode: Mode) -> EmdenProblem:
    def conv(v):
        return float(v) if mode is Mode.FLOAT else v

    return EmdenProblem(
        p=conv(problem.p),
        a=conv(problem.a),
        f_poly=Series([conv(c) for c in problem.f_poly.coeffs], mode),
        g=problem.g,
        y0=conv(problem.y0),
        dy0=conv(problem.dy0),
        order=order,
        mode=mode,
    )


def _preset_id(args) -> PresetId:
    params = dict(_parse_param(p) for p in (args.param or ()))
    try:
        return PresetId.from_params(args.preset, params)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _emit(args, table: OutputTable):
    sys.stdout.write(table.render(args.format))


def cmd_solve(args) -> int:
    problem = _load_problem(args)
    report = solve(problem)
    rows = tuple(
        (str(k), format_value(c)) for k, c in enumerate(report.series.coeffs)
    )
    _emit(args, OutputTable(("k", "coefficient"), rows))
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args) -> int:
    problem = _load_problem(args)
    series = solve(problem).series
    if (args.at is None) == (args.range is None):
        raise _UsageError("eval needs exactly one of --at or --range")
    if args.at is not None:
        try:
            points = [parse_number(args.at)]
        except ParseError as exc:
            raise _UsageError(f"bad --at value {args.at!r}: {exc}") from None
    else:
        points = _parse_range(args.range)
    rows = []
    for x in points:
        xv = x if problem.mode is Mode.RATIONAL else float(x)
        rows.append((format_value(xv), format_value(evaluate(series, xv))))
    _emit(args, OutputTable(("x", "y"), tuple(rows)))
    return EXIT_OK


def cmd_compare(args) -> int:
    if not args.preset:
        raise _UsageError("compare works on --preset problems (oracles are preset-keyed)")
    problem = _load_problem(args)
    pid = _preset_id(args)
    series = solve(problem).series
    points = _parse_range(args.range) if args.range else [Fraction(i, 10) for i in range(21)]
    xs = [float(x) for x in points]
    if args.against == "reference":
        ref = reference_series(pid)
        top = max(series.order, ref.order)
        report = compare(
            series.to_float().pad(top), ref.pad(top), xs, tolerance=args.tol
        )
        label = "reference"
    elif args.against == "exact":
        report = compare_pointwise(
            series, lambda x: exact_solution(pid, x), xs, tolerance=args.tol
        )
        label = "exact"
    else:
        def oracle(x):
            if x == 0:
                return float(problem.y0)
            return rk_oracle(problem, x, x_start=min(1e-3, x / 2))

        report = compare_pointwise(series, oracle, xs, tolerance=args.tol)
        label = "numeric"
    rows = tuple(
        (format_value(r.x), format_value(r.a), format_value(r.b), format_value(r.abs_delta))
        for r in report.point_deltas
    )
    _emit(args, OutputTable(("x", "dtm", label, "abs_delta"), rows))
    flagged = report.mismatched_indices(1e-9)
    if flagged:
        detail = "; ".join(
            f"k={k}: {format_value(d.a)} vs {format_value(d.b)}"
            for k, d in ((k, report.coeff_deltas[k]) for k in flagged)
        )
        print(f"note: coefficient mismatch at {detail}", file=sys.stderr)
    if args.tol is not None and not report.within_tolerance:
        print(
            f"tolerance exceeded: max |delta| = {report.max_point_delta:.3e} > {args.tol:g}",
            file=sys.stderr,
        )
        return EXIT_TOLERANCE
    return EXIT_OK


def cmd_presets(args) -> int:
    rows = tuple(
        (
            info.name,
            f"p={info.p}",
            info.equation,
            f"y0={info.y0}",
            info.parameters,
            info.modes,
            info.exact_solution,
        )
        for info in PRESET_CATALOG
    )
    headers = ("preset", "p", "equation", "y(0)", "parameters", "modes", "exact solution")
    _emit(args, OutputTable(headers, rows))
    return EXIT_OK


def _add_problem_args(p, with_order=True):
    p.add_argument("--file", help="problem file (see README for the format)")
    p.add_argument("--preset", help="catalog problem name (see `presets`)")
    p.add_argument(
        "--param", action="append", metavar="K=V",
        help="preset parameter, e.g. m=5 or a=1/2 (repeatable)",
    )
    if with_order:
        p.add_argument("--order", type=int, help="truncation order N (highest power kept)")
    p.add_argument("--mode", choices=("rational", "float"), help="arithmetic mode")
    p.add_argument(
        "--format", choices=("csv", "text"), default="text", help="output table format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="emdenseries",
        description="Truncated power-series solutions of singular Emden-Fowler problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="print the coefficient table of a solution")
    _add_problem_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("eval", help="evaluate a solution at points")
    _add_problem_args(p)
    p.add_argument("--at", help="single evaluation point")
    p.add_argument("--range", help="LO:HI:STEP evaluation grid")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="compare a solution against an oracle")
    _add_problem_args(p)
    p.add_argument(
        "--against", choices=("exact", "reference", "numeric"), required=True,
        help="closed form, quoted literature series, or off-origin integration",
    )
    p.add_argument("--range", help="LO:HI:STEP comparison grid (default 0:2:0.1)")
    p.add_argument("--tol", type=float, help="exit 3 if any |delta| exceeds this")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("presets", help="list the built-in problems")
    p.add_argument("--format", choices=("csv", "text"), default="text")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ProblemValidationError, OracleUnavailableError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SolveError, KernelDomainError, TranscendentalSeedError, StepSizeUnderflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
