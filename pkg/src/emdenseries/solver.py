"""The coefficient recurrence that actually solves the problems.

Multiplying   y'' + (p/x) y' + a f(x) g(y) = 0   through by x removes
the singularity:   x y'' + p y' + a x f(x) g(y) = 0.  Transforming term
by term (index shift for the x factors, the derivative rule for y'' and
y') collapses the equation to one explicit, causal step

    Y(k+1) = -a / ((k+1)(k+p)) * sum_{r=0..k} XF(r) G(k-r),

where XF is the coefficient vector of x*f(x) (so XF(0) = 0 always) and
G is the streaming transform of g(y).  The k = 0 step forces Y(1) = 0,
which is also what y'(0) = 0 demands; the two initial data fill Y(0)
and Y(1) and everything above follows.  Because XF(0) = 0, the sum only
ever touches G(0..k-1), which is computable from Y(0..k-1): the
recurrence is causal and runs in a single pass.

For p > 0 the denominator (k+1)(k+p) is positive for every k >= 0, so
no step can divide by zero; that is checked once when the problem is
built (p > 0 is a model invariant).
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import ExprState, validate_expr
from .kernels import KernelDomainError, TranscendentalSeedError
from .problem import EmdenProblem
from .series import Mode, Series, coerce, guarded_sum, zero


class ProblemValidationError(ValueError):
    """The nonlinearity fails a kernel precondition at the initial value."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"problem cannot be transformed: {report}")


class SolveError(ValueError):
    """A kernel or domain error occurred mid-recurrence."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"at coefficient index {index}: {message}")


@dataclass(frozen=True)
class SolveReport:
    """Everything one solve produced.

    ``g_prefix`` holds the transform coefficients of g(y) the recurrence
    consumed, ``warnings`` any float-mode cancellation diagnostics, and
    ``kernel_calls`` the number of kernel steps taken.
    """

    series: Series
    problem: EmdenProblem
    g_prefix: tuple
    warnings: tuple
    kernel_calls: int


def transform_initial_conditions(y0, dy0):
    """Initial data as the first two coefficients: Y(0) = y(0), Y(1) = y'(0).

    The scaled-derivative definition Y(k) = y^(k)(0)/k! makes both
    immediate; y'(0) must be zero for the problem class handled here.
    """
    if dy0 != 0:
        raise ValueError(f"y'(0) must be 0, got {dy0!r}")
    return y0, dy0


def _shifted_f(problem: EmdenProblem) -> list:
    """Coefficients of x*f(x), truncated at the solve order."""
    z = zero(problem.mode)
    xf = [z] + list(problem.f_poly.coeffs)
    xf = xf[: problem.order + 1]
    xf += [z] * (problem.order + 1 - len(xf))
    return xf


def solve(problem: EmdenProblem) -> SolveReport:
    """Run the recurrence up to the problem's truncation order."""
    report = validate_expr(problem.g, problem.y0, problem.mode)
    if not report.ok:
        raise ProblemValidationError(report)
    mode = problem.mode
    n = problem.order
    warnings: list = []
    y0, dy0 = transform_initial_conditions(problem.y0, problem.dy0)
    y = [coerce(y0, mode), coerce(dy0, mode)]
    xf = _shifted_f(problem)
    state = ExprState(problem.g, mode, on_warn=warnings.append)
    g_prefix: list = []
    a = problem.a
    p = problem.p
    for k in range(1, n):
        while len(g_prefix) < k:
            j = len(g_prefix)
            try:
                g_prefix.append(state.advance(y[: j + 1]))
            except (KernelDomainError, TranscendentalSeedError, ZeroDivisionError, OverflowError) as exc:
                raise SolveError(j, str(exc)) from exc
        conv = guarded_sum(
            (xf[r] * g_prefix[k - r] for r in range(1, k + 1) if xf[r] != 0),
            zero(mode),
            warnings.append if mode is Mode.FLOAT else None,
            f"recurrence step k={k}",
        )
        y.append(-a * conv / ((k + 1) * (k + p)))
    return SolveReport(
        series=Series(y, mode),
        problem=problem,
        g_prefix=tuple(g_prefix),
        warnings=tuple(warnings),
        kernel_calls=state.kernel_calls,
    )


def residual_series(problem: EmdenProblem, series: Series) -> Series:
    """Apply the x-multiplied operator to a candidate series.

    Re-expands g over the candidate with batch kernel runs (no reuse of
    anything a solve cached) and returns the coefficients of

        x y'' + p y' + a x f(x) g(y)

    at the problem's order.  A candidate produced by :func:`solve` at
    the same order leaves every returned coefficient zero; padding a
    lower-order solution up and evaluating it in a higher-order problem
    exposes where its accuracy stops.
    """
    if series.order != problem.order:
        raise ValueError(
            f"candidate order {series.order} != problem order {problem.order}; pad first"
        )
    if series.mode is not problem.mode:
        raise ValueError(f"candidate is {series.mode}, problem is {problem.mode}")
    n = problem.order
    mode = problem.mode
    state = ExprState(problem.g, mode)
    g_coeffs = []
    for j in range(n):
        try:
            g_coeffs.append(state.advance(series.coeffs[: j + 1]))
        except (KernelDomainError, TranscendentalSeedError, ZeroDivisionError) as exc:
            raise SolveError(j, str(exc)) from exc
    xf = _shifted_f(problem)
    a = problem.a
    p = problem.p
    out = []
    for k in range(n + 1):
        ynext = series.coeffs[k + 1] if k + 1 <= n else zero(mode)
        acc = (k + 1) * (k + p) * ynext
        conv = zero(mode)
        for r in range(1, k + 1):
            if xf[r] != 0:
                conv += xf[r] * g_coeffs[k - r]
        out.append(acc + a * conv)
    return Series(out, mode)
