"""Problems from text files and problems built by hand.

The file format is a small INI dialect: [equation] holds p, a, the
polynomial f(x) and the nonlinearity g(y); [initial] holds y0 (dy0 must
be 0 - the singular point forces a flat start); [solve] holds the order
and the arithmetic mode.  Run from the repository root so the problems/
directory resolves.
"""

from pathlib import Path

from emdenseries import (
    EmdenProblem,
    Exp,
    Mode,
    Series,
    parse_expression,
    parse_problem_file,
    residual_series,
    solve,
)

here = Path(__file__).resolve().parent.parent
text = (here / "problems" / "example6.efp").read_text()
print(text)

problem = parse_problem_file(text)
print("parsed:", f"p={problem.p}", f"a={problem.a}", f"y0={problem.y0}",
      f"order={problem.order}", f"mode={problem.mode}")
print("solution:", [str(c) for c in solve(problem).series.coeffs[:8]], "...")

# The same model built in code, with a polynomial forcing profile
# f(x) = 1 + x^2 that no preset covers.
custom = EmdenProblem(
    p=2,
    a=1,
    f_poly=Series([1, 0, 1], Mode.RATIONAL),
    g=parse_expression("exp(y)"),
    y0=0,
    dy0=0,
    order=10,
    mode=Mode.RATIONAL,
)
series = solve(custom).series
print("\ncustom problem with f(x) = 1 + x^2:")
print("  ", [str(c) for c in series.coeffs])
print("residual check:", set(residual_series(custom, series).coeffs) == {0})

# Expression trees can also be assembled directly.
assert parse_expression("exp(y)") == Exp(1)
