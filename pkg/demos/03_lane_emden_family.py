"""The Lane-Emden family y'' + (2/x)y' + y^m = 0, y(0)=1, y'(0)=0.

For m = 0, 1, 5 the solutions are classical closed forms; the solver
reproduces their Taylor coefficients exactly in rational mode.  For
other m no closed form exists, but the first coefficients obey a simple
law in m that the recurrence reproduces.
"""

from fractions import Fraction as F

from emdenseries import Mode, PresetId, build_preset, evaluate, exact_solution, solve

for m in (0, 1, 5):
    series = solve(build_preset(PresetId("lane_emden", m=m), 10, Mode.RATIONAL)).series
    print(f"m = {m}: ", [str(c) for c in series.coeffs])

print("\nclosed forms: 1 - x^2/6,  sin(x)/x,  (1 + x^2/3)^(-1/2)")
for m in (0, 1, 5):
    series = solve(build_preset(PresetId("lane_emden", m=m), 10, Mode.RATIONAL)).series
    x = 0.5
    approx = evaluate(series.to_float(), x)
    exact = exact_solution(PresetId("lane_emden", m=m), x)
    print(f"m = {m}: series(0.5) = {approx:.12f}   exact = {exact:.12f}   "
          f"delta = {abs(approx - exact):.2e}")

# The first interesting coefficients as functions of m: Y(2) = -1/6
# always, Y(4) = m/120, Y(6) = -m(8m-5)/15120.
print("\n m   Y(4)        Y(6)")
for m in range(6):
    s = solve(build_preset(PresetId("lane_emden", m=m), 6, Mode.RATIONAL)).series
    assert s[4] == F(m, 120) and s[6] == F(-m * (8 * m - 5), 15120)
    print(f" {m}   {str(s[4]):<10}  {s[6]}")

# Non-integer indices work too (the power kernel handles real m as long
# as the seed is positive); coefficients stay exact rationals.
s = solve(build_preset(PresetId("lane_emden", m=F(3, 2)), 8, Mode.RATIONAL)).series
print("\nm = 3/2:", [str(c) for c in s.coeffs])
print("Y(4) == m/120:", s[4] == F(3, 2) / 120)
