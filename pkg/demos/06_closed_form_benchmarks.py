"""Two steeper problems with known closed forms.

    y'' + (5/x)y' + 8a(e^y + 2e^(y/2)) = 0, y(0)=0   ->  y = -2 ln(1 + a x^2)
    y'' + (8/x)y' + a(18y + 4y ln y)   = 0, y(0)=1   ->  y = exp(-a x^2)

Both solve exactly in rational mode, for any rational a, and their
coefficients inherit a scaling law in a from the closed forms: the
x^(2j) coefficient at parameter a is a^j times the coefficient at 1.
"""

from fractions import Fraction as F

from emdenseries import Mode, PresetId, build_preset, solve

print("example5, a = 1 (Taylor of -2 ln(1 + x^2)):")
s1 = solve(build_preset(PresetId("example5", a=1), 14, Mode.RATIONAL)).series
print("  ", [str(c) for c in s1.coeffs])

print("example6, a = 1 (Taylor of exp(-x^2)):")
s2 = solve(build_preset(PresetId("example6", a=1), 14, Mode.RATIONAL)).series
print("  ", [str(c) for c in s2.coeffs])

print("\nscaling law, example5 with a = 1/2:")
half = solve(build_preset(PresetId("example5", a=F(1, 2)), 14, Mode.RATIONAL)).series
print("   j   coeff(a=1/2)      (1/2)^j * coeff(a=1)   equal")
for j in range(1, 8):
    lhs = half[2 * j]
    rhs = F(1, 2) ** j * s1[2 * j]
    print(f"   {j}   {str(lhs):<16}  {str(rhs):<20}  {lhs == rhs}")

# The expression layer handles the mixed nonlinearities: a sum of two
# exponentials for example5 and y plus y*ln(y) for example6, each fed by
# its own kernel during the same solve.
report = solve(build_preset(PresetId("example5", a=1), 14, Mode.RATIONAL))
print("\nkernel steps taken while solving example5:", report.kernel_calls)
