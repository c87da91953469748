"""Tour of the series layer: coefficients, modes, and the basic algebra.

A series is just the vector of scaled Taylor coefficients Y(k), so that
y(x) = sum Y(k) x^k up to the truncation order.  Everything else in the
package is built on the handful of operations shown here.
"""

from fractions import Fraction as F

from emdenseries import (
    Mode,
    Series,
    add_scaled,
    cauchy_product,
    derivative_transform,
    evaluate,
    monomial,
    multi_product,
)

# Two modes: exact rationals (arbitrary precision) and IEEE doubles.
# Ints are fine in both; a float in a rational series is an error.
exact = Series([1, 0, F(-1, 6), 0, F(1, 120)], Mode.RATIONAL)
approx = exact.to_float()
print("exact coefficients: ", exact.coeffs)
print("float coefficients: ", approx.coeffs)

# Linear combinations and derivatives work coefficient-wise.  The
# derivative rule shifts and scales: F(k) = (k+1)...(k+n) Y(k+n).
print("\nsecond derivative:  ", derivative_transform(exact, 2).coeffs)
print("3*s - s:            ", add_scaled(3, exact, -1, exact).coeffs)

# Multiplication is the Cauchy convolution, truncated at the common
# order.  (1+x)^3 via repeated products:
one_plus_x = Series([1, 1, 0, 0], Mode.RATIONAL)
print("\n(1+x)^2:", cauchy_product(one_plus_x, one_plus_x).coeffs)
print("(1+x)^3:", multi_product([one_plus_x] * 3).coeffs)

# monomial(n, N) is the transform of x^n; monomial(0, N) is the product
# identity.
print("\nx^2 at order 4:    ", monomial(2, 4).coeffs)
print("identity check:    ", cauchy_product(exact, monomial(0, 4)) == exact)

# Evaluation is Horner's scheme; in rational mode it is exact.
print("\ny(1/2) exactly:    ", evaluate(exact, F(1, 2)))
print("y(0.5) in floats:  ", evaluate(approx, 0.5))

# Truncation means products of order-N series stay order-N: pad first
# when the higher terms matter.
a = Series([1, 1], Mode.RATIONAL)
print("\ntruncating product:", cauchy_product(a, a).coeffs)
print("padded product:    ", cauchy_product(a.pad(2), a.pad(2)).coeffs)
