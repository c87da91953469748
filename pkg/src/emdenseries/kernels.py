"""Incremental transform recurrences for nonlinear functions of a series.

Given the coefficients Y(0..k) of an unknown y(x), each kernel produces
the coefficients F(0..k) of f(y(x)) for one family of scalar functions
f, one index at a time.  The rules all share the same shape: F(0) is the
scalar seed f(Y(0)); F(k) for k >= 1 is a convolution of earlier F (and,
for the trigonometric pairs, the partner G) against the Y prefix.  They
follow from differentiating f(y(x)) once and transforming the resulting
first-order identity, e.g. for f = y^m from  y f' = m f y'.

Because F(k) depends on Y(0..k) only, a solver may interleave kernel
steps with the recurrence that produces Y itself; that causality is the
whole point of the streaming interface.  Each kernel instance belongs to
one solve session and must not be shared; fresh instances run in
parallel safely.

Rational mode keeps every coefficient exact, which is only possible when
the seed is exact: e^0, ln 1, sin 0 and friends.  Kernels refuse
irrational seeds in rational mode (:class:`TranscendentalSeedError`)
rather than rounding them.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .series import (
    Mode,
    ModeMismatchError,
    Series,
    coerce,
    one,
    zero,
)


class KernelDomainError(ValueError):
    """The scalar function is undefined or singular at the seed value."""


class TranscendentalSeedError(ValueError):
    """Rational mode was asked for a seed that is not exactly rational."""


class PrefixLengthError(ValueError):
    """The Y prefix handed to ``advance`` does not match the next index."""


def _as_integer(value):
    """Return ``value`` as a plain int when it is integral, else None."""
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return None


def _int_root(n: int, q: int):
    """Exact q-th root of a nonnegative int, or None."""
    if n in (0, 1):
        return n
    guess = round(n ** (1.0 / q))
    for cand in (guess - 1, guess, guess + 1):
        if cand >= 0 and cand**q == n:
            return cand
    return None


def _exact_rational_power(base: Fraction, exponent: Fraction) -> Fraction:
    """base**exponent as an exact Fraction, or TranscendentalSeedError."""
    p, q = exponent.numerator, exponent.denominator
    if q == 1:
        return base**p
    rn = _int_root(base.numerator, q)
    rd = _int_root(base.denominator, q)
    if rn is None or rd is None:
        raise TranscendentalSeedError(
            f"{base}**({exponent}) is not rational; use float mode"
        )
    return Fraction(rn, rd) ** p


class Kernel:
    """Base for the streaming transforms: grows F(0..k) one index per call."""

    paired = False

    def __init__(self, mode: Mode):
        self.mode = mode
        self.f: list = []

    @property
    def next_index(self) -> int:
        return len(self.f)

    def coefficients(self) -> tuple:
        return tuple(self.f)

    def advance(self, y_prefix):
        """Consume Y(0..k) for k == next_index and return F(k).

        Earlier entries of the prefix must be the same values seen on
        previous calls; the kernel never re-reads them, so causality
        holds by construction.
        """
        k = len(self.f)
        if len(y_prefix) != k + 1:
            raise PrefixLengthError(
                f"expected Y(0..{k}) ({k + 1} values), got {len(y_prefix)}"
            )
        coerce(y_prefix[k], self.mode)  # reject cross-mode prefixes early
        value = self._step(k, y_prefix)
        self.f.append(value)
        return value

    def _step(self, k, y):
        raise NotImplementedError


class PowerKernel(Kernel):
    """Transform of f(y) = y^m.

    For k >= 1 and a nonzero seed the recurrence

        F(k) = (1/Y(0)) * sum_{r=1..k} ((m+1) r - k)/k * Y(r) F(k-r)

    holds for arbitrary real m.  It divides by Y(0), so when m is a
    nonnegative integer and Y(0) == 0 the kernel silently switches to
    plain repeated products of Y (y^m is a perfectly regular polynomial
    there); any other exponent requires Y(0) > 0.
    """

    def __init__(self, exponent, mode: Mode):
        super().__init__(mode)
        self._int_exponent = _as_integer(exponent)
        if mode is Mode.RATIONAL and isinstance(exponent, float):
            raise ModeMismatchError("float exponent in rational mode")
        if mode is Mode.RATIONAL:
            self.exponent = Fraction(exponent)
        else:
            self.exponent = float(exponent)
        self._powers = None  # repeated-product fallback state

    def _step(self, k, y):
        m = self.exponent
        if k == 0:
            y0 = coerce(y[0], self.mode)
            mi = self._int_exponent
            if mi is not None and mi >= 0:
                if y0 == 0:
                    # y^m stays regular at a zero seed; convolve m copies
                    # of Y instead of running the singular recurrence.
                    self._powers = [[one(self.mode)]] + [
                        [zero(self.mode)] for _ in range(mi)
                    ]
                    return one(self.mode) if mi == 0 else zero(self.mode)
                return (
                    y0**mi if self.mode is Mode.RATIONAL else float(y0) ** mi
                )
            if y0 <= 0:
                raise KernelDomainError(
                    f"y^({m}) needs Y(0) > 0, got Y(0) = {y0}"
                )
            if self.mode is Mode.RATIONAL:
                return _exact_rational_power(y0, self.exponent)
            return y0**m
        if self._powers is not None:
            return self._fallback_step(k, y)
        acc = zero(self.mode)
        for r in range(1, k + 1):
            acc += ((m + 1) * r - k) * y[r] * self.f[k - r]
        return acc / (k * y[0])

    def _fallback_step(self, k, y):
        mi = self._int_exponent
        if mi == 0:
            return zero(self.mode)
        powers = self._powers
        powers[1].append(y[k])
        for j in range(2, mi + 1):
            acc = zero(self.mode)
            for r in range(k + 1):
                acc += powers[j - 1][r] * y[k - r]
            powers[j].append(acc)
        return powers[mi][k]


class ExpKernel(Kernel):
    """Transform of f(y) = exp(alpha * y):

        F(0) = exp(alpha Y(0)),
        F(k) = (alpha/k) * sum_{r=0..k-1} (r+1) Y(r+1) F(k-1-r).
    """

    def __init__(self, alpha, mode: Mode):
        super().__init__(mode)
        self.alpha = coerce(alpha, mode)

    def _step(self, k, y):
        if k == 0:
            s = self.alpha * coerce(y[0], self.mode)
            if self.mode is Mode.RATIONAL:
                if s != 0:
                    raise TranscendentalSeedError(
                        f"exp({s}) is irrational; rational mode needs alpha*Y(0) == 0"
                    )
                return one(self.mode)
            return math.exp(s)
        acc = zero(self.mode)
        for r in range(k):
            acc += (r + 1) * y[r + 1] * self.f[k - 1 - r]
        return self.alpha * acc / k


class LogKernel(Kernel):
    """Transform of f(y) = ln(alpha * y + beta), alpha*y + beta > 0:

        F(0) = ln(d),             d = alpha Y(0) + beta
        F(1) = alpha Y(1) / d
        F(k) = (alpha/d) * [ Y(k) - (1/k) sum_{r=0..k-2} (r+1) F(r+1) Y(k-1-r) ]
    """

    def __init__(self, alpha, beta, mode: Mode):
        super().__init__(mode)
        self.alpha = coerce(alpha, mode)
        self.beta = coerce(beta, mode)
        self._d = None

    def _step(self, k, y):
        if k == 0:
            d = self.alpha * coerce(y[0], self.mode) + self.beta
            if d <= 0:
                raise KernelDomainError(
                    f"ln argument alpha*Y(0)+beta = {d} is not positive"
                )
            self._d = d
            if self.mode is Mode.RATIONAL:
                if d != 1:
                    raise TranscendentalSeedError(
                        f"ln({d}) is irrational; rational mode needs alpha*Y(0)+beta == 1"
                    )
                return zero(self.mode)
            return math.log(d)
        if k == 1:
            return self.alpha * y[1] / self._d
        acc = zero(self.mode)
        for r in range(k - 1):
            acc += (r + 1) * self.f[r + 1] * y[k - 1 - r]
        if self.mode is Mode.RATIONAL:
            inner = y[k] - Fraction(1, k) * acc
        else:
            inner = y[k] - acc / k
        return self.alpha * inner / self._d


class _CircularKernel(Kernel):
    """Shared machinery for the sin/cos and sinh/cosh pairs.

    Both partners are produced together because each recurrence feeds on
    the other:

        F(k) = (alpha/k)        * sum_{r=0..k-1} (k-r) G(r) Y(k-r)
        G(k) = (sign*alpha/k)   * sum_{r=0..k-1} (k-r) F(r) Y(k-r)

    with sign = -1 for the circular pair and +1 for the hyperbolic one.
    """

    paired = True
    _sign = -1

    def __init__(self, alpha, mode: Mode):
        super().__init__(mode)
        self.alpha = coerce(alpha, mode)
        self.g: list = []

    def coefficients(self):
        return tuple(self.f), tuple(self.g)

    def _seeds(self, s):
        raise NotImplementedError

    def advance(self, y_prefix):
        k = len(self.f)
        if len(y_prefix) != k + 1:
            raise PrefixLengthError(
                f"expected Y(0..{k}) ({k + 1} values), got {len(y_prefix)}"
            )
        coerce(y_prefix[k], self.mode)
        if k == 0:
            s = self.alpha * coerce(y_prefix[0], self.mode)
            fv, gv = self._seeds(s)
        else:
            facc = zero(self.mode)
            gacc = zero(self.mode)
            for r in range(k):
                w = (k - r) * y_prefix[k - r]
                facc += w * self.g[r]
                gacc += w * self.f[r]
            fv = self.alpha * facc / k
            gv = self._sign * self.alpha * gacc / k
        self.f.append(fv)
        self.g.append(gv)
        return fv, gv


class SinCosKernel(_CircularKernel):
    """Paired transform of sin(alpha*y) and cos(alpha*y)."""

    _sign = -1

    def _seeds(self, s):
        if self.mode is Mode.RATIONAL:
            if s != 0:
                raise TranscendentalSeedError(
                    f"sin({s}), cos({s}) are irrational; rational mode needs alpha*Y(0) == 0"
                )
            return zero(self.mode), one(self.mode)
        return math.sin(s), math.cos(s)


class SinhCoshKernel(_CircularKernel):
    """Paired transform of sinh(alpha*y) and cosh(alpha*y)."""

    _sign = 1

    def _seeds(self, s):
        if self.mode is Mode.RATIONAL:
            if s != 0:
                raise TranscendentalSeedError(
                    f"sinh({s}), cosh({s}) are irrational; rational mode needs alpha*Y(0) == 0"
                )
            return zero(self.mode), one(self.mode)
        return math.sinh(s), math.cosh(s)


def batch_transform(kernel: Kernel, y: Series):
    """Drive a fresh kernel across a whole series.

    Returns one Series for plain kernels and a (F, G) pair for the
    paired ones.  Intended for tests and post-hoc work on a finished
    series; the solver itself streams.
    """
    if kernel.next_index != 0:
        raise ValueError("batch_transform needs a fresh kernel")
    if kernel.mode is not y.mode:
        raise ModeMismatchError(f"{kernel.mode} kernel with a {y.mode} series")
    for k in range(y.order + 1):
        kernel.advance(y.coeffs[: k + 1])
    if kernel.paired:
        fs, gs = kernel.coefficients()
        return Series(fs, y.mode), Series(gs, y.mode)
    return Series(kernel.coefficients(), y.mode)
