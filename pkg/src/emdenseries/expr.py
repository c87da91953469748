"""Expression trees for the nonlinearity g(y) and their streaming transform.

The solver needs the transform coefficients G(k) of g(y(x)) while y is
still being discovered, so expressions are evaluated incrementally: an
:class:`ExprState` owns one kernel per nonlinear leaf plus a memoized
coefficient prefix per subexpression, and each ``advance`` call appends
exactly one index everywhere.

Supported node kinds mirror the nonlinearities the kernels can handle:
``y`` itself, constants, scalar multiples, sums, products, and the leaf
functions y^m, exp(a*y), ln(a*y+b), sin/cos(a*y), sinh/cosh(a*y).  A
nonlinear function of anything other than plain y cannot even be built;
composition beyond that would need chained expansions the kernel table
does not provide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import kernels
from .series import Mode, Number, coerce, guarded_sum, zero


class GExpr:
    """Base class for expression nodes over the dependent variable y."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(GExpr):
    """The dependent variable y itself."""


@dataclass(frozen=True)
class Const(GExpr):
    value: object

    def __post_init__(self):
        if isinstance(self.value, int):
            object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Scale(GExpr):
    factor: object
    child: GExpr

    def __post_init__(self):
        if isinstance(self.factor, int):
            object.__setattr__(self, "factor", Fraction(self.factor))


@dataclass(frozen=True)
class Sum(GExpr):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValueError("empty sum")


@dataclass(frozen=True)
class Product(GExpr):
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise ValueError("empty product")


@dataclass(frozen=True)
class Power(GExpr):
    """y**exponent applied to the variable directly."""

    exponent: object


@dataclass(frozen=True)
class Exp(GExpr):
    alpha: object


@dataclass(frozen=True)
class Log(GExpr):
    alpha: object
    beta: object


@dataclass(frozen=True)
class Sin(GExpr):
    alpha: object


@dataclass(frozen=True)
class Cos(GExpr):
    alpha: object


@dataclass(frozen=True)
class Sinh(GExpr):
    alpha: object


@dataclass(frozen=True)
class Cosh(GExpr):
    alpha: object


NONLINEAR_KINDS = (Power, Exp, Log, Sin, Cos, Sinh, Cosh)


def walk(e: GExpr):
    """Yield every node of the tree, parents after children."""
    if isinstance(e, Scale):
        yield from walk(e.child)
    elif isinstance(e, (Sum, Product)):
        for c in e.children:
            yield from walk(c)
    yield e


def _kernel_for(node: GExpr, mode: Mode):
    """Fresh kernel for a nonlinear leaf plus the component index to read
    (the circular/hyperbolic kernels produce a pair)."""
    if isinstance(node, Power):
        return kernels.PowerKernel(node.exponent, mode), None
    if isinstance(node, Exp):
        return kernels.ExpKernel(node.alpha, mode), None
    if isinstance(node, Log):
        return kernels.LogKernel(node.alpha, node.beta, mode), None
    if isinstance(node, Sin):
        return kernels.SinCosKernel(node.alpha, mode), 0
    if isinstance(node, Cos):
        return kernels.SinCosKernel(node.alpha, mode), 1
    if isinstance(node, Sinh):
        return kernels.SinhCoshKernel(node.alpha, mode), 0
    if isinstance(node, Cosh):
        return kernels.SinhCoshKernel(node.alpha, mode), 1
    return None, None


def format_expr(e: GExpr) -> str:
    """Canonical text form, re-parseable by the expression parser."""

    def num(v):
        if isinstance(v, Fraction):
            return str(v)
        return repr(v)

    def arg(alpha, beta=None):
        if alpha == 1:
            s = "y"
        else:
            s = f"{num(alpha)}*y"
        if beta is not None and beta != 0:
            s += f"+{num(beta)}" if beta > 0 else f"-{num(-beta)}"
        return s

    def grouped(child, wrap_kinds):
        text = format_expr(child)
        return f"({text})" if isinstance(child, wrap_kinds) else text

    if isinstance(e, Var):
        return "y"
    if isinstance(e, Const):
        return num(e.value)
    if isinstance(e, Scale):
        return f"{num(e.factor)}*{grouped(e.child, (Sum, Scale))}"
    if isinstance(e, Sum):
        return " + ".join(grouped(c, (Sum,)) for c in e.children)
    if isinstance(e, Product):
        return "*".join(grouped(c, (Sum, Scale)) for c in e.children)
    if isinstance(e, Power):
        return f"y^{num(e.exponent)}"
    if isinstance(e, Exp):
        return f"exp({arg(e.alpha)})"
    if isinstance(e, Log):
        return f"ln({arg(e.alpha, e.beta)})"
    if isinstance(e, Sin):
        return f"sin({arg(e.alpha)})"
    if isinstance(e, Cos):
        return f"cos({arg(e.alpha)})"
    if isinstance(e, Sinh):
        return f"sinh({arg(e.alpha)})"
    if isinstance(e, Cosh):
        return f"cosh({arg(e.alpha)})"
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_scalar(e: GExpr, y: float) -> float:
    """Plain numeric value g(y) at a scalar y (float arithmetic).

    Used by the off-origin integrator, which works on numbers rather
    than coefficient streams.
    """
    if isinstance(e, Var):
        return float(y)
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Scale):
        return float(e.factor) * evaluate_scalar(e.child, y)
    if isinstance(e, Sum):
        return sum(evaluate_scalar(c, y) for c in e.children)
    if isinstance(e, Product):
        out = 1.0
        for c in e.children:
            out *= evaluate_scalar(c, y)
        return out
    if isinstance(e, Power):
        m = float(e.exponent)
        if y < 0 and not m.is_integer():
            raise kernels.KernelDomainError(f"y^({e.exponent}) at negative y = {y}")
        return float(y) ** m
    if isinstance(e, Exp):
        return math.exp(float(e.alpha) * y)
    if isinstance(e, Log):
        d = float(e.alpha) * y + float(e.beta)
        if d <= 0:
            raise kernels.KernelDomainError(f"ln argument {d} is not positive")
        return math.log(d)
    if isinstance(e, Sin):
        return math.sin(float(e.alpha) * y)
    if isinstance(e, Cos):
        return math.cos(float(e.alpha) * y)
    if isinstance(e, Sinh):
        return math.sinh(float(e.alpha) * y)
    if isinstance(e, Cosh):
        return math.cosh(float(e.alpha) * y)
    raise TypeError(f"not an expression node: {e!r}")


@dataclass(frozen=True)
class Finding:
    where: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple

    @property
    def ok(self) -> bool:
        return not self.findings

    def __str__(self):
        if self.ok:
            return "expression valid"
        return "; ".join(f"{f.where}: {f.message}" for f in self.findings)


def validate_expr(e: GExpr, y0, mode: Mode) -> ValidationReport:
    """Check every kernel precondition of ``e`` at the initial value y0.

    Runs each nonlinear leaf's seed computation and records what fails
    (log of a nonpositive argument, singular power seed, irrational seed
    in rational mode, cross-mode constants).  An empty report means the
    expression can be transformed.
    """
    findings = []
    try:
        y0 = coerce(y0, mode)
    except (ValueError, TypeError) as exc:
        return ValidationReport((Finding("y(0)", str(exc)),))
    for node in walk(e):
        label = format_expr(node)
        if isinstance(node, (Const, Scale)):
            value = node.value if isinstance(node, Const) else node.factor
            try:
                coerce(value, mode)
            except (ValueError, TypeError) as exc:
                findings.append(Finding(label, str(exc)))
            continue
        try:
            kernel, _ = _kernel_for(node, mode)
        except (ValueError, TypeError) as exc:
            findings.append(Finding(label, str(exc)))
            continue
        if kernel is None:
            continue
        try:
            kernel.advance([y0])
        except (ValueError, TypeError) as exc:
            findings.append(Finding(label, str(exc)))
    return ValidationReport(tuple(findings))


class ExprState:
    """Streaming transform of a whole expression tree.

    Memoized coefficient prefixes never change once emitted, so G(k) of
    the root depends on Y(0..k) only, exactly like the raw kernels.  One
    state serves one solve session; it is not thread-safe.
    """

    def __init__(
        self,
        expr: GExpr,
        mode: Mode,
        on_warn: Optional[Callable[[str], None]] = None,
    ):
        self.expr = expr
        self.mode = mode
        self._on_warn = on_warn
        self._memo: dict = {}
        self._kernels: dict = {}
        self._partials: dict = {}
        self._order: list = []
        self.kernel_calls = 0
        self._prepare(expr)

    def _prepare(self, node: GExpr):
        key = id(node)
        if key in self._memo:
            return
        if isinstance(node, Scale):
            self._prepare(node.child)
        elif isinstance(node, (Sum, Product)):
            for c in node.children:
                self._prepare(c)
            if isinstance(node, Product):
                # one partial-product prefix per extra factor
                self._partials[key] = [[] for _ in range(len(node.children) - 1)]
        kernel, component = _kernel_for(node, self.mode)
        if kernel is not None:
            self._kernels[key] = (kernel, component)
        self._memo[key] = []
        self._order.append(node)

    @property
    def next_index(self) -> int:
        return len(self._memo[id(self.expr)])

    def prefix(self) -> tuple:
        """All root coefficients G(0..next_index-1) emitted so far."""
        return tuple(self._memo[id(self.expr)])

    def advance(self, y_prefix: Sequence[Number]) -> Number:
        """Consume Y(0..k) for k == next_index; return G(k) of the root."""
        k = self.next_index
        if len(y_prefix) != k + 1:
            raise kernels.PrefixLengthError(
                f"expected Y(0..{k}) ({k + 1} values), got {len(y_prefix)}"
            )
        for node in self._order:
            memo = self._memo[id(node)]
            if len(memo) == k + 1:
                continue  # shared subtree already advanced this round
            memo.append(self._step(node, k, y_prefix))
        return self._memo[id(self.expr)][k]

    def _step(self, node: GExpr, k: int, y) -> Number:
        key = id(node)
        if key in self._kernels:
            kernel, component = self._kernels[key]
            self.kernel_calls += 1
            value = kernel.advance(y)
            return value if component is None else value[component]
        if isinstance(node, Var):
            return coerce(y[k], self.mode)
        if isinstance(node, Const):
            return coerce(node.value, self.mode) if k == 0 else zero(self.mode)
        if isinstance(node, Scale):
            return coerce(node.factor, self.mode) * self._memo[id(node.child)][k]
        if isinstance(node, Sum):
            return guarded_sum(
                (self._memo[id(c)][k] for c in node.children),
                zero(self.mode),
                self._on_warn,
                f"sum at index {k}",
            )
        if isinstance(node, Product):
            left = self._memo[id(node.children[0])]
            partials = self._partials[key]
            for j, child in enumerate(node.children[1:]):
                right = self._memo[id(child)]
                partials[j].append(
                    guarded_sum(
                        (left[r] * right[k - r] for r in range(k + 1)),
                        zero(self.mode),
                        self._on_warn,
                        f"product convolution at index {k}",
                    )
                )
                left = partials[j]
            return left[k]
        raise TypeError(f"not an expression node: {node!r}")
