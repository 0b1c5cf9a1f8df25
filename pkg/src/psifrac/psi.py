"""Kernel functions psi: increasing, C^1, psi'(t) != 0 on [a, b].

A :class:`PsiFunction` bundles psi, its derivatives and its inverse on a
closed interval.  Builtins are backed by sympy expressions, which gives
analytic derivatives of every order; user-supplied kernels may register
plain callables and are then limited to the derivatives they provide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import sympy as sp

from .errors import DomainError, NumericsError

__all__ = ["PsiFunction", "builtin", "validate", "invert_numeric", "ValidationReport"]

_T = sp.Symbol("t", real=True)


@dataclass(frozen=True)
class PsiFunction:
    """Monotone kernel on [a, b] with derivative and inverse access.

    ``expr`` is an optional sympy expression in ``t``; when present it is
    the source of truth for derivatives of every order.  ``inverse`` is an
    analytic inverse when available, else ``None`` (numeric bisection is
    used instead).
    """

    name: str
    a: float
    b: float
    expr: Optional[sp.Expr] = None
    _eval: Optional[Callable[[float], float]] = None
    _deriv: Optional[Callable[[float], float]] = None
    _deriv2: Optional[Callable[[float], float]] = None
    inverse: Optional[Callable[[float], float]] = None
    _lambdified: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"need a < b, got [{self.a}, {self.b}]")
        if self.expr is None and (self._eval is None or self._deriv is None):
            raise DomainError("psi needs either an expression or eval+deriv callables")

    # -- evaluation ---------------------------------------------------------

    def _fn(self, order: int) -> Callable[[float], float]:
        fn = self._lambdified.get(order)
        if fn is None:
            fn = sp.lambdify(_T, sp.diff(self.expr, _T, order), "math")
            self._lambdified[order] = fn
        return fn

    def __call__(self, t: float) -> float:
        if self.expr is not None:
            return float(self._fn(0)(t))
        return float(self._eval(t))

    def deriv(self, t: float, order: int = 1) -> float:
        """order-th derivative of psi at t."""
        if order == 0:
            return self(t)
        if self.expr is not None:
            return float(self._fn(order)(t))
        if order == 1:
            return float(self._deriv(t))
        if order == 2:
            if self._deriv2 is None:
                raise DomainError(
                    f"psi '{self.name}' has no second derivative registered"
                )
            return float(self._deriv2(t))
        raise DomainError(
            f"psi '{self.name}' has no derivative of order {order} registered"
        )

    @property
    def has_expr(self) -> bool:
        return self.expr is not None

    def invert(self, v: float) -> float:
        """psi^{-1}(v), analytic if registered, else numeric."""
        if self.inverse is not None:
            return float(self.inverse(v))
        return invert_numeric(self, v)


def builtin(
    name: str,
    a: float,
    b: float,
    rho: float = 2.0,
    c: float = 1.0,
    d: float = 0.0,
) -> PsiFunction:
    """Builtin kernel families: identity, power(rho), exponential, affine(c, d)."""
    if name == "identity":
        return PsiFunction("identity", a, b, expr=_T, inverse=lambda v: v)
    if name == "power":
        if rho <= 0:
            raise DomainError(f"power kernel needs rho > 0, got {rho}")
        if a < 0:
            raise DomainError("power kernel requires a >= 0")
        if rho < 1 and a <= 0 < b:
            raise DomainError("power kernel t^rho with rho < 1 is singular at 0")
        return PsiFunction(
            f"power({rho})",
            a,
            b,
            expr=_T**rho,
            inverse=lambda v: v ** (1.0 / rho),
        )
    if name == "exponential":
        return PsiFunction("exponential", a, b, expr=sp.exp(_T), inverse=math.log)
    if name == "affine":
        if c <= 0:
            raise DomainError(f"affine kernel needs slope c > 0, got {c}")
        return PsiFunction(
            f"affine({c},{d})", a, b, expr=c * _T + d, inverse=lambda v: (v - d) / c
        )
    raise DomainError(f"unknown kernel family '{name}'")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    t: Optional[float] = None


def validate(psi: PsiFunction, samples: int = 64) -> ValidationReport:
    """Check psi' > 0 and inverse round-trip at Chebyshev-distributed points."""
    if samples < 2:
        raise DomainError("need at least 2 samples")
    k = np.arange(samples)
    nodes = np.cos((2 * k + 1) * np.pi / (2 * samples))
    ts = psi.a + (psi.b - psi.a) * (nodes + 1) / 2
    for t in sorted(float(t) for t in ts):
        d = psi.deriv(t)
        if not d > 0:
            return ValidationReport(False, f"psi'({t:.6g}) = {d:.6g} <= 0", t)
        back = psi.invert(psi(t))
        if abs(back - t) > 1e-10 * max(1.0, abs(t)):
            return ValidationReport(
                False, f"inverse round-trip off by {abs(back - t):.3g} at t={t:.6g}", t
            )
    return ValidationReport(True)


def invert_numeric(psi: PsiFunction, v: float) -> float:
    """Solve psi(t) = v on [a, b] by bisection then secant polish.

    psi is monotone increasing, so the root is unique when it exists.
    """
    lo, hi = psi.a, psi.b
    flo, fhi = psi(lo) - v, psi(hi) - v
    tol = 1e-12 * max(1.0, abs(v))
    if flo > tol or fhi < -tol:
        raise DomainError(f"v={v} outside [psi(a), psi(b)] = [{psi(lo)}, {psi(hi)}]")
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = psi(mid) - v
        if fm == 0.0:
            return mid
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
        if hi - lo < 1e-9 * max(1.0, abs(mid)):
            break
    # secant polish inside the bracket
    t0, t1 = lo, hi
    f0, f1 = flo, fhi
    for _ in range(30):
        if f1 == f0:
            break
        t2 = t1 - f1 * (t1 - t0) / (f1 - f0)
        t2 = min(max(t2, psi.a), psi.b)
        f2 = psi(t2) - v
        t0, f0, t1, f1 = t1, f1, t2, f2
        if abs(f1) <= tol:
            return t1
    t = 0.5 * (t0 + t1) if abs(f0) < abs(f1) else t1
    if abs(psi(t) - v) > 1e3 * tol:
        raise NumericsError(f"inversion of psi at v={v} did not converge")
    return t
