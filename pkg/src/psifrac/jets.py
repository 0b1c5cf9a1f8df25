"""Symbolic jet carriers.

A :class:`JetFunction` is a scalar function of declared variables exposing
exact mixed partial derivatives up to a declared order; it carries the
functions u, f, g, eta, rho used everywhere else.  Derivatives come from a
sympy expression, never from finite differences.  Requesting a derivative
beyond the declared order raises, it is never approximated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import sympy as sp

from .errors import JetOrderError

__all__ = ["JetFunction", "SolutionJet", "X", "T", "U", "W"]

X = sp.Symbol("x", real=True)
T = sp.Symbol("t", real=True)
U = sp.Symbol("u", real=True)
#: placeholder for psi(t) - psi(a) in expressions given "in psi units"
W = sp.Symbol("w", real=True)


@dataclass(frozen=True)
class JetFunction:
    """Function of the declared sympy variables with exact partials."""

    expr: sp.Expr
    vars: tuple
    max_order: int = 8
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def of_t(cls, expr, max_order: int = 40) -> "JetFunction":
        return cls(sp.sympify(expr), (T,), max_order)

    @classmethod
    def of_xt(cls, expr, max_order: int = 12) -> "JetFunction":
        return cls(sp.sympify(expr), (X, T), max_order)

    @classmethod
    def of_u(cls, expr, max_order: int = 12) -> "JetFunction":
        return cls(sp.sympify(expr), (U,), max_order)

    @classmethod
    def of_xtu(cls, expr, max_order: int = 12) -> "JetFunction":
        return cls(sp.sympify(expr), (X, T, U), max_order)

    @property
    def arity(self) -> int:
        return len(self.vars)

    def diff_expr(self, orders: Sequence[int]) -> sp.Expr:
        """Mixed partial as a sympy expression; errors beyond max_order."""
        orders = tuple(int(o) for o in orders)
        if len(orders) != len(self.vars):
            raise ValueError(f"expected {len(self.vars)} orders, got {orders}")
        if any(o < 0 for o in orders):
            raise ValueError("negative derivative order")
        if sum(orders) > self.max_order:
            raise JetOrderError(
                f"derivative order {orders} exceeds declared jet order {self.max_order}"
            )
        e = self.expr
        for v, o in zip(self.vars, orders):
            if o:
                e = sp.diff(e, v, o)
        return e

    def _fn(self, orders: tuple):
        fn = self._cache.get(orders)
        if fn is None:
            fn = sp.lambdify(self.vars, self.diff_expr(orders), "math")
            self._cache[orders] = fn
        return fn

    def partial(self, orders: Sequence[int], *args: float) -> float:
        return float(self._fn(tuple(int(o) for o in orders))(*args))

    def __call__(self, *args: float) -> float:
        return self.partial((0,) * len(self.vars), *args)


@dataclass(frozen=True)
class SolutionJet:
    """u(x, t) with mixed partials on demand, symmetric in mixed order."""

    u: JetFunction

    @classmethod
    def from_expr(cls, expr, max_order: int = 12) -> "SolutionJet":
        return cls(JetFunction.of_xt(expr, max_order))

    @property
    def expr(self) -> sp.Expr:
        return self.u.expr

    def value(self, x: float, t: float) -> float:
        return self.u(x, t)

    def partial(self, i: int, j: int, x: float, t: float) -> float:
        """d^{i+j} u / dx^i dt^j at (x, t)."""
        return self.u.partial((i, j), x, t)
