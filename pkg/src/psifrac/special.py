"""Gamma, reciprocal gamma and the generalized binomial coefficient.

Every series coefficient in the library funnels through these three
functions.  ``rgamma`` is finite (exactly zero) at the poles of gamma, so
series terms like 1/Gamma(m - alpha + 1) vanish cleanly when the argument
hits a non-positive integer.
"""

from __future__ import annotations

import math

from scipy import special as _sp

from .errors import PoleError

__all__ = ["gamma", "rgamma", "gen_binom"]


def gamma(x: float) -> float:
    """Gamma function for real x; raises at non-positive integers."""
    if x <= 0 and float(x).is_integer():
        raise PoleError(f"gamma pole at x={x}")
    return float(_sp.gamma(x))


def rgamma(x: float) -> float:
    """1/Gamma(x); exactly 0 at non-positive integers."""
    if x <= 0 and float(x).is_integer():
        return 0.0
    return float(_sp.rgamma(x))


def gen_binom(alpha: float, m: int) -> float:
    """Generalized binomial coefficient binom(alpha, m) for real alpha.

    Computed by the falling-factorial product
    prod_{j=0}^{m-1} (alpha - j) / m!, not by gamma ratios, so that
    alternating-sign coefficients with negative factors stay exact.
    """
    if m < 0:
        raise ValueError(f"lower index must be non-negative, got {m}")
    num = 1.0
    for j in range(m):
        num *= alpha - j
    return num / math.factorial(m)
