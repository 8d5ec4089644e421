"""Scalar special functions backing the entropy estimators.

The workhorse is the principal branch of the Lambert W function on the
nonnegative reals, i.e. the inverse of w -> w * exp(w).  On top of it sit
a truncated asymptotic expansion of W, a solver for equations of the form
x = a*exp(-x) + b, and the Stirling-bound supremum constant used to
inscribe ellipsoids into classes of entire functions of exponential type.

All routines are pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

_RESIDUAL_TOL = 1e-13


@dataclass(frozen=True)
class WEvaluation:
    """Lambert W evaluation together with its backward error.

    ``value`` is W(x) (nonnegative on the implemented domain x >= 0),
    ``residual`` is |value * exp(value) - x|, and ``iterations`` counts
    the Halley steps taken (0 for the exact case x == 0).
    """

    value: float
    residual: float
    iterations: int


def _bisect_w(x: float) -> float:
    # w * e^w is strictly increasing on [0, inf), so a sign change brackets
    # the root once the upper end is pushed far enough out.
    lo = 0.0
    hi = max(1.0, math.log(x) if x > 1.0 else 1.0)
    while hi * math.exp(hi) < x:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lambert_w(x: float) -> WEvaluation:
    """Principal-branch W(x) for x >= 0.

    Halley iteration seeded with log1p(x) below e and with
    log(x) - log(log(x)) above, capped at 100 steps with a bisection
    fallback.  The result satisfies |W*exp(W) - x| <= 1e-13 * max(1, x),
    and W(0) = 0 exactly.
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"lambert_w requires a finite argument, got {x!r}")
    if x < 0.0:
        raise DomainError(f"lambert_w is implemented on [0, inf) only, got {x}")
    if x == 0.0:
        return WEvaluation(0.0, 0.0, 0)

    w = math.log1p(x) if x < math.e else math.log(x) - math.log(math.log(x))
    tol = _RESIDUAL_TOL * max(1.0, x)
    iterations = 0
    for _ in range(100):
        iterations += 1
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 1e-16 * (1.0 + abs(w)):
            break

    residual = abs(w * math.exp(w) - x)
    if residual > tol:
        w = _bisect_w(x)
        residual = abs(w * math.exp(w) - x)
        if residual > tol:
            raise ConvergenceError(
                f"lambert_w failed to reach residual {tol:g} at x={x!r} "
                f"(residual {residual:g})"
            )
    return WEvaluation(w, residual, iterations)


def lambert_w_asymptotic(x: float, order: int) -> float:
    """Truncated large-argument expansion of the Lambert W function.

    order 0 returns log(x), order 1 returns log(x) - log(log(x)), and
    order 2 adds the correction log(log(x))/log(x).  Requires x > e so
    that the iterated logarithm is positive.
    """
    x = float(x)
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order!r}")
    if not (math.isfinite(x) and x > math.e):
        raise DomainError(f"asymptotic expansion requires x > e, got {x!r}")
    lx = math.log(x)
    if order == 0:
        return lx
    llx = math.log(lx)
    if order == 1:
        return lx - llx
    return lx - llx + llx / lx


def solve_exp_equation(a: float, b: float) -> float:
    """Unique solution of x = a*exp(-x) + b for positive a and b.

    The solution is b + W(a * exp(-b)); it always satisfies x >= b.
    """
    a = float(a)
    b = float(b)
    for name, value in (("a", a), ("b", b)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"solve_exp_equation requires {name} > 0, got {value!r}")
    return b + lambert_w(a * math.exp(-b)).value


def stirling_supremum() -> float:
    """Supremum over integer k >= 1 of sqrt(2*pi*k) * exp(1/(12k)) / 2**k.

    The sequence decreases after k = 1, so the supremum equals the k = 1
    term sqrt(pi/2) * exp(1/12) ~ 1.3623; the maximum is taken over an
    explicit range rather than assumed.
    """
    terms = (
        math.sqrt(2.0 * math.pi * k) * math.exp(1.0 / (12.0 * k)) / 2.0**k
        for k in range(1, 65)
    )
    return max(terms)
