"""Decay-rate functions and the semi-axis sequences they generate.

A decay rate function maps (t*, infinity) onto (0, infinity) while its
ratio to t is non-decreasing there.  Semi-axes derive from it as
mu_n = c0 * 2**(-rate(n)), so faster-growing rates mean faster-decaying
axes.  Two closed-form families cover the toolkit's needs:

* linear       rate(t) = c * t
* superlinear  rate(t) = c * t * (log2(t) - c')

plus an escape hatch for user-supplied callables.  All logarithms are
base 2 so that downstream entropies come out in bits.

The built-in families extend naturally to all t >= 0 (with 0*log(0) = 0),
which is how sums over integer indices at or below t* are evaluated; a
custom callable has no such extension and the corresponding operations
refuse it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError
from .special_functions import lambert_w

_LN2 = math.log(2.0)

FAMILY_LINEAR = "linear"
FAMILY_SUPERLINEAR = "superlinear"
FAMILY_CUSTOM = "custom"


@dataclass(frozen=True)
class DecayRateSpec:
    """A decay rate function plus the scale c0 of the semi-axes it drives.

    ``t_star`` marks the left end of the domain on which the defining
    properties hold; the linear family has t_star = 0 and the
    superlinear family t_star = 2**c_prime.
    """

    family: str
    t_star: float
    c0: float
    c: Optional[float] = None
    c_prime: Optional[float] = None
    psi_fn: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.family not in (FAMILY_LINEAR, FAMILY_SUPERLINEAR, FAMILY_CUSTOM):
            raise DomainError(f"unknown decay-rate family {self.family!r}")
        if not (math.isfinite(self.c0) and self.c0 > 0.0):
            raise DomainError(f"c0 must be positive and finite, got {self.c0!r}")
        if not (math.isfinite(self.t_star) and self.t_star >= 0.0):
            raise DomainError(f"t_star must be >= 0, got {self.t_star!r}")
        if self.family == FAMILY_CUSTOM:
            if self.psi_fn is None:
                raise DomainError("custom family requires a callable")
        else:
            if self.c is None or not (math.isfinite(self.c) and self.c > 0.0):
                raise DomainError(f"family {self.family!r} requires c > 0, got {self.c!r}")
            if self.family == FAMILY_SUPERLINEAR and self.c_prime is None:
                raise DomainError("superlinear family requires c_prime")

    @classmethod
    def linear(cls, c: float, c0: float = 1.0) -> "DecayRateSpec":
        return cls(family=FAMILY_LINEAR, t_star=0.0, c0=c0, c=c)

    @classmethod
    def superlinear(cls, c: float, c_prime: float, c0: float = 1.0) -> "DecayRateSpec":
        # c_prime may be any real: the domain edge 2**c_prime is then < 1
        # for nonpositive values and every integer index is admissible.
        return cls(
            family=FAMILY_SUPERLINEAR,
            t_star=2.0**c_prime,
            c0=c0,
            c=c,
            c_prime=c_prime,
        )

    @classmethod
    def custom(cls, fn: Callable[[float], float], t_star: float, c0: float = 1.0) -> "DecayRateSpec":
        return cls(family=FAMILY_CUSTOM, t_star=t_star, c0=c0, psi_fn=fn)

    def to_json_dict(self) -> dict:
        if self.family == FAMILY_CUSTOM:
            raise DomainError("custom decay rates are not JSON-serializable")
        return {
            "family": self.family,
            "c": self.c,
            "c_prime": self.c_prime,
            "t_star": self.t_star,
            "c0": self.c0,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "DecayRateSpec":
        family = data.get("family")
        if family == FAMILY_LINEAR:
            return cls.linear(float(data["c"]), float(data.get("c0", 1.0)))
        if family == FAMILY_SUPERLINEAR:
            return cls.superlinear(
                float(data["c"]), float(data["c_prime"]), float(data.get("c0", 1.0))
            )
        raise DomainError(f"cannot deserialize decay-rate family {family!r}")


def _natural(spec: DecayRateSpec, t):
    """Family formula on its natural domain (t >= 0 for the built-ins).

    Accepts scalars or numpy arrays.  Custom callables are only defined
    above t_star, so anything at or below it is rejected.
    """
    if spec.family == FAMILY_LINEAR:
        return spec.c * np.asarray(t, dtype=float) if np.ndim(t) else spec.c * float(t)
    if spec.family == FAMILY_SUPERLINEAR:
        arr = np.asarray(t, dtype=float)
        if np.any(arr < 0.0):
            raise DomainError("superlinear rate is undefined for negative arguments")
        safe = np.where(arr > 0.0, arr, 1.0)
        out = np.where(arr > 0.0, spec.c * arr * (np.log2(safe) - spec.c_prime), 0.0)
        return out if np.ndim(t) else float(out)
    if np.ndim(t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr <= spec.t_star):
            raise DomainError(
                f"custom rate has no natural extension at or below t_star={spec.t_star}"
            )
        return np.array([spec.psi_fn(float(v)) for v in arr])
    if float(t) <= spec.t_star:
        raise DomainError(
            f"custom rate has no natural extension at or below t_star={spec.t_star}"
        )
    return float(spec.psi_fn(float(t)))


def eval_psi(spec: DecayRateSpec, t: float) -> float:
    """Evaluate the decay rate at t; the contract domain is t > t_star."""
    t = float(t)
    if not math.isfinite(t) or t <= spec.t_star:
        raise DomainError(f"decay rate requires t > t_star={spec.t_star}, got {t!r}")
    return float(_natural(spec, t))


def invert_psi(spec: DecayRateSpec, u: float) -> float:
    """Inverse of the decay rate, mapping (0, inf) back to (t_star, inf).

    Linear inverts as u/c; superlinear through the closed form
    2**c' * exp(W(u * ln(2) / (c * 2**c'))); custom rates by bracketing
    and a safeguarded root find.
    """
    u = float(u)
    if not (math.isfinite(u) and u > 0.0):
        raise DomainError(f"inversion requires u > 0, got {u!r}")
    if spec.family == FAMILY_LINEAR:
        return u / spec.c
    if spec.family == FAMILY_SUPERLINEAR:
        scale = 2.0**spec.c_prime
        return scale * math.exp(lambert_w(u * _LN2 / (spec.c * scale)).value)

    # Exponential bracketing outward from t_star, then brentq.  The rate
    # is strictly increasing above t_star, so a bracket always exists.
    offset = 1.0
    while _natural(spec, spec.t_star + offset) < u:
        offset *= 2.0
        if offset > 2.0**60:
            raise ConvergenceError(f"failed to bracket inverse of u={u} within 2**60")
    hi = spec.t_star + offset
    offset_lo = offset / 2.0
    while offset_lo > 0.0 and _natural(spec, spec.t_star + offset_lo) > u:
        offset_lo /= 2.0
        if offset_lo < 1e-300:
            raise ConvergenceError(f"failed to bracket inverse of u={u} near t_star")
    lo = spec.t_star + offset_lo
    if _natural(spec, lo) >= u:
        return lo
    return float(brentq(lambda t: _natural(spec, t) - u, lo, hi, xtol=1e-13, maxiter=200))


def psi_average(spec: DecayRateSpec, d: int) -> float:
    """Mean gap between the rate at d and at the indices 1..d, in bits.

    Zero at d = 1; equal to c*(d-1)/2 for the linear family.  Indices at
    or below t_star contribute through the family's natural extension,
    which a custom callable does not have.
    """
    d = _check_index(d, minimum=1)
    if spec.family == FAMILY_CUSTOM and spec.t_star >= 1.0:
        raise DomainError(
            "average over indices 1..d needs the rate below "
            f"t_star={spec.t_star}, which a custom rate does not define"
        )
    values = _natural(spec, np.arange(1, d + 1, dtype=float))
    return float(_natural(spec, float(d)) - np.mean(values))


def psi_difference(spec: DecayRateSpec, d: int) -> float:
    """One-step increment of the decay rate at d (defined for d >= 2)."""
    d = _check_index(d, minimum=2)
    if spec.family == FAMILY_CUSTOM and d - 1 <= spec.t_star:
        raise DomainError(
            f"increment at d={d} needs the rate at d-1 <= t_star={spec.t_star}"
        )
    return float(_natural(spec, float(d)) - _natural(spec, float(d - 1)))


class PsiStatistics(NamedTuple):
    """Average and increment of the decay rate at a given dimension."""

    d: int
    delta: float
    zeta: Optional[float]


def psi_statistics(spec: DecayRateSpec, d: int) -> PsiStatistics:
    d = _check_index(d, minimum=1)
    zeta = psi_difference(spec, d) if d >= 2 else None
    return PsiStatistics(d, psi_average(spec, d), zeta)


def semi_axes(spec: DecayRateSpec, n_max: int) -> np.ndarray:
    """Semi-axis sequence mu_n = c0 * 2**(-rate(n)) for n = 1..n_max."""
    n_max = _check_index(n_max, minimum=1)
    if spec.family == FAMILY_CUSTOM and spec.t_star >= 1.0:
        raise DomainError(
            f"semi-axes need the rate at every index >= 1, but t_star={spec.t_star}"
        )
    return spec.c0 * np.exp2(-np.asarray(_natural(spec, np.arange(1, n_max + 1, dtype=float))))


def log2_semi_axes(spec: DecayRateSpec, n_max: int) -> np.ndarray:
    """log2 of the semi-axis sequence; immune to underflow at large n."""
    n_max = _check_index(n_max, minimum=1)
    if spec.family == FAMILY_CUSTOM and spec.t_star >= 1.0:
        raise DomainError(
            f"semi-axes need the rate at every index >= 1, but t_star={spec.t_star}"
        )
    return math.log2(spec.c0) - np.asarray(_natural(spec, np.arange(1, n_max + 1, dtype=float)))


@dataclass(frozen=True)
class DecayRateReport:
    """Outcome of validating a decay rate on a grid."""

    violations: tuple
    notes: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def check_decay_rate(spec: DecayRateSpec, grid: Iterable[float]) -> DecayRateReport:
    """Check positivity and the non-decreasing ratio property on a grid.

    The grid must be strictly increasing with every point above t_star.
    Violations are reported, not raised; built-in families produce none.
    """
    pts = np.asarray(list(grid), dtype=float)
    if pts.size == 0:
        raise DomainError("validation grid must be non-empty")
    if np.any(pts <= spec.t_star) or np.any(np.diff(pts) <= 0.0):
        raise DomainError("grid must be strictly increasing with all points > t_star")

    values = np.asarray(_natural(spec, pts))
    violations = []
    for t, v in zip(pts, values):
        if not v > 0.0:
            violations.append(f"rate not positive at t={t}: {v}")
    ratios = values / pts
    for i in range(1, len(pts)):
        if ratios[i] < ratios[i - 1] - 1e-12:
            violations.append(
                f"rate(t)/t decreases from t={pts[i - 1]} ({ratios[i - 1]}) "
                f"to t={pts[i]} ({ratios[i]})"
            )
    notes = []
    if spec.t_star >= 1.0:
        notes.append(
            f"integer indices <= t_star={spec.t_star} rely on the family's "
            "natural extension"
        )
    return DecayRateReport(tuple(violations), tuple(notes))


class RatioConstant(NamedTuple):
    """Geometric-decay constant c and the index n* from which it holds.

    Above n*, consecutive semi-axis ratios obey mu_n / mu_m <= 2**(c*(m-n)).
    """

    c: float
    n_star: int


def semi_axis_ratio_constant(spec: DecayRateSpec) -> RatioConstant:
    """Pair (rate(n*)/n*, n*) with n* = ceil(t_star) + 1."""
    n_star = int(math.ceil(spec.t_star)) + 1
    c = eval_psi(spec, float(n_star)) / n_star
    return RatioConstant(c, n_star)


def _check_index(d, minimum: int) -> int:
    if not float(d).is_integer():
        raise DomainError(f"index must be an integer, got {d!r}")
    d = int(d)
    if d < minimum:
        raise DomainError(f"index must be >= {minimum}, got {d}")
    return d
