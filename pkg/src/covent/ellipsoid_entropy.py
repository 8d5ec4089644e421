"""Covering-entropy bounds and estimates for p-ellipsoids.

Finite-dimensional ellipsoids get fully constructive volume-argument
bounds in bits; infinite-dimensional ellipsoids with exponentially
decaying semi-axes get an asymptotic estimate organized as
main term + second-order term +/- an explicit remainder bracket, plus
closed forms for the linear and superlinear decay families.

Two honesty rules shape the interfaces.  The upper bound for p < q rests
on an existential constant from the entropy-number literature, so it is
returned with a "not rigorous" flag and the constant exposed as
configuration.  The remainder of the asymptotic estimate has unknown
sign and magnitude, so it is reported as an interval scaled by a
caller-controlled multiplier rather than folded into a point value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .decay_rate import (
    DecayRateSpec,
    invert_psi,
    log2_semi_axes,
    psi_average,
    psi_difference,
    semi_axes,
    semi_axis_ratio_constant,
)
from .errors import DomainError
from .special_functions import lambert_w
from .volume_geometry import FieldTag, _inv, log_volume_ratio, sigma

_LN2 = math.log(2.0)


def _resolve_log2_inv(eps: Optional[float], log2_inv_eps: Optional[float]) -> float:
    """Radius in log form: log2(1/eps) from whichever argument was given.

    The asymptotic routines work at radii far below the smallest positive
    float (log2(1/eps) beyond 1074), so they accept the radius either
    directly or as log2(1/eps); exactly one of the two must be supplied.
    """
    if (eps is None) == (log2_inv_eps is None):
        raise DomainError("supply exactly one of eps and log2_inv_eps")
    if eps is not None:
        if not (math.isfinite(eps) and eps > 0.0):
            raise DomainError(f"eps must be positive, got {eps!r}")
        return -math.log2(eps)
    value = float(log2_inv_eps)
    if not math.isfinite(value):
        raise DomainError(f"log2_inv_eps must be finite, got {log2_inv_eps!r}")
    return value


@dataclass(frozen=True)
class FiniteEllipsoid:
    """Unit ball of a weighted p-norm with non-increasing positive weights."""

    p: float
    field: FieldTag
    semi_axes: np.ndarray

    def __post_init__(self):
        _inv(self.p)
        axes = np.asarray(self.semi_axes, dtype=float)
        if axes.ndim != 1 or axes.size == 0:
            raise DomainError("semi_axes must be a non-empty 1-D sequence")
        if not np.all(axes > 0.0):
            raise DomainError("semi-axes must be strictly positive")
        if np.any(np.diff(axes) > 0.0):
            raise DomainError("semi-axes must be non-increasing")
        axes = axes.copy()
        axes.flags.writeable = False
        object.__setattr__(self, "semi_axes", axes)

    @property
    def dim(self) -> int:
        return int(self.semi_axes.size)

    def to_json_dict(self) -> dict:
        return {
            "p": "inf" if math.isinf(self.p) else self.p,
            "field": self.field.value,
            "semi_axes": [float(m) for m in self.semi_axes],
        }


@dataclass(frozen=True)
class InfiniteEllipsoid:
    """Infinite-dimensional p-ellipsoid with rate-generated semi-axes.

    ``index0`` optionally prepends one explicit leading semi-axis ahead
    of the rate-generated ones (several function classes need a separate
    weight for their constant coefficient).  The asymptotic estimates are
    unaffected by it; truncations and tails account for it.
    """

    p: float
    field: FieldTag
    rate: DecayRateSpec
    index0: Optional[float] = None

    def __post_init__(self):
        _inv(self.p)
        if self.index0 is not None and not (math.isfinite(self.index0) and self.index0 > 0.0):
            raise DomainError(f"index0 override must be positive, got {self.index0!r}")

    @property
    def c0(self) -> float:
        return self.rate.c0

    def semi_axis_sequence(self, n: int) -> np.ndarray:
        """First n semi-axes, including the index-0 override when set."""
        if n < 1:
            raise DomainError(f"need at least one semi-axis, got n={n}")
        if self.index0 is None:
            return semi_axes(self.rate, n)
        if n == 1:
            return np.array([self.index0])
        return np.concatenate([[self.index0], semi_axes(self.rate, n - 1)])


def ellipsoid_norm(E: FiniteEllipsoid, x) -> float:
    """Weighted p-norm of x; complex entries contribute their modulus."""
    x = np.asarray(x)
    if x.shape != (E.dim,):
        raise DomainError(f"expected a vector of dimension {E.dim}, got shape {x.shape}")
    scaled = np.abs(x) / E.semi_axes
    if math.isinf(E.p):
        return float(np.max(scaled))
    return float(np.sum(scaled**E.p) ** (1.0 / E.p))


def membership(E: FiniteEllipsoid, x) -> bool:
    """True when x lies in the ellipsoid (weighted norm at most 1)."""
    return ellipsoid_norm(E, x) <= 1.0


def geometric_mean(E: FiniteEllipsoid, d: Optional[int] = None) -> float:
    """Geometric mean of the first d semi-axes (all of them by default)."""
    if d is None:
        d = E.dim
    if not 1 <= d <= E.dim:
        raise DomainError(f"d must be in [1, {E.dim}], got {d}")
    return float(np.exp2(np.mean(np.log2(E.semi_axes[:d]))))


@dataclass(frozen=True)
class BoundConstants:
    """Caller-adjustable constants of the non-constructive bound routes.

    ``kappa_rem`` scales the remainder bracket of the asymptotic
    estimate; ``schuett_c0`` stands in for the existential constant of
    the p < q upper bound, default 1.
    """

    kappa_rem: float = 1.0
    schuett_c0: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.kappa_rem) and self.kappa_rem >= 0.0):
            raise DomainError(f"kappa_rem must be >= 0, got {self.kappa_rem!r}")
        if not (math.isfinite(self.schuett_c0) and self.schuett_c0 > 0.0):
            raise DomainError(f"schuett_c0 must be > 0, got {self.schuett_c0!r}")


_DEFAULT_CONSTANTS = BoundConstants()


def finite_entropy_lower_bound(E: FiniteEllipsoid, q: float, eps: float) -> float:
    """Volume-argument lower bound on the covering entropy, in bits.

    Fully constructive: sigma(d) * log2(geomean / eps) plus the log
    volume ratio, floored at zero.  Valid for every eps > 0.
    """
    if not (math.isfinite(eps) and eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps!r}")
    sig = sigma(E.field, E.dim)
    bits = sig * (math.log2(geometric_mean(E)) - math.log2(eps)) + log_volume_ratio(
        E.p, q, E.dim, E.field
    )
    return max(0.0, bits)


class UpperBound(NamedTuple):
    """Upper bound in bits plus a flag for whether it is rigorous."""

    bits: float
    valid: bool


def finite_entropy_upper_bound(
    E: FiniteEllipsoid,
    q: float,
    eps: float,
    constants: BoundConstants = _DEFAULT_CONSTANTS,
) -> UpperBound:
    """Upper bound on the covering entropy of the ellipsoid, in bits.

    For p >= q the bound is the constructive volume argument with its
    explicit 4**sigma(d) factor, rigorous whenever eps <= 2 * mu_d (the
    flag reports this).  For p < q the route goes through an existential
    entropy-number constant, supplied as ``constants.schuett_c0``; the
    result is then always flagged as not rigorous.
    """
    if not (math.isfinite(eps) and eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps!r}")
    d = E.dim
    sig = sigma(E.field, d)
    log_gm = math.log2(geometric_mean(E))
    eps_ok = eps <= 2.0 * float(E.semi_axes[-1])
    if _inv(E.p) <= _inv(q):  # p >= q under the 1/inf = 0 convention
        bits = sig * (2.0 + log_gm - math.log2(eps)) + log_volume_ratio(E.p, q, d, E.field)
        return UpperBound(bits, eps_ok)
    slope = (_inv(q) - _inv(E.p)) * math.log2(sig)
    bits = sig * (math.log2(constants.schuett_c0) + slope + log_gm - math.log2(eps))
    return UpperBound(bits, False)


def effective_dimension(
    E: InfiniteEllipsoid, eps: Optional[float] = None, *, log2_inv_eps: Optional[float] = None
) -> int:
    """Truncation dimension at which remaining semi-axes are order eps.

    Ceiling of the inverse rate at log2(1/eps) + log2(c0), at least 1.
    Requires eps < c0 so that the argument is in the inverse's domain.
    """
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    u = big_l + math.log2(E.c0)
    if u <= 0.0:
        raise DomainError(
            f"radius with log2(1/eps)={big_l} is too large for this ellipsoid: "
            f"need eps < c0={E.c0}"
        )
    t = invert_psi(E.rate, u)
    nearest = round(t)
    d = int(nearest) if abs(t - nearest) <= 1e-9 else int(math.ceil(t))
    return max(1, d)


@dataclass(frozen=True)
class EntropyEstimate:
    """Asymptotic entropy estimate with an explicit remainder bracket.

    All terms are in bits.  ``bracket_lo``/``bracket_hi`` enclose
    main + second with a remainder of kappa_rem * sigma(d) * zeta(d) on
    each side.  ``p_ge_q_rigorous`` records whether the two-sided theory
    behind the estimate is fully constructive for this exponent pair.
    """

    epsilon: float
    effective_dim: int
    main_term: float
    second_order: float
    bracket_lo: float
    bracket_hi: float
    epsilon_small_enough: bool
    p_ge_q_rigorous: bool

    CSV_FIELDS = (
        "epsilon",
        "d_eff",
        "main",
        "second",
        "lo",
        "hi",
        "epsilon_small_enough",
        "p_ge_q_rigorous",
    )

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "d_eff": self.effective_dim,
            "main": self.main_term,
            "second": self.second_order,
            "lo": self.bracket_lo,
            "hi": self.bracket_hi,
            "epsilon_small_enough": self.epsilon_small_enough,
            "p_ge_q_rigorous": self.p_ge_q_rigorous,
        }

    def csv_row(self) -> list:
        rec = self.to_json_dict()
        return [rec[k] for k in ("epsilon", "d_eff", "main", "second", "lo", "hi")] + [
            rec["epsilon_small_enough"],
            rec["p_ge_q_rigorous"],
        ]


def infinite_entropy_estimate(
    E: InfiniteEllipsoid,
    q: float,
    eps: Optional[float] = None,
    kappa_rem: float = 1.0,
    *,
    log2_inv_eps: Optional[float] = None,
) -> EntropyEstimate:
    """Entropy estimate at radius eps for an infinite-dimensional ellipsoid.

    main   = sigma(d) * average_gap(d)
    second = sigma(d) * (1/q - 1/p) * log2(sigma(d))
    with d the effective dimension; the remainder bracket is
    +/- kappa_rem * sigma(d) * increment(d).  The increment is evaluated
    at max(d, 2) since it needs two indices.
    """
    if not (math.isfinite(kappa_rem) and kappa_rem >= 0.0):
        raise DomainError(f"kappa_rem must be >= 0, got {kappa_rem!r}")
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    d = effective_dimension(E, log2_inv_eps=big_l)
    sig = sigma(E.field, d)
    main = sig * psi_average(E.rate, d)
    second = sig * (_inv(q) - _inv(E.p)) * math.log2(sig)
    remainder = kappa_rem * sig * psi_difference(E.rate, max(d, 2))
    centre = main + second
    return EntropyEstimate(
        epsilon=float(eps) if eps is not None else 2.0**-big_l,
        effective_dim=d,
        main_term=main,
        second_order=second,
        bracket_lo=centre - remainder,
        bracket_hi=centre + remainder,
        epsilon_small_enough=True,
        p_ge_q_rigorous=_inv(E.p) <= _inv(q),
    )


def _alpha(field: FieldTag) -> float:
    return 2.0 if field is FieldTag.COMPLEX else 1.0


class LinearEntropy(NamedTuple):
    """Leading and second-order terms of the linear-decay closed form."""

    leading: float
    second: float


def entropy_linear_closed_form(
    c: float,
    c0: float,
    p: float,
    q: float,
    field: FieldTag,
    eps: Optional[float] = None,
    *,
    log2_inv_eps: Optional[float] = None,
) -> LinearEntropy:
    """Closed-form entropy asymptotics for linear decay rate c * t.

    leading = alpha/(2c) * log2(1/eps)**2 and
    second  = alpha/c * (1/q - 1/p) * log2(1/eps) * log2(log2(1/eps)),
    with alpha = 1 real / 2 complex.  The scale c0 drops out of both
    terms; it is accepted for interface symmetry and validated only.
    """
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError(f"c must be positive, got {c!r}")
    if not (math.isfinite(c0) and c0 > 0.0):
        raise DomainError(f"c0 must be positive, got {c0!r}")
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    if big_l <= 0.0:
        raise DomainError(f"closed form requires eps in (0, 1), got log2(1/eps)={big_l}")
    a = _alpha(field)
    leading = a / (2.0 * c) * big_l**2
    second = a / c * (_inv(q) - _inv(p)) * big_l * math.log2(big_l)
    return LinearEntropy(leading, second)


class SuperlinearEntropy(NamedTuple):
    """Closed-form value plus the size of its relative-uncertainty factor.

    ``rel_uncertainty`` is exp(-beta): the estimate carries an unmodeled
    multiplicative factor 1 + O(exp(-beta)) which is reported rather
    than folded in.
    """

    value: float
    rel_uncertainty: float


def entropy_superlinear_closed_form(
    c: float,
    c_prime: float,
    field: FieldTag,
    eps: Optional[float] = None,
    *,
    log2_inv_eps: Optional[float] = None,
) -> SuperlinearEntropy:
    """Closed-form entropy asymptotics for rate c * t * (log2(t) - c').

    value = alpha * c * 2**(2c'-1) / ln(2) * exp(2*beta) * (beta + 1/2)
    with beta = W(ln(1/eps) / (2**c' * c)); requires eps < 1 so that
    beta > 0.
    """
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError(f"c must be positive, got {c!r}")
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    if big_l <= 0.0:
        raise DomainError(f"closed form requires eps in (0, 1), got log2(1/eps)={big_l}")
    a = _alpha(field)
    beta = lambert_w(big_l * _LN2 / (2.0**c_prime * c)).value
    value = a * c * 2.0 ** (2.0 * c_prime - 1.0) / _LN2 * math.exp(2.0 * beta) * (beta + 0.5)
    return SuperlinearEntropy(value, math.exp(-beta))


def entropy_second_order_form(
    c: float,
    field: FieldTag,
    eps: Optional[float] = None,
    *,
    log2_inv_eps: Optional[float] = None,
) -> float:
    """Iterated-logarithm form of the superlinear entropy, to second order.

    alpha * log2(1/eps)**2 / (2c * log2(log2(1/eps))) times
    (1 + log2(log2(log2(1/eps))) / log2(log2(1/eps))); requires the
    triple logarithm to be positive, i.e. log2(1/eps) > 2.
    """
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError(f"c must be positive, got {c!r}")
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    if big_l <= 2.0:
        raise DomainError(
            f"second-order form needs log2(1/eps) > 2 for a positive triple log, got {big_l}"
        )
    ll = math.log2(big_l)
    lll = math.log2(ll)
    a = _alpha(field)
    return a * big_l**2 / (2.0 * c * ll) * (1.0 + lll / ll)


def truncate(E: InfiniteEllipsoid, d: int) -> FiniteEllipsoid:
    """Finite ellipsoid on the first d semi-axes, same exponent and field."""
    if d < 1:
        raise DomainError(f"truncation dimension must be >= 1, got {d}")
    return FiniteEllipsoid(p=E.p, field=E.field, semi_axes=E.semi_axis_sequence(d))


def truncation_tail(E: InfiniteEllipsoid, d: int, q: float) -> float:
    """Additive q-norm radius inflation from covering the d-term truncation.

    Equals K**(1/q) * mu_(d+1) with K = 2**(cq) / (2**(cq) - 1) for
    finite q and mu_(d+1) for q = inf, where (c, n*) is the geometric
    decay constant of the rate and mu_(d+1) the first omitted semi-axis.
    Valid from d >= n* - 1 on.
    """
    iq = _inv(q)
    ratio = semi_axis_ratio_constant(E.rate)
    if d < ratio.n_star - 1:
        raise DomainError(
            f"tail bound requires d >= n* - 1 = {ratio.n_star - 1} "
            f"(n* = {ratio.n_star}), got d={d}"
        )
    mu_next = float(E.semi_axis_sequence(d + 1)[-1])
    if iq == 0.0:
        return mu_next
    cq = ratio.c * q
    big_k = 2.0**cq / (2.0**cq - 1.0)
    return big_k ** (1.0 / q) * mu_next
