"""Entropy brackets for three classes of analytic functions.

Each class embeds, through its Fourier or Taylor coefficients, between
an inner and an outer infinite-dimensional ellipsoid; the sup metric on
functions is sandwiched between the l2 and l1 metrics on coefficients.
Entropy brackets therefore come from the ellipsoid engine: the lower
edge from (inner ellipsoid, l2) and the upper edge from (outer
ellipsoid, l1).

Coefficients are complex, so every ellipsoid here carries the complex
field tag.  The supported classes:

* periodic functions analytic and bounded on a strip around the real axis
* functions analytic and bounded on a disk, metrized on a smaller disk
* entire functions of exponential type
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple, Sequence, Tuple, Union

import numpy as np

from .decay_rate import DecayRateSpec
from .ellipsoid_entropy import (
    InfiniteEllipsoid,
    _resolve_log2_inv,
    entropy_linear_closed_form,
    entropy_superlinear_closed_form,
)
from .errors import ConfigError, DomainError
from .special_functions import lambert_w, stirling_supremum
from .volume_geometry import FieldTag

_LN2 = math.log(2.0)

Coefficients = Union[Mapping[int, complex], Sequence[complex]]


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class StripClass:
    """Periodic functions analytic on a strip of half-width s, bounded by M."""

    s: float
    M: float

    def __post_init__(self):
        _positive("s", self.s)
        _positive("M", self.M)

    def to_json_dict(self) -> dict:
        return {"class": "strip", "s": self.s, "M": self.M}


@dataclass(frozen=True)
class DiskClass:
    """Functions analytic on the disk of radius r_prime, bounded by M,
    metrized by the sup distance on the smaller disk of radius r."""

    r: float
    r_prime: float
    M: float

    def __post_init__(self):
        _positive("r", self.r)
        _positive("r_prime", self.r_prime)
        _positive("M", self.M)
        if not self.r_prime > self.r:
            raise DomainError(f"need r_prime > r, got r={self.r}, r_prime={self.r_prime}")

    def to_json_dict(self) -> dict:
        return {"class": "disk", "r": self.r, "r_prime": self.r_prime, "M": self.M}


@dataclass(frozen=True)
class ExpTypeClass:
    """Entire functions bounded by C * exp(A * |z|)."""

    A: float
    C: float

    def __post_init__(self):
        _positive("A", self.A)
        _positive("C", self.C)

    def to_json_dict(self) -> dict:
        return {"class": "exptype", "A": self.A, "C": self.C}


def parse_class_spec(data: Mapping) -> Union[StripClass, DiskClass, ExpTypeClass]:
    """Build a class object from its JSON dict form."""
    kind = data.get("class")
    try:
        if kind == "strip":
            return StripClass(s=float(data["s"]), M=float(data["M"]))
        if kind == "disk":
            return DiskClass(r=float(data["r"]), r_prime=float(data["r_prime"]), M=float(data["M"]))
        if kind == "exptype":
            return ExpTypeClass(A=float(data["A"]), C=float(data["C"]))
    except KeyError as exc:
        raise ConfigError(f"class spec {kind!r} is missing field {exc}") from exc
    raise ConfigError(f"unknown function class {kind!r}")


class ClassBracket(NamedTuple):
    """Two-sided entropy bracket with the width of its second-order band."""

    lo: float
    hi: float
    gamma_band: float


# ---------------------------------------------------------------------------
# Strip class


def strip_ellipsoids(cls: StripClass) -> Tuple[InfiniteEllipsoid, InfiniteEllipsoid]:
    """Inner (l1) and outer (l2) coefficient ellipsoids of the strip class.

    Both share the linear rate c = s / (2 ln 2); the inner scale is M and
    the outer scale sqrt(2) * M * exp(s/2), reflecting the one-index lag
    of the outer semi-axes.
    """
    c = cls.s / (2.0 * _LN2)
    inner = InfiniteEllipsoid(
        p=1.0, field=FieldTag.COMPLEX, rate=DecayRateSpec.linear(c, c0=cls.M)
    )
    outer = InfiniteEllipsoid(
        p=2.0,
        field=FieldTag.COMPLEX,
        rate=DecayRateSpec.linear(c, c0=math.sqrt(2.0) * cls.M * math.exp(cls.s / 2.0)),
    )
    return inner, outer


def strip_entropy_bracket(
    cls: StripClass, eps=None, *, log2_inv_eps=None
) -> ClassBracket:
    """Entropy bracket of the strip class at radius eps, in bits.

    Both edges share the leading term (2 ln 2 / s) * log2(1/eps)**2; they
    differ by one gamma_band = (2 ln 2 / s) * log2(1/eps) * log2(log2(1/eps))
    on each side.
    """
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    inner, outer = strip_ellipsoids(cls)
    c = inner.rate.c
    lo = sum(entropy_linear_closed_form(c, inner.c0, inner.p, 2.0, inner.field,
                                        log2_inv_eps=big_l))
    hi = sum(entropy_linear_closed_form(c, outer.c0, outer.p, 1.0, outer.field,
                                        log2_inv_eps=big_l))
    band = (2.0 * _LN2 / cls.s) * big_l * math.log2(big_l)
    return ClassBracket(lo, hi, band)


def fourier_reindex(two_sided: Mapping[int, complex]) -> dict:
    """Fold a two-sided coefficient index set into a one-sided one.

    Index 0 maps to 1, positive k to 2k, negative k to 2|k| + 1; the map
    is a bijection and ``fourier_reindex_inverse`` undoes it.
    """
    out = {}
    for k, v in two_sided.items():
        k = int(k)
        if k == 0:
            out[1] = complex(v)
        elif k > 0:
            out[2 * k] = complex(v)
        else:
            out[2 * (-k) + 1] = complex(v)
    return out


def fourier_reindex_inverse(one_sided: Mapping[int, complex]) -> dict:
    """Inverse of ``fourier_reindex``."""
    out = {}
    for n, v in one_sided.items():
        n = int(n)
        if n < 1:
            raise DomainError(f"one-sided indices start at 1, got {n}")
        if n == 1:
            out[0] = complex(v)
        elif n % 2 == 0:
            out[n // 2] = complex(v)
        else:
            out[-(n - 1) // 2] = complex(v)
    return out


# ---------------------------------------------------------------------------
# Disk class


def disk_ellipsoid(cls: DiskClass) -> Tuple[InfiniteEllipsoid, InfiniteEllipsoid]:
    """Inner (l1) and outer (l2) coefficient ellipsoids of the disk class.

    Shared semi-axes M * (r/r_prime)**k for k = 0, 1, 2, ...; the k = 0
    weight rides on the index-0 override so the rate itself stays linear
    with c = log2(r_prime / r).
    """
    c = math.log2(cls.r_prime / cls.r)
    rate = DecayRateSpec.linear(c, c0=cls.M)
    inner = InfiniteEllipsoid(p=1.0, field=FieldTag.COMPLEX, rate=rate, index0=cls.M)
    outer = InfiniteEllipsoid(p=2.0, field=FieldTag.COMPLEX, rate=rate, index0=cls.M)
    return inner, outer


def disk_entropy_bracket(
    cls: DiskClass, eps=None, *, log2_inv_eps=None
) -> ClassBracket:
    """Entropy bracket of the disk class at radius eps, in bits.

    Leading term log2(1/eps)**2 / log2(r_prime/r) on both edges;
    gamma_band = log2(1/eps) * log2(log2(1/eps)) / log2(r_prime/r).
    """
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    inner, outer = disk_ellipsoid(cls)
    c = inner.rate.c
    lo = sum(entropy_linear_closed_form(c, inner.c0, inner.p, 2.0, inner.field,
                                        log2_inv_eps=big_l))
    hi = sum(entropy_linear_closed_form(c, outer.c0, outer.p, 1.0, outer.field,
                                        log2_inv_eps=big_l))
    band = big_l * math.log2(big_l) / c
    return ClassBracket(lo, hi, band)


def embed_disk_function(taylor: Sequence[complex], r: float) -> np.ndarray:
    """Scale Taylor coefficients onto the evaluation disk: a_k -> a_k * r**k."""
    _positive("r", r)
    coeffs = np.asarray(list(taylor), dtype=complex)
    return coeffs * (float(r) ** np.arange(coeffs.size))


def cauchy_estimate_violations(
    taylor: Sequence[complex], M: float, r_prime: float
) -> list:
    """Indices whose coefficient magnitude exceeds the analytic bound M / r_prime**k.

    A violation means no function analytic and bounded by M on the disk
    of radius r_prime can have these coefficients.  Reported, not raised.
    """
    _positive("M", M)
    _positive("r_prime", r_prime)
    coeffs = np.asarray(list(taylor), dtype=complex)
    bounds = M / float(r_prime) ** np.arange(coeffs.size)
    return [int(k) for k in np.nonzero(np.abs(coeffs) > bounds * (1.0 + 1e-12))[0]]


# ---------------------------------------------------------------------------
# Coefficient-metric sandwich


@dataclass(frozen=True)
class NormSandwichReport:
    """Numerical check that l2 <= sup metric <= l1 on a coefficient difference.

    ``sup_estimate`` comes from dense sampling of the boundary circle, so
    it underestimates the true supremum; ``slack`` is added on the l1
    side of the comparison only.
    """

    l1: float
    l2: float
    sup_estimate: float
    slack: float
    samples: int

    @property
    def holds(self) -> bool:
        return self.l2 <= self.sup_estimate + 1e-12 and self.sup_estimate <= self.l1 + self.slack


def _as_coefficient_map(c: Coefficients) -> dict:
    if isinstance(c, Mapping):
        return {int(k): complex(v) for k, v in c.items()}
    return {i: complex(v) for i, v in enumerate(c)}


def coefficient_norm_sandwich(
    c1: Coefficients, c2: Coefficients, samples: int = 2**16, slack: float = 1e-6
) -> NormSandwichReport:
    """Check the l2 <= sup <= l1 sandwich for the difference of two
    coefficient sequences.

    The sup metric of the difference, sup over the circle of
    |sum_k d_k e^(i k theta)|, is estimated on ``samples`` equispaced
    points via an FFT; index support must stay below samples/2 for the
    sampling to resolve every mode.
    """
    diff = _as_coefficient_map(c1)
    for k, v in _as_coefficient_map(c2).items():
        diff[k] = diff.get(k, 0.0) - v
    diff = {k: v for k, v in diff.items() if v != 0.0}
    if not diff:
        return NormSandwichReport(0.0, 0.0, 0.0, slack, samples)

    ks = np.array(sorted(diff))
    if np.max(np.abs(ks)) >= samples // 2:
        raise DomainError(
            f"coefficient index range {np.max(np.abs(ks))} needs more than "
            f"{samples} samples to resolve"
        )
    vals = np.array([diff[int(k)] for k in ks])
    spectrum = np.zeros(samples, dtype=complex)
    np.add.at(spectrum, ks % samples, vals)
    boundary = np.fft.ifft(spectrum) * samples
    sup_est = float(np.max(np.abs(boundary)))
    l1 = float(np.sum(np.abs(vals)))
    l2 = float(np.sqrt(np.sum(np.abs(vals) ** 2)))
    return NormSandwichReport(l1, l2, sup_est, slack, samples)


# ---------------------------------------------------------------------------
# Exponential type


def exptype_ellipsoids(cls: ExpTypeClass) -> Tuple[InfiniteEllipsoid, InfiniteEllipsoid]:
    """Inner and outer sup-norm coefficient ellipsoids for exponential type.

    Outer semi-axes C * (e*A/k)**k; the inner ones use the halved type
    constant A/2 and the scale C divided by the Stirling supremum.  Both
    rates are superlinear with c = 1 and c' = log2(e * type constant),
    and both carry the constant coefficient on the index-0 override.
    """
    a_inner = cls.A / 2.0
    c_inner = cls.C / stirling_supremum()
    outer = InfiniteEllipsoid(
        p=math.inf,
        field=FieldTag.COMPLEX,
        rate=DecayRateSpec.superlinear(1.0, math.log2(math.e * cls.A), c0=cls.C),
        index0=cls.C,
    )
    inner = InfiniteEllipsoid(
        p=math.inf,
        field=FieldTag.COMPLEX,
        rate=DecayRateSpec.superlinear(1.0, math.log2(math.e * a_inner), c0=c_inner),
        index0=c_inner,
    )
    return inner, outer


class ExpTypeBracket(NamedTuple):
    lo: float
    hi: float


def exptype_entropy_bracket(
    cls: ExpTypeClass, eps=None, *, log2_inv_eps=None
) -> ExpTypeBracket:
    """Entropy bracket of the exponential-type class at radius eps, in bits.

    lo = (eA/2)**2 * exp(2*b1) * (b1 + 1/2) / ln 2 with
    b1 = W(2 ln(1/eps) / (eA)), and hi the same with (eA)**2 and
    b2 = W(ln(1/eps) / (eA)).  Independent of the amplitude C.
    """
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    if big_l <= 0.0:
        raise DomainError(f"bracket requires eps in (0, 1), got log2(1/eps)={big_l}")
    ea = math.e * cls.A
    ln_inv = big_l * _LN2
    b1 = lambert_w(2.0 * ln_inv / ea).value
    b2 = lambert_w(ln_inv / ea).value
    lo = (ea / 2.0) ** 2 * math.exp(2.0 * b1) * (b1 + 0.5) / _LN2
    hi = ea**2 * math.exp(2.0 * b2) * (b2 + 0.5) / _LN2
    return ExpTypeBracket(lo, hi)


def exptype_second_order(eps=None, *, log2_inv_eps=None) -> float:
    """Second-order iterated-logarithm form of the exponential-type entropy.

    log2(1/eps)**2 / log2(log2(1/eps)) times (1 + lll/ll); independent of
    both class constants A and C.
    """
    big_l = _resolve_log2_inv(eps, log2_inv_eps)
    if big_l <= 2.0:
        raise DomainError(
            f"second-order form needs log2(1/eps) > 2 for a positive triple log, got {big_l}"
        )
    ll = math.log2(big_l)
    lll = math.log2(ll)
    return big_l**2 / ll * (1.0 + lll / ll)
