"""Ground-truth covering and packing computation in low dimensions.

The oracle discretizes a real ellipsoid of dimension at most 3 on an
axis-aligned grid and produces two certified numbers: a greedy cover
count (after shrinking the radius enough that covering the grid covers
the continuous body) which upper-bounds the covering number, and a
farthest-point packing count at separation > 2*eps which lower-bounds
it.  Exact unit-interval coverings and the dyadic-center construction
round out the module; together they validate every theoretical bound
empirically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .ellipsoid_entropy import (
    BoundConstants,
    FiniteEllipsoid,
    finite_entropy_lower_bound,
    finite_entropy_upper_bound,
)
from .errors import ConfigError, DomainError
from .volume_geometry import FieldTag, _inv

_PACKING_GUARD = 1e-12


@dataclass(frozen=True)
class CoveringResult:
    """Empirical bracket on a covering number.

    ``lower_count`` is the size of a maximal packing at pairwise
    separation > 2*epsilon (every eps-cover needs at least that many
    balls); ``upper_count`` is the size of a greedy cover that is valid
    for the continuous body.  ``resolution`` is the grid pitch used,
    None for exact constructions.
    """

    epsilon: float
    lower_count: int
    upper_count: int
    resolution: Optional[float] = None
    centers: Optional[np.ndarray] = None

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "lower_count": self.lower_count,
            "upper_count": self.upper_count,
            "resolution": self.resolution,
        }


def interval_covering(eps: float) -> CoveringResult:
    """Optimal covering of the unit interval [0, 1] by radius-eps balls.

    Exactly ceil(1 / (2 eps)) centers at (2i - 1) * eps; the same count
    is achieved by a packing, so the construction is optimal and both
    counts coincide.
    """
    if not (0.0 < eps <= 1.0):
        raise DomainError(f"interval covering requires eps in (0, 1], got {eps!r}")
    n = math.ceil(1.0 / (2.0 * eps))
    centers = (2.0 * np.arange(1, n + 1) - 1.0) * eps
    return CoveringResult(epsilon=float(eps), lower_count=n, upper_count=n, centers=centers)


def binary_expansion_center(x: float, k: int) -> float:
    """Center of the dyadic interval of generation k containing x.

    Keeps the first k binary digits of x and appends a 1, i.e. maps x to
    (floor(x * 2**k) + 1/2) / 2**k; points on a dyadic boundary go to the
    upper interval, with x = 1 clamped into the top one.  The result is
    always within 2**(-k-1) of x.
    """
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x!r}")
    if k < 0 or not float(k).is_integer():
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    scale = 2.0 ** int(k)
    i = min(math.floor(x * scale), int(scale) - 1)
    return (i + 0.5) / scale


def _q_distances(points: np.ndarray, center: np.ndarray, q: float) -> np.ndarray:
    delta = np.abs(points - center)
    if math.isinf(q):
        return np.max(delta, axis=1)
    if q == 1.0:
        return np.sum(delta, axis=1)
    if q == 2.0:
        return np.sqrt(np.sum(delta * delta, axis=1))
    return np.sum(delta**q, axis=1) ** (1.0 / q)


def _grid_points(E: FiniteEllipsoid, resolution: float) -> np.ndarray:
    axes = []
    for mu in E.semi_axes:
        k = int(math.floor(mu / resolution + 1e-12))
        axes.append(resolution * np.arange(-k, k + 1))
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)
    scaled = np.abs(points) / E.semi_axes
    if math.isinf(E.p):
        norms = np.max(scaled, axis=1)
    else:
        norms = np.sum(scaled**E.p, axis=1) ** (1.0 / E.p)
    points = points[norms <= 1.0]
    # Scan outward from the origin (Euclidean order, lexicographic ties)
    # so the first cover center sits at the center of the body.
    order = np.lexsort(tuple(points[:, j] for j in range(points.shape[1] - 1, -1, -1))
                       + (np.sum(points * points, axis=1),))
    return points[order]


def brute_force_covering(
    E: FiniteEllipsoid,
    q: float,
    eps: float,
    resolution: Optional[float] = None,
    keep_centers: bool = False,
) -> CoveringResult:
    """Empirical covering/packing bracket for a real ellipsoid of dim <= 3.

    The body is discretized on an axis-aligned grid of the given pitch
    (default eps / 8, required <= eps / 4).  The greedy cover repeatedly
    centers a ball on the uncovered point farthest from the chosen
    centers, using balls of radius eps - resolution * dim**(1/q): any
    body point rounds toward the origin onto an in-body grid point at
    most that far away, so covering the grid at the shrunken radius
    covers the body at eps.  The packing runs the same farthest-point
    scan from an extreme point while separations stay above 2*eps (with
    a small guard band against float boundary ties).  Both scans are
    deterministic given resolution and grid order.
    """
    if E.field is not FieldTag.REAL:
        raise DomainError("the oracle supports real ellipsoids only")
    if E.dim > 3:
        raise DomainError(f"the oracle supports dimension <= 3, got {E.dim}")
    if not (math.isfinite(eps) and eps > 0.0):
        raise DomainError(f"eps must be positive, got {eps!r}")
    if resolution is None:
        resolution = eps / 8.0
    if not (0.0 < resolution <= eps / 4.0 + 1e-15):
        raise DomainError(
            f"resolution must be in (0, eps/4] = (0, {eps / 4.0}], got {resolution!r}"
        )

    points = _grid_points(E, resolution)
    shrink = resolution * E.dim ** _inv(q)
    eff = eps - shrink
    if eff <= 0.0:
        raise DomainError(
            f"resolution {resolution} too coarse: shrunken radius {eff} <= 0"
        )

    # Greedy cover: repeatedly take the uncovered point farthest from the
    # selected centers, starting at the origin (always a grid point).
    # Stops once every grid point is within the shrunken radius.
    min_dist = _q_distances(points, points[0], q)
    cover_centers = [points[0]]
    while True:
        idx = int(np.argmax(min_dist))
        if min_dist[idx] <= eff:
            break
        cover_centers.append(points[idx])
        min_dist = np.minimum(min_dist, _q_distances(points, points[idx], q))

    # Greedy packing: the same farthest-point scan seeded at an extreme
    # point, accepted while the separation stays above 2*eps (plus a
    # guard band against float boundary ties).
    seed = int(np.argmax(_q_distances(points, np.zeros(E.dim), q)))
    min_dist = _q_distances(points, points[seed], q)
    packing = 1
    threshold = 2.0 * eps + _PACKING_GUARD
    while True:
        idx = int(np.argmax(min_dist))
        if min_dist[idx] <= threshold:
            break
        packing += 1
        min_dist = np.minimum(min_dist, _q_distances(points, points[idx], q))

    return CoveringResult(
        epsilon=float(eps),
        lower_count=packing,
        upper_count=len(cover_centers),
        resolution=float(resolution),
        centers=np.array(cover_centers) if keep_centers else None,
    )


@dataclass(frozen=True)
class SandwichEntry:
    """Bound-versus-oracle comparison at one radius.

    ``margin_cover`` is log2(cover count) minus the theoretical lower
    bound; ``margin_packing`` is the theoretical upper bound minus
    log2(packing count).  Both must be nonnegative for the theory to be
    consistent with the oracle; the packing margin is only enforced when
    the upper bound is rigorous.
    """

    epsilon: float
    resolution: float
    lower_bound_bits: float
    upper_bound_bits: float
    upper_bound_valid: bool
    log2_cover: float
    log2_packing: float

    @property
    def margin_cover(self) -> float:
        return self.log2_cover - self.lower_bound_bits

    @property
    def margin_packing(self) -> float:
        return self.upper_bound_bits - self.log2_packing

    @property
    def passed(self) -> bool:
        ok = self.margin_cover >= 0.0
        if self.upper_bound_valid:
            ok = ok and self.margin_packing >= 0.0
        return ok

    def describe(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"eps={self.epsilon:g} cover_margin={self.margin_cover:+.3f} "
            f"packing_margin={self.margin_packing:+.3f} "
            f"(upper {'rigorous' if self.upper_bound_valid else 'not rigorous'}): {status}"
        )


@dataclass(frozen=True)
class SandwichReport:
    entries: tuple

    @property
    def all_pass(self) -> bool:
        return all(e.passed for e in self.entries)


def _sandwich_entry(
    E: FiniteEllipsoid,
    q: float,
    eps: float,
    resolution: float,
    lower_count: int,
    upper_count: int,
    constants: BoundConstants,
) -> SandwichEntry:
    ub = finite_entropy_upper_bound(E, q, eps, constants)
    return SandwichEntry(
        epsilon=float(eps),
        resolution=float(resolution),
        lower_bound_bits=finite_entropy_lower_bound(E, q, eps),
        upper_bound_bits=ub.bits,
        upper_bound_valid=ub.valid,
        log2_cover=math.log2(upper_count) if upper_count > 0 else -math.inf,
        log2_packing=math.log2(lower_count) if lower_count > 0 else -math.inf,
    )


def verify_sandwich(
    E: FiniteEllipsoid,
    q: float,
    eps_grid: Iterable[float],
    resolution: Optional[float] = None,
    constants: BoundConstants = BoundConstants(),
) -> SandwichReport:
    """Run the oracle over an eps grid and compare against the theory bounds.

    Each entry records the margins by which the oracle counts stay inside
    the theoretical sandwich; a negative margin is a violation.  The
    default resolution is eps / 8 per grid point.
    """
    entries = []
    for eps in eps_grid:
        res = eps / 8.0 if resolution is None else resolution
        result = brute_force_covering(E, q, eps, res)
        entries.append(
            _sandwich_entry(
                E, q, eps, res, result.lower_count, result.upper_count, constants
            )
        )
    return SandwichReport(tuple(entries))


# ---------------------------------------------------------------------------
# Golden fixtures


def fixture_from_result(E: FiniteEllipsoid, q: float, result: CoveringResult) -> dict:
    """JSON-ready fixture record for a completed oracle run."""
    return {
        "ellipsoid": E.to_json_dict(),
        "q": "inf" if math.isinf(q) else q,
        "epsilon": result.epsilon,
        "resolution": result.resolution,
        "lower_count": result.lower_count,
        "upper_count": result.upper_count,
    }


def _parse_exponent(value) -> float:
    if value == "inf":
        return math.inf
    return float(value)


def load_fixture(path) -> dict:
    """Parse a fixture file into ellipsoid, exponent, and recorded counts."""
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"fixture {path} is not valid JSON: {exc}") from exc
    try:
        ell = raw["ellipsoid"]
        ellipsoid = FiniteEllipsoid(
            p=_parse_exponent(ell["p"]),
            field=FieldTag(ell["field"]),
            semi_axes=np.asarray(ell["semi_axes"], dtype=float),
        )
        return {
            "ellipsoid": ellipsoid,
            "q": _parse_exponent(raw["q"]),
            "epsilon": float(raw["epsilon"]),
            "resolution": float(raw["resolution"]),
            "lower_count": int(raw["lower_count"]),
            "upper_count": int(raw["upper_count"]),
        }
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"fixture {path} is malformed: {exc}") from exc


def fixture_sandwich_entry(
    fixture: dict, constants: BoundConstants = BoundConstants()
) -> SandwichEntry:
    """Margins of a fixture's recorded counts against the theory bounds."""
    return _sandwich_entry(
        fixture["ellipsoid"],
        fixture["q"],
        fixture["epsilon"],
        fixture["resolution"],
        fixture["lower_count"],
        fixture["upper_count"],
        constants,
    )


def recompute_fixture(fixture: dict) -> CoveringResult:
    """Re-run the oracle at a fixture's stored configuration."""
    return brute_force_covering(
        fixture["ellipsoid"],
        fixture["q"],
        fixture["epsilon"],
        fixture["resolution"],
    )
