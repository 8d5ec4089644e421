"""Covering-entropy bounds and estimates for ellipsoids and analytic
function classes, with a brute-force oracle for low-dimensional
validation."""

from .decay_rate import (
    DecayRateReport,
    DecayRateSpec,
    PsiStatistics,
    RatioConstant,
    check_decay_rate,
    eval_psi,
    invert_psi,
    log2_semi_axes,
    psi_average,
    psi_difference,
    psi_statistics,
    semi_axes,
    semi_axis_ratio_constant,
)
from .ellipsoid_entropy import (
    BoundConstants,
    EntropyEstimate,
    FiniteEllipsoid,
    InfiniteEllipsoid,
    LinearEntropy,
    SuperlinearEntropy,
    UpperBound,
    effective_dimension,
    ellipsoid_norm,
    entropy_linear_closed_form,
    entropy_second_order_form,
    entropy_superlinear_closed_form,
    finite_entropy_lower_bound,
    finite_entropy_upper_bound,
    geometric_mean,
    infinite_entropy_estimate,
    membership,
    truncate,
    truncation_tail,
)
from .errors import ConfigError, ConvergenceError, DomainError
from .function_classes import (
    ClassBracket,
    DiskClass,
    ExpTypeBracket,
    ExpTypeClass,
    NormSandwichReport,
    StripClass,
    cauchy_estimate_violations,
    coefficient_norm_sandwich,
    disk_ellipsoid,
    disk_entropy_bracket,
    embed_disk_function,
    exptype_ellipsoids,
    exptype_entropy_bracket,
    exptype_second_order,
    fourier_reindex,
    fourier_reindex_inverse,
    parse_class_spec,
    strip_ellipsoids,
    strip_entropy_bracket,
)
from .oracle import (
    CoveringResult,
    SandwichEntry,
    SandwichReport,
    binary_expansion_center,
    brute_force_covering,
    fixture_from_result,
    fixture_sandwich_entry,
    interval_covering,
    load_fixture,
    recompute_fixture,
    verify_sandwich,
)
from .special_functions import (
    WEvaluation,
    lambert_w,
    lambert_w_asymptotic,
    solve_exp_equation,
    stirling_supremum,
)
from .volume_geometry import (
    FieldTag,
    VolumeRatioNormalForm,
    log_unit_ball_volume,
    log_volume_ratio,
    sigma,
    volume_ratio_normal_form,
)

__version__ = "0.1.0"
