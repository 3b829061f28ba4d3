"""Exact arithmetic for weighted complete intersection threefolds.

Screens candidate weight/degree data against the numerical conditions
for quasismooth, well formed, terminal (or canonical) threefolds of
amplitude -1, 0 or +1; computes Poincare series and orbifold
Riemann-Roch data over formal baskets; recovers presentations from
series; and enumerates the full candidate lists per amplitude.
"""

from .baskets import (
    Basket,
    BasketInconsistency,
    FormalBasket,
    InitialCounts,
    Orbifold,
    c2_bound_ok,
    c2_load,
    canonical,
    canonical_unpacking,
    chi_int_sequence,
    chi_m,
    count_five_packings,
    descendants,
    format_basket,
    gt_volume_filter,
    high_index_count_bounds,
    initial_basket,
    initial_counts_from_chis,
    is_prime_packing,
    k3,
    merge_orbifolds,
    pack,
    parse_basket,
    pluri_growth_filter,
    rr_correction,
)
from .candidate import (
    Candidate,
    CandidateParseError,
    CheckResult,
    DeltaVector,
    InvalidCandidate,
    ScreenReport,
    check_codim_bound,
    check_cy_product,
    check_degree_weight_order,
    check_isolated_divisibility,
    check_terminal_divisibility,
    check_weight_degree_divisibility,
    check_wps_wellformed,
    degree_ratio_screen,
    deltas,
    is_linear_cone,
    necessary_screen,
    normalize,
    parse_candidate,
)
from .classify import (
    ChiData,
    ClassificationRecord,
    CountTuple,
    RunConfig,
    RunReport,
    candidate_formal_baskets,
    classify,
    classify_cy,
    enumerate_tuples,
    iter_tuples,
    realize,
    tuple_chis,
    tuple_of_candidate,
)
from .series import (
    RecoveredPresentation,
    SeriesParseError,
    TruncatedSeries,
    max_weight_ok,
    parse_series,
    poincare_series,
    recover_weights_degrees,
    recovery_bound,
    series_from_basket,
    series_from_candidate,
)

__version__ = "0.1.0"

__all__ = [
    "Basket",
    "BasketInconsistency",
    "Candidate",
    "CandidateParseError",
    "CheckResult",
    "ChiData",
    "ClassificationRecord",
    "CountTuple",
    "DeltaVector",
    "FormalBasket",
    "InitialCounts",
    "InvalidCandidate",
    "Orbifold",
    "RecoveredPresentation",
    "RunConfig",
    "RunReport",
    "ScreenReport",
    "SeriesParseError",
    "TruncatedSeries",
    "c2_bound_ok",
    "c2_load",
    "candidate_formal_baskets",
    "canonical",
    "canonical_unpacking",
    "check_codim_bound",
    "check_cy_product",
    "check_degree_weight_order",
    "check_isolated_divisibility",
    "check_terminal_divisibility",
    "check_weight_degree_divisibility",
    "check_wps_wellformed",
    "chi_int_sequence",
    "chi_m",
    "classify",
    "classify_cy",
    "count_five_packings",
    "degree_ratio_screen",
    "deltas",
    "descendants",
    "enumerate_tuples",
    "format_basket",
    "gt_volume_filter",
    "high_index_count_bounds",
    "initial_basket",
    "initial_counts_from_chis",
    "is_linear_cone",
    "is_prime_packing",
    "iter_tuples",
    "k3",
    "max_weight_ok",
    "merge_orbifolds",
    "necessary_screen",
    "normalize",
    "pack",
    "parse_basket",
    "parse_candidate",
    "parse_series",
    "pluri_growth_filter",
    "poincare_series",
    "realize",
    "recover_weights_degrees",
    "recovery_bound",
    "rr_correction",
    "series_from_basket",
    "series_from_candidate",
    "tuple_chis",
    "tuple_of_candidate",
    "__version__",
]
