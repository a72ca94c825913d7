"""Max-weight rectangle search: exact solvers, the alternating baseline, the
strided-sampling variant, and the metrics/benchmark surface around them."""

from .aess import (
    GAIN_NONPOSITIVE,
    ITERATION_CAP,
    STATIONARY,
    IterationTrace,
    SearchResult,
    aess_search,
)
from .core import (
    FullPrefixSums,
    Interval,
    Matrix,
    Rect,
    build_full_prefix_sums,
    iou,
    rect_sum,
)
from .datagen import GenSpec, duplicate_scale, generate, normalize_zero_mean
from .exact import ExactResult, bentley_max_rect, brute_force_max_rect
from .kadane import SubarrayResult, max_subarray
from .metrics import AccuracyReport, CoherenceParams, accuracy, coherence_score
from .swss import (
    PartialPrefixSums,
    StrideSpec,
    SwssConfig,
    build_partial_prefix_sums,
    resolve_stride,
    sampled_col_aggregate,
    sampled_row_aggregate,
    swss_search,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyReport",
    "CoherenceParams",
    "ExactResult",
    "FullPrefixSums",
    "GAIN_NONPOSITIVE",
    "GenSpec",
    "ITERATION_CAP",
    "Interval",
    "IterationTrace",
    "Matrix",
    "PartialPrefixSums",
    "Rect",
    "STATIONARY",
    "SearchResult",
    "StrideSpec",
    "SubarrayResult",
    "SwssConfig",
    "accuracy",
    "aess_search",
    "bentley_max_rect",
    "brute_force_max_rect",
    "build_full_prefix_sums",
    "build_partial_prefix_sums",
    "coherence_score",
    "duplicate_scale",
    "generate",
    "iou",
    "max_subarray",
    "normalize_zero_mean",
    "rect_sum",
    "resolve_stride",
    "sampled_col_aggregate",
    "sampled_row_aggregate",
    "swss_search",
]
