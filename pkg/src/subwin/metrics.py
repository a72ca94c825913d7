"""Evaluation metrics: spatial coherence and IoU-threshold accuracy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Matrix, Rect, iou

__all__ = ["CoherenceParams", "AccuracyReport", "coherence_score", "accuracy"]


@dataclass(frozen=True)
class CoherenceParams:
    """Square neighborhood radius for coherence scoring."""

    radius: int = 5

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError("radius must be >= 1")


def coherence_score(m: Matrix, params: CoherenceParams | None = None) -> float:
    """Nearby-entry similarity in [0, 1]; higher means smoother.

    Every entry is compared to each in-bounds neighbor within the square
    radius, the zero-difference self pair included; offsets falling outside
    the matrix are skipped and not counted. The summed absolute differences
    are normalized by the comparison count and the value range, and the
    score is one minus that dissimilarity. A constant matrix scores 1 by
    convention, and the score is invariant under affine maps of the entries.
    """
    params = params if params is not None else CoherenceParams()
    v = m.values
    vmin = float(v.min())
    vmax = float(v.max())
    if vmax == vmin:
        return 1.0
    r = params.radius
    rows, cols = v.shape
    numerator = 0.0
    comparisons = 0
    for dr in range(-r, r + 1):
        h = rows - abs(dr)
        if h <= 0:
            continue
        a_rows = slice(max(0, -dr), rows - max(0, dr))
        b_rows = slice(max(0, dr), rows - max(0, -dr))
        for dc in range(-r, r + 1):
            w = cols - abs(dc)
            if w <= 0:
                continue
            comparisons += h * w
            if dr == 0 and dc == 0:
                continue
            a_cols = slice(max(0, -dc), cols - max(0, dc))
            b_cols = slice(max(0, dc), cols - max(0, -dc))
            numerator += float(np.abs(v[a_rows, a_cols] - v[b_rows, b_cols]).sum())
    dissimilarity = numerator / (comparisons * (vmax - vmin))
    return 1.0 - dissimilarity


@dataclass(frozen=True)
class AccuracyReport:
    """Binary localization accuracy at an IoU threshold."""

    total: int
    correct: int
    accuracy: float
    iou_threshold: float


def accuracy(
    proposals: Sequence[Rect], references: Sequence[Rect], threshold: float = 0.5
) -> AccuracyReport:
    """Fraction of proposal/reference pairs with IoU at or above ``threshold``."""
    props = list(proposals)
    refs = list(references)
    if len(props) != len(refs):
        raise ValueError(
            f"proposals and references differ in length: {len(props)} vs {len(refs)}"
        )
    if not props:
        raise ValueError("at least one proposal/reference pair is required")
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must lie in (0, 1]")
    correct = sum(1 for a, b in zip(props, refs) if iou(a, b) >= threshold)
    return AccuracyReport(
        total=len(props),
        correct=correct,
        accuracy=correct / len(props),
        iou_threshold=threshold,
    )
