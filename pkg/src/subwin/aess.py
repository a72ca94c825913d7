"""A-ESS: the alternating full-prefix-sum search baseline.

A candidate box starting at the whole matrix is morphed by alternating 1D
maximum-subarray solves: columns are aggregated inside the current row span
to pick a new column span, then rows are aggregated inside that fresh column
span to pick a new row span. With exact aggregation the pass maxima never
decrease, so the loop converges on its own; the safety cap only guards
against floating-point pathologies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import FullPrefixSums, Interval, Matrix, Rect, build_full_prefix_sums
from .kadane import max_subarray

__all__ = [
    "GAIN_NONPOSITIVE",
    "ITERATION_CAP",
    "STATIONARY",
    "IterationTrace",
    "SearchResult",
    "run_morph_loop",
    "aess_search",
]

GAIN_NONPOSITIVE = "gain_nonpositive"
ITERATION_CAP = "iteration_cap"
STATIONARY = "stationary"


@dataclass(frozen=True)
class IterationTrace:
    """One morphing step: both pass maxima, their gap, and the box after."""

    col_pass_max: float
    row_pass_max: float
    gain: float
    rect_after: Rect


@dataclass(frozen=True)
class SearchResult:
    rect: Rect
    reported_sum: float
    iterations: int
    trace: tuple[IterationTrace, ...]
    termination: str


def run_morph_loop(
    rows: int,
    cols: int,
    col_aggregate: Callable[[Interval], np.ndarray],
    row_aggregate: Callable[[Interval], np.ndarray],
    cap: int,
    on_iteration: Callable[[IterationTrace], None] | None = None,
) -> SearchResult:
    """Shared alternating-search loop over caller-supplied aggregators.

    ``col_aggregate(row_span)`` must return a length-``cols`` array of
    per-column weights, ``row_aggregate(col_span)`` a length-``rows`` array
    of per-row weights; both must be pure functions of the span. The loop
    stops when the row-pass maximum no longer exceeds the column-pass
    maximum (``gain_nonpositive``), when an iteration reproduces the
    previous step exactly (``stationary``), or after ``cap`` iterations
    (``iteration_cap``).

    The stationary stop exists because with pure aggregators the loop is
    deterministic: a repeated step proves every later iteration would
    recompute the same box and gain forever. For exact aggregation the true
    gain there is zero and only summation rounding keeps the stored float a
    hair positive; for sampled aggregation a frozen box with positive gain
    is one of the pathological loop shapes the cap otherwise absorbs.
    """
    if cap < 1:
        raise ValueError("iteration cap must be >= 1")
    row_span = Interval(0, rows - 1)
    col_span = Interval(0, cols - 1)
    trace: list[IterationTrace] = []
    termination = ITERATION_CAP
    for _ in range(cap):
        col_res = max_subarray(col_aggregate(row_span))
        col_span = col_res.interval
        row_res = max_subarray(row_aggregate(col_span))
        row_span = row_res.interval
        gain = row_res.sum - col_res.sum
        step = IterationTrace(
            col_pass_max=col_res.sum,
            row_pass_max=row_res.sum,
            gain=gain,
            rect_after=Rect(row_span, col_span),
        )
        previous = trace[-1] if trace else None
        trace.append(step)
        if on_iteration is not None:
            on_iteration(step)
        if gain <= 0:
            termination = GAIN_NONPOSITIVE
            break
        if step == previous:
            termination = STATIONARY
            break
    last = trace[-1]
    return SearchResult(
        rect=last.rect_after,
        reported_sum=last.row_pass_max,
        iterations=len(trace),
        trace=tuple(trace),
        termination=termination,
    )


def aess_search(
    m: Matrix,
    safety_cap: int = 1000,
    *,
    prefix_sums: FullPrefixSums | None = None,
) -> SearchResult:
    """Alternating search over exact (full prefix sum) aggregates.

    The reported sum is the final row-pass maximum, which for exact
    aggregation equals the true sum of the returned rectangle. Two cheap
    sanity checks run on every iteration: the pass maxima may never drop
    below the previous iteration's (beyond float tolerance), and no maximum
    may exceed the sum of the matrix's positive entries.

    Pass ``prefix_sums`` to reuse precomputed tables (e.g. to time the
    preprocessing and search phases separately); they must belong to ``m``.
    """
    if safety_cap < 1:
        raise ValueError("safety_cap must be >= 1")
    p = prefix_sums if prefix_sums is not None else build_full_prefix_sums(m)
    if p.rows != m.rows or p.cols != m.cols:
        raise ValueError("prefix_sums shape does not match the matrix")

    v = m.values
    # chunked so the bound never allocates a matrix-sized temporary
    abs_sum = 0.0
    for start in range(0, m.rows, 256):
        abs_sum += float(np.abs(v[start : start + 256]).sum())
    positive_bound = 0.5 * (abs_sum + float(v.sum()))
    tol = 1e-9 * (1.0 + abs_sum)
    horiz, vert = p.horiz, p.vert

    def col_aggregate(row_span: Interval) -> np.ndarray:
        return vert[row_span.hi + 1] - vert[row_span.lo]

    def row_aggregate(col_span: Interval) -> np.ndarray:
        return horiz[:, col_span.hi + 1] - horiz[:, col_span.lo]

    prev_row_max: float | None = None

    def check(step: IterationTrace) -> None:
        nonlocal prev_row_max
        if prev_row_max is not None and step.col_pass_max < prev_row_max - tol:
            raise AssertionError(
                f"pass maxima decreased: {step.col_pass_max} < {prev_row_max}"
            )
        if max(step.col_pass_max, step.row_pass_max) > positive_bound + tol:
            raise AssertionError(
                f"pass maximum exceeds the positive-entry bound {positive_bound}"
            )
        prev_row_max = step.row_pass_max

    return run_morph_loop(
        m.rows, m.cols, col_aggregate, row_aggregate, safety_cap, on_iteration=check
    )
