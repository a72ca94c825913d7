"""Linear-time 1D maximum-subarray scan.

This is the inner kernel of every solver in the package: the exact
column-pair scan calls it once per winning pair, and the iterative searches
call it twice per morphing step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Interval

__all__ = ["SubarrayResult", "max_subarray", "instrumented_max_subarray"]


@dataclass(frozen=True)
class SubarrayResult:
    """Best nonempty contiguous interval and its sum."""

    interval: Interval
    sum: float


def max_subarray(values) -> SubarrayResult:
    """Nonempty contiguous interval with the largest sum, in one pass.

    The running collection is discarded only when its sum goes strictly
    negative, and the best record is replaced only on strict improvement.
    Among equal-sum intervals this makes the earliest-starting one recorded
    first win, deterministically. Zeros are ordinary elements (they neither
    reset the collection nor improve the record), and an all-negative input
    yields its maximum single element.
    """
    result, _ = instrumented_max_subarray(values)
    return result


def instrumented_max_subarray(values) -> tuple[SubarrayResult, int]:
    """Same scan as :func:`max_subarray`, also reporting loop-step count.

    The step count exists so tests can pin the linear-time claim to an
    operation count instead of a wall clock.
    """
    if isinstance(values, np.ndarray):
        if values.ndim != 1:
            raise ValueError(f"expected a 1D array, got ndim={values.ndim}")
        seq = values.tolist()
    else:
        seq = [float(x) for x in values]
    if not seq:
        raise ValueError("max_subarray requires at least one element")

    best = -math.inf
    best_lo = best_hi = 0
    run = 0.0
    run_lo = 0
    steps = 0
    for i, x in enumerate(seq):
        if run < 0.0:
            run = 0.0
            run_lo = i
        run += x
        if run > best:
            best = run
            best_lo = run_lo
            best_hi = i
        steps += 1
    return SubarrayResult(Interval(best_lo, best_hi), float(best)), steps
