"""Exact max-weight rectangle solvers used as ground truth.

``brute_force_max_rect`` enumerates and sums every rectangle directly and is
the independent oracle; ``bentley_max_rect`` is the O(cols^2 * rows)
column-pair scan that stays exact at sizes where enumeration is hopeless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Interval, Matrix, Rect
from .kadane import max_subarray

__all__ = ["ExactResult", "brute_force_max_rect", "bentley_max_rect"]


@dataclass(frozen=True)
class ExactResult:
    """Globally optimal rectangle and its sum."""

    rect: Rect
    sum: float


def brute_force_max_rect(m: Matrix) -> ExactResult:
    """Enumerate every rectangle and sum each one naively.

    Intended for matrices up to roughly 16x16; the caller is responsible for
    size sanity. Ties break to the lexicographically smallest
    (row_lo, col_lo, row_hi, col_hi), which the loop nesting below produces
    with plain strict-improvement updates.
    """
    v = m.values
    best = -math.inf
    best_bounds = (0, 0, 0, 0)
    for r1 in range(m.rows):
        for c1 in range(m.cols):
            for r2 in range(r1, m.rows):
                for c2 in range(c1, m.cols):
                    s = float(v[r1 : r2 + 1, c1 : c2 + 1].sum())
                    if s > best:
                        best = s
                        best_bounds = (r1, r2, c1, c2)
    return ExactResult(Rect.from_bounds(*best_bounds), best)


def bentley_max_rect(m: Matrix) -> ExactResult:
    """Exact optimum via a scan over all column-boundary pairs.

    Horizontal prefix sums turn each pair's row aggregation into O(rows)
    work, and for a fixed left column all right columns are evaluated at
    once with a vectorized running-minimum formulation of the 1D subarray
    maximum. Ties break to the smallest left column, then right column; the
    row interval of the winner comes from the canonical scalar scan, so it
    follows the same tie-breaking as every other solver here.
    """
    v = m.values
    rows, cols = v.shape
    horiz = np.zeros((rows, cols + 1))
    np.cumsum(v, axis=1, out=horiz[:, 1:])

    best = -math.inf
    best_c1 = best_c2 = 0
    # Reused workspaces; per left column only the leading k columns are live.
    agg = np.empty((rows, cols))
    prefix = np.zeros((rows + 1, cols))
    runmin = np.empty((rows, cols))
    for c1 in range(cols):
        k = cols - c1
        a = agg[:, :k]
        np.subtract(horiz[:, c1 + 1 :], horiz[:, c1 : c1 + 1], out=a)
        p = prefix[:, :k]
        np.cumsum(a, axis=0, out=p[1:])
        rm = runmin[:, :k]
        np.minimum.accumulate(p[:-1], axis=0, out=rm)
        np.subtract(p[1:], rm, out=a)  # a now holds the candidate maxima
        col_best = a.max(axis=0)
        i = int(np.argmax(col_best))
        if float(col_best[i]) > best:
            best = float(col_best[i])
            best_c1, best_c2 = c1, c1 + i

    b = horiz[:, best_c2 + 1] - horiz[:, best_c1]
    row_interval = max_subarray(b).interval
    rect = Rect(row_interval, Interval(best_c1, best_c2))
    total = float(b[row_interval.lo : row_interval.hi + 1].sum())
    return ExactResult(rect, total)
