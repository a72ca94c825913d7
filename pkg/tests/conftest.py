"""Shared independent oracles for the test suite.

These deliberately avoid the package's own fast paths: rectangle sums are
plain double loops, the 1D maximum is interval enumeration, and coherence is
the literal quadruple loop. Tests compare the library against these, never
the other way around.
"""

from __future__ import annotations

import numpy as np


def naive_rect_sum(values: np.ndarray, r1: int, r2: int, c1: int, c2: int) -> float:
    total = 0.0
    for r in range(r1, r2 + 1):
        for c in range(c1, c2 + 1):
            total += float(values[r, c])
    return total


def enumerate_max_subarray(seq) -> float:
    """Best interval sum over all O(n^2) nonempty intervals, sequential adds."""
    seq = [float(x) for x in seq]
    best = None
    for lo in range(len(seq)):
        run = 0.0
        for hi in range(lo, len(seq)):
            run += seq[hi]
            if best is None or run > best:
                best = run
    return best


def enumerate_max_rect_sum(values: np.ndarray) -> float:
    """Best rectangle sum by full enumeration with naive inner sums."""
    rows, cols = values.shape
    best = None
    for r1 in range(rows):
        for c1 in range(cols):
            for r2 in range(r1, rows):
                for c2 in range(c1, cols):
                    s = naive_rect_sum(values, r1, r2, c1, c2)
                    if best is None or s > best:
                        best = s
    return best


def naive_coherence(values: np.ndarray, radius: int) -> float:
    """Literal neighbor-difference average: quadruple loop, no vectorization."""
    rows, cols = values.shape
    vmin = float(values.min())
    vmax = float(values.max())
    if vmax == vmin:
        return 1.0
    numerator = 0.0
    count = 0
    for x in range(rows):
        for y in range(cols):
            for dx in range(-radius, radius + 1):
                for dy in range(-radius, radius + 1):
                    nx, ny = x + dx, y + dy
                    if 0 <= nx < rows and 0 <= ny < cols:
                        numerator += abs(float(values[x, y]) - float(values[nx, ny]))
                        count += 1
    return 1.0 - numerator / (count * (vmax - vmin))
