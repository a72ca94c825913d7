"""Dense matrices, rectangle geometry, and exact range-sum queries.

Everything downstream (exact solvers, iterative searches, metrics) shares
these types. All indexing is 0-based with inclusive bounds; the first index
is the row.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Matrix",
    "Interval",
    "Rect",
    "FullPrefixSums",
    "build_full_prefix_sums",
    "rect_sum",
    "iou",
]


class Matrix:
    """Immutable 2D grid of finite float64 weights.

    Entries are validated once at construction: the shape must be at least
    1x1 and every value finite. Solver code may rely on that afterwards and
    never re-checks. The backing array is marked read-only, so instances are
    safe to share across threads.
    """

    __slots__ = ("_values",)

    def __init__(self, values) -> None:
        arr = np.array(values, dtype=np.float64, copy=True, order="C")
        if arr.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"matrix must be at least 1x1, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("matrix entries must be finite (no NaN or infinity)")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        """Read-only float64 array of shape (rows, cols)."""
        return self._values

    @property
    def rows(self) -> int:
        return self._values.shape[0]

    @property
    def cols(self) -> int:
        return self._values.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._values.shape == other._values.shape and bool(
            np.array_equal(self._values, other._values)
        )

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class Interval:
    """Inclusive 0-based index range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", int(self.lo))
        object.__setattr__(self, "hi", int(self.hi))
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> int:
        return self.hi - self.lo + 1


@dataclass(frozen=True)
class Rect:
    """Inclusive axis-aligned cell rectangle: a row span times a column span."""

    row_span: Interval
    col_span: Interval

    @classmethod
    def from_bounds(cls, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> "Rect":
        return cls(Interval(row_lo, row_hi), Interval(col_lo, col_hi))

    @property
    def area(self) -> int:
        return self.row_span.length * self.col_span.length

    def as_tuple(self) -> tuple[int, int, int, int]:
        """(row_lo, row_hi, col_lo, col_hi)."""
        return (self.row_span.lo, self.row_span.hi, self.col_span.lo, self.col_span.hi)


@dataclass(frozen=True)
class FullPrefixSums:
    """Per-row and per-column cumulative sums with a leading zero per line.

    ``horiz`` has shape (rows, cols+1) with horiz[r, c+1] - horiz[r, c]
    equal to the matrix entry (r, c); ``vert`` has shape (rows+1, cols) with
    the symmetric property down columns.
    """

    horiz: np.ndarray
    vert: np.ndarray

    @property
    def rows(self) -> int:
        return self.horiz.shape[0]

    @property
    def cols(self) -> int:
        return self.vert.shape[1]


def build_full_prefix_sums(m: Matrix) -> FullPrefixSums:
    """Cumulative sums along every row and every column, O(rows*cols)."""
    v = m.values
    horiz = np.zeros((m.rows, m.cols + 1))
    np.cumsum(v, axis=1, out=horiz[:, 1:])
    vert = np.zeros((m.rows + 1, m.cols))
    np.cumsum(v, axis=0, out=vert[1:, :])
    horiz.setflags(write=False)
    vert.setflags(write=False)
    return FullPrefixSums(horiz=horiz, vert=vert)


def rect_sum(p: FullPrefixSums, r: Rect) -> float:
    """Sum of all entries inside ``r``, via per-row prefix differences."""
    if r.row_span.hi >= p.rows or r.col_span.hi >= p.cols:
        raise ValueError(
            f"rect {r.as_tuple()} out of bounds for {p.rows}x{p.cols} matrix"
        )
    r1, r2 = r.row_span.lo, r.row_span.hi
    c1, c2 = r.col_span.lo, r.col_span.hi
    return float((p.horiz[r1 : r2 + 1, c2 + 1] - p.horiz[r1 : r2 + 1, c1]).sum())


def _overlap(a: Interval, b: Interval) -> int:
    return max(0, min(a.hi, b.hi) - max(a.lo, b.lo) + 1)


def iou(a: Rect, b: Rect) -> float:
    """Intersection-over-union of two rectangles, by inclusive cell counts.

    Symmetric, in [0, 1], and exactly 1 only for identical rectangles.
    """
    inter = _overlap(a.row_span, b.row_span) * _overlap(a.col_span, b.col_span)
    if inter == 0:
        return 0.0
    return inter / (a.area + b.area - inter)
