"""S-WSS: the alternating search run on strided samples of the matrix.

Instead of full prefix tables, only every stride-th row and column gets a
cumulative-sum line, so preprocessing touches and stores O(rows*cols/stride)
entries. During the search the aggregation arrays are filled at sampled
positions only and zero elsewhere, which keeps each loop iteration linear
but makes the gain an estimate: it can oscillate, so a hard iteration cap
replaces the convergence argument of the exact variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .aess import SearchResult, run_morph_loop
from .core import Interval, Matrix

__all__ = [
    "StrideSpec",
    "SwssConfig",
    "PartialPrefixSums",
    "resolve_stride",
    "build_partial_prefix_sums",
    "sampled_col_aggregate",
    "sampled_row_aggregate",
    "swss_search",
]

_NAMED_KINDS = ("loglog", "log", "sqrt", "logsq", "unit")


@dataclass(frozen=True)
class StrideSpec:
    """Sampling-gap rule: a named function of the larger matrix dimension.

    Kinds: ``loglog`` (ln ln n), ``log`` (ln n), ``sqrt``, ``logsq``
    (ln^2 n), ``constant`` (a fixed value, spelled ``const:K`` in text form),
    and ``unit`` (stride 1, i.e. no subsampling). Logarithms are natural;
    the resolved value is rounded half-up and clamped to [1, n] so every
    rule yields a usable stride.
    """

    kind: str
    value: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "constant":
            if self.value is None or int(self.value) < 1:
                raise ValueError("constant stride needs a value >= 1")
            object.__setattr__(self, "value", int(self.value))
        elif self.kind in _NAMED_KINDS:
            if self.value is not None:
                raise ValueError(f"stride kind {self.kind!r} takes no value")
        else:
            raise ValueError(f"unknown stride kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "StrideSpec":
        """Parse the CLI spelling: one of the kind names or ``const:K``."""
        text = text.strip()
        if text.startswith("const:"):
            try:
                k = int(text.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad constant stride {text!r}") from None
            return cls("constant", k)
        return cls(text)

    def __str__(self) -> str:
        if self.kind == "constant":
            return f"const:{self.value}"
        return self.kind

    def resolve(self, n: int) -> int:
        """Evaluate the rule at dimension ``n``, rounding and clamping."""
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind == "unit":
            return 1
        if self.kind == "constant":
            raw = float(self.value)
        elif self.kind == "sqrt":
            raw = math.sqrt(n)
        elif self.kind == "log":
            raw = math.log(n) if n > 1 else 0.0
        elif self.kind == "logsq":
            raw = math.log(n) ** 2 if n > 1 else 0.0
        else:  # loglog; undefined below e, where it clamps to 1 anyway
            raw = math.log(math.log(n)) if n > math.e else 0.0
        return min(n, max(1, math.floor(raw + 0.5)))


def resolve_stride(n: int, spec: StrideSpec) -> int:
    """Positive stride for dimension ``n`` under ``spec`` (see StrideSpec)."""
    return spec.resolve(n)


@dataclass(frozen=True)
class SwssConfig:
    """Search knobs: the stride rule and the hard iteration cap.

    The sampling offset is always stride // 2, centering the sampled lines
    between the stride boundaries; rows and columns share stride and offset.
    """

    stride_spec: StrideSpec = field(default_factory=lambda: StrideSpec("sqrt"))
    iteration_cap: int = 20

    def __post_init__(self) -> None:
        if self.iteration_cap < 1:
            raise ValueError("iteration_cap must be >= 1")


@dataclass(frozen=True)
class PartialPrefixSums:
    """Prefix-sum lines for the sampled rows and columns only.

    ``row_prefix`` holds one horizontal cumulative-sum line per sampled row
    (shape len(sampled_rows) x cols+1); ``col_prefix`` one vertical line per
    sampled column (shape rows+1 x len(sampled_cols)). ``entries_touched``
    counts the matrix entries read while building the tables, so tests can
    pin the sublinear-work claim to a counter.
    """

    rows: int
    cols: int
    stride: int
    offset: int
    sampled_rows: np.ndarray
    sampled_cols: np.ndarray
    row_prefix: np.ndarray
    col_prefix: np.ndarray
    entries_touched: int

    @property
    def stored_entries(self) -> int:
        """Number of prefix-sum values kept in memory."""
        return int(self.row_prefix.size + self.col_prefix.size)


def build_partial_prefix_sums(m: Matrix, stride: int, offset: int) -> PartialPrefixSums:
    """Cumulative-sum lines for rows/cols ``offset, offset+stride, ...``.

    Unsampled lines are never read, so work and storage are proportional to
    (rows*cols)/stride. With stride 1 and offset 0 the tables equal the full
    prefix sums bit for bit. A stride larger than a dimension can leave that
    axis with no sampled line at all; the tables are then empty on that axis
    and searches over them see only zeros.
    """
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if not 0 <= offset < stride:
        raise ValueError("offset must satisfy 0 <= offset < stride")
    v = m.values
    sampled_rows = np.arange(offset, m.rows, stride)
    sampled_cols = np.arange(offset, m.cols, stride)
    row_block = v[sampled_rows, :]
    col_block = v[:, sampled_cols]
    row_prefix = np.zeros((sampled_rows.size, m.cols + 1))
    np.cumsum(row_block, axis=1, out=row_prefix[:, 1:])
    col_prefix = np.zeros((m.rows + 1, sampled_cols.size))
    np.cumsum(col_block, axis=0, out=col_prefix[1:, :])
    for arr in (sampled_rows, sampled_cols, row_prefix, col_prefix):
        arr.setflags(write=False)
    return PartialPrefixSums(
        rows=m.rows,
        cols=m.cols,
        stride=stride,
        offset=offset,
        sampled_rows=sampled_rows,
        sampled_cols=sampled_cols,
        row_prefix=row_prefix,
        col_prefix=col_prefix,
        entries_touched=int(row_block.size + col_block.size),
    )


def sampled_col_aggregate(
    p: PartialPrefixSums, row_span: Interval, cols: int
) -> np.ndarray:
    """Column sums over ``row_span`` at sampled columns, zeros elsewhere."""
    if cols != p.cols:
        raise ValueError(f"cols={cols} does not match tables built for {p.cols}")
    if row_span.hi >= p.rows:
        raise ValueError(f"row span {row_span} out of bounds for {p.rows} rows")
    out = np.zeros(cols)
    if p.sampled_cols.size:
        out[p.sampled_cols] = p.col_prefix[row_span.hi + 1] - p.col_prefix[row_span.lo]
    return out


def sampled_row_aggregate(
    p: PartialPrefixSums, col_span: Interval, rows: int
) -> np.ndarray:
    """Row sums over ``col_span`` at sampled rows, zeros elsewhere."""
    if rows != p.rows:
        raise ValueError(f"rows={rows} does not match tables built for {p.rows}")
    if col_span.hi >= p.cols:
        raise ValueError(f"col span {col_span} out of bounds for {p.cols} cols")
    out = np.zeros(rows)
    if p.sampled_rows.size:
        out[p.sampled_rows] = (
            p.row_prefix[:, col_span.hi + 1] - p.row_prefix[:, col_span.lo]
        )
    return out


def swss_search(
    m: Matrix,
    cfg: SwssConfig | None = None,
    *,
    partial: PartialPrefixSums | None = None,
) -> SearchResult:
    """Alternating search over zero-padded sampled aggregates.

    The stride is resolved from max(rows, cols) and applied to both axes
    with offset stride // 2. The reported sum is the final row-pass maximum
    over sampled data only; it is an estimate and can undercount the true
    sum of the returned rectangle (use ``core.rect_sum`` for the exact
    value). Because sampling can make the gain oscillate or freeze, the
    loop also stops at ``cfg.iteration_cap`` or when a step repeats itself
    verbatim; the result records which rule fired (see ``run_morph_loop``).

    Pass ``partial`` to reuse prebuilt tables; their stride and offset must
    match what the config resolves to.
    """
    cfg = cfg if cfg is not None else SwssConfig()
    stride = cfg.stride_spec.resolve(max(m.rows, m.cols))
    offset = stride // 2
    if partial is None:
        partial = build_partial_prefix_sums(m, stride, offset)
    elif (
        partial.rows != m.rows
        or partial.cols != m.cols
        or partial.stride != stride
        or partial.offset != offset
    ):
        raise ValueError("partial tables do not match the matrix/config")

    p = partial

    def col_aggregate(row_span: Interval) -> np.ndarray:
        return sampled_col_aggregate(p, row_span, m.cols)

    def row_aggregate(col_span: Interval) -> np.ndarray:
        return sampled_row_aggregate(p, col_span, m.rows)

    return run_morph_loop(
        m.rows, m.cols, col_aggregate, row_aggregate, cfg.iteration_cap
    )
