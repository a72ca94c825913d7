"""Benchmark harness: timed solves, JSONL/CSV records, speedup summaries.

A record row captures one timed solve of one algorithm on one input. Wall
time always covers preprocessing plus search, since table construction is
what separates the full and sampled searches; ``split_phases`` additionally
times the two phases separately for diagnosis. All non-timing fields are
deterministic for fixed inputs and flags.
"""

from __future__ import annotations

import csv
import json
import statistics
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .aess import SearchResult, aess_search
from .core import (
    FullPrefixSums,
    Matrix,
    Rect,
    build_full_prefix_sums,
    iou,
    rect_sum,
)
from .datagen import generate, spec_from_text
from .exact import bentley_max_rect, brute_force_max_rect
from .metrics import CoherenceParams, coherence_score
from .swss import StrideSpec, SwssConfig, build_partial_prefix_sums, swss_search
from . import matrix_io

__all__ = [
    "ALGORITHMS",
    "BRUTE_LIMIT",
    "BenchRecord",
    "SolveOutcome",
    "timed_solve",
    "run_bench",
    "write_records",
    "read_records",
    "check_records",
    "load_matrix",
    "matrix_from_source",
]

ALGORITHMS = ("brute", "bentley", "aess", "swss")

# brute force is O(rows^2 * cols^2) rectangles; refuse past this edge length
BRUTE_LIMIT = 16

_CSV_FIELDS = [
    "algorithm",
    "rows",
    "cols",
    "stride_spec",
    "resolved_stride",
    "wall_time_ns",
    "prep_time_ns",
    "search_time_ns",
    "iterations",
    "termination",
    "rect",
    "true_sum",
    "reported_sum",
    "iou_vs_oracle",
    "coherence",
    "source",
    "repeat",
]


@dataclass
class BenchRecord:
    """One timed solve. ``rect`` is (row_lo, row_hi, col_lo, col_hi)."""

    algorithm: str
    rows: int
    cols: int
    stride_spec: str | None
    resolved_stride: int | None
    wall_time_ns: int
    prep_time_ns: int | None
    search_time_ns: int | None
    iterations: int
    termination: str
    rect: tuple[int, int, int, int]
    true_sum: float
    reported_sum: float
    iou_vs_oracle: float | None
    coherence: float | None
    source: str
    repeat: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rect"] = list(self.rect)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "BenchRecord":
        d = dict(d)
        d["rect"] = tuple(d["rect"])
        return cls(**d)


@dataclass
class SolveOutcome:
    """Result of one timed solve, before record assembly.

    ``search`` carries the full iterative-search result (trace included) for
    aess and swss; it is None for the exact solvers.
    """

    algorithm: str
    rect: Rect
    reported_sum: float
    iterations: int
    termination: str
    stride_spec: str | None
    resolved_stride: int | None
    wall_time_ns: int
    prep_time_ns: int | None
    search_time_ns: int | None
    search: SearchResult | None = None


def timed_solve(
    algorithm: str,
    m: Matrix,
    stride_spec: StrideSpec | None = None,
    cap: int = 20,
    safety_cap: int = 1000,
    split_phases: bool = False,
    brute_limit: int = BRUTE_LIMIT,
) -> SolveOutcome:
    """Run one algorithm once, timing preprocessing plus search together."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm == "brute" and max(m.rows, m.cols) > brute_limit:
        raise ValueError(
            f"brute force refused on {m.rows}x{m.cols} input "
            f"(limit {brute_limit}x{brute_limit})"
        )

    stride_text = None
    resolved = None
    prep_ns = search_ns = None
    sres = None

    if algorithm == "brute":
        t0 = time.perf_counter_ns()
        res = brute_force_max_rect(m)
        wall = time.perf_counter_ns() - t0
        rect, reported, iters, term = res.rect, res.sum, 0, "exact"
    elif algorithm == "bentley":
        t0 = time.perf_counter_ns()
        res = bentley_max_rect(m)
        wall = time.perf_counter_ns() - t0
        rect, reported, iters, term = res.rect, res.sum, 0, "exact"
    elif algorithm == "aess":
        if split_phases:
            t0 = time.perf_counter_ns()
            tables = build_full_prefix_sums(m)
            t1 = time.perf_counter_ns()
            sres = aess_search(m, safety_cap, prefix_sums=tables)
            t2 = time.perf_counter_ns()
            prep_ns, search_ns, wall = t1 - t0, t2 - t1, t2 - t0
        else:
            t0 = time.perf_counter_ns()
            sres = aess_search(m, safety_cap)
            wall = time.perf_counter_ns() - t0
        rect, reported = sres.rect, sres.reported_sum
        iters, term = sres.iterations, sres.termination
    else:  # swss
        spec = stride_spec if stride_spec is not None else StrideSpec("sqrt")
        cfg = SwssConfig(stride_spec=spec, iteration_cap=cap)
        resolved = spec.resolve(max(m.rows, m.cols))
        stride_text = str(spec)
        if split_phases:
            t0 = time.perf_counter_ns()
            tables = build_partial_prefix_sums(m, resolved, resolved // 2)
            t1 = time.perf_counter_ns()
            sres = swss_search(m, cfg, partial=tables)
            t2 = time.perf_counter_ns()
            prep_ns, search_ns, wall = t1 - t0, t2 - t1, t2 - t0
        else:
            t0 = time.perf_counter_ns()
            sres = swss_search(m, cfg)
            wall = time.perf_counter_ns() - t0
        rect, reported = sres.rect, sres.reported_sum
        iters, term = sres.iterations, sres.termination

    return SolveOutcome(
        algorithm=algorithm,
        rect=rect,
        reported_sum=reported,
        iterations=iters,
        termination=term,
        stride_spec=stride_text,
        resolved_stride=resolved,
        wall_time_ns=max(1, wall),
        prep_time_ns=prep_ns,
        search_time_ns=search_ns,
        search=sres,
    )


def load_matrix(path, input_format: str | None = None, channel: str = "R") -> Matrix:
    """Read a matrix file, inferring the format from the suffix by default."""
    p = Path(path)
    fmt = input_format or {
        ".csv": "csv",
        ".pgm": "pgm",
        ".ppm": "ppm",
        ".tri": "triplets",
    }.get(p.suffix.lower(), "csv")
    if fmt == "csv":
        return matrix_io.read_matrix_csv(p)
    if fmt == "pgm":
        return matrix_io.read_pgm_channel(p)
    if fmt == "ppm":
        return matrix_io.read_ppm_channel(p, channel)
    if fmt == "triplets":
        return matrix_io.read_sparse_triplets(p)
    raise ValueError(f"unknown input format {fmt!r}")


def matrix_from_source(source: str) -> Matrix:
    """Rebuild the input a record was measured on, from its source tag."""
    if source.startswith("gen:"):
        return generate(spec_from_text(source))
    if source.startswith("file:"):
        return load_matrix(source[len("file:") :])
    raise ValueError(f"unrecognized source tag {source!r}")


def run_bench(
    inputs: list[tuple[str, Matrix]],
    algorithms: list[str],
    stride_specs: list[StrideSpec],
    repeats: int = 3,
    cap: int = 20,
    safety_cap: int = 1000,
    oracle: bool = False,
    with_coherence: bool = False,
    radius: int = 5,
    iou_threshold: float = 0.5,
    split_phases: bool = False,
    brute_limit: int = BRUTE_LIMIT,
) -> tuple[list[BenchRecord], list[str]]:
    """One record per (input, algorithm, stride, repeat), plus summary lines.

    Each combination gets one untimed warm-up solve before the timed
    repeats. The summary reports, for every non-baseline algorithm, the
    median across inputs of (median aess time / median algorithm time), and
    with ``oracle`` also the accuracy against the exact optimum at the IoU
    threshold.
    """
    if not inputs:
        raise ValueError("at least one input is required")
    if not algorithms:
        raise ValueError("at least one algorithm is required")
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    for alg in algorithms:
        if alg not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {alg!r}")
    if "brute" in algorithms:
        for _, m in inputs:
            if max(m.rows, m.cols) > brute_limit:
                raise ValueError(
                    f"brute force refused on {m.rows}x{m.cols} input "
                    f"(limit {brute_limit}x{brute_limit})"
                )

    records: list[BenchRecord] = []
    # timing medians keyed by (algorithm, stride text) per input
    times: dict[str, dict[tuple[str, str | None], float]] = {}
    hits: dict[tuple[str, str | None], list[bool]] = {}

    for source, m in inputs:
        oracle_rect = bentley_max_rect(m).rect if oracle else None
        coherence = (
            coherence_score(m, CoherenceParams(radius)) if with_coherence else None
        )
        full = build_full_prefix_sums(m)
        times[source] = {}
        for alg in algorithms:
            specs = stride_specs if alg == "swss" else [None]
            for spec in specs:
                timed_solve(alg, m, spec, cap, safety_cap, split_phases, brute_limit)
                wall_times = []
                for rep in range(repeats):
                    out = timed_solve(
                        alg, m, spec, cap, safety_cap, split_phases, brute_limit
                    )
                    wall_times.append(out.wall_time_ns)
                    true_sum = rect_sum(full, out.rect)
                    iou_val = (
                        iou(out.rect, oracle_rect) if oracle_rect is not None else None
                    )
                    records.append(
                        BenchRecord(
                            algorithm=alg,
                            rows=m.rows,
                            cols=m.cols,
                            stride_spec=out.stride_spec,
                            resolved_stride=out.resolved_stride,
                            wall_time_ns=out.wall_time_ns,
                            prep_time_ns=out.prep_time_ns,
                            search_time_ns=out.search_time_ns,
                            iterations=out.iterations,
                            termination=out.termination,
                            rect=out.rect.as_tuple(),
                            true_sum=true_sum,
                            reported_sum=out.reported_sum,
                            iou_vs_oracle=iou_val,
                            coherence=coherence,
                            source=source,
                            repeat=rep,
                        )
                    )
                key = (alg, str(spec) if spec is not None else None)
                times[source][key] = statistics.median(wall_times)
                if oracle_rect is not None:
                    hits.setdefault(key, []).append(
                        iou(out.rect, oracle_rect) >= iou_threshold
                    )

    summary = _summarize(times, hits, iou_threshold)
    return records, summary


def _summarize(
    times: dict[str, dict[tuple[str, str | None], float]],
    hits: dict[tuple[str, str | None], list[bool]],
    iou_threshold: float,
) -> list[str]:
    lines = []
    keys = sorted({k for per_input in times.values() for k in per_input})
    base = ("aess", None)
    if any(base in per_input for per_input in times.values()):
        for key in keys:
            if key == base:
                continue
            ratios = [
                per_input[base] / per_input[key]
                for per_input in times.values()
                if base in per_input and key in per_input
            ]
            if ratios:
                label = key[0] if key[1] is None else f"{key[0]}[{key[1]}]"
                lines.append(
                    f"speedup {label} vs aess: median {statistics.median(ratios):.2f}x"
                    f" over {len(ratios)} input(s)"
                )
    for key, flags in sorted(hits.items()):
        label = key[0] if key[1] is None else f"{key[0]}[{key[1]}]"
        lines.append(
            f"accuracy {label} vs oracle at IoU>={iou_threshold:g}: "
            f"{sum(flags)}/{len(flags)}"
        )
    return lines


def write_records(records: list[BenchRecord], path, fmt: str = "jsonl") -> None:
    """Append records to ``path`` as JSON lines or CSV (header once)."""
    p = Path(path)
    if fmt == "jsonl":
        with open(p, "a", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_dict(), sort_keys=True))
                fh.write("\n")
    elif fmt == "csv":
        new_file = not p.exists() or p.stat().st_size == 0
        with open(p, "a", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
            if new_file:
                writer.writeheader()
            for rec in records:
                d = rec.to_dict()
                d["rect"] = " ".join(str(i) for i in d["rect"])
                writer.writerow(d)
    else:
        raise ValueError(f"unknown output format {fmt!r}")


def read_records(path) -> list[BenchRecord]:
    """Load a JSONL record file written by :func:`write_records`."""
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(BenchRecord.from_dict(json.loads(line)))
    return records


def check_records(path) -> list[str]:
    """Re-derive every record's input and verify its stored true_sum.

    Returns one message per failing record; an empty list means the file is
    internally consistent.
    """
    errors = []
    cache: dict[str, FullPrefixSums] = {}
    for i, rec in enumerate(read_records(path), start=1):
        try:
            if rec.source not in cache:
                cache[rec.source] = build_full_prefix_sums(
                    matrix_from_source(rec.source)
                )
            rect = Rect.from_bounds(*rec.rect)
            recomputed = rect_sum(cache[rec.source], rect)
        except (ValueError, OSError) as exc:
            errors.append(f"record {i}: cannot verify ({exc})")
            continue
        if recomputed != rec.true_sum:
            errors.append(
                f"record {i}: true_sum {rec.true_sum!r} != recomputed {recomputed!r}"
            )
    return errors
