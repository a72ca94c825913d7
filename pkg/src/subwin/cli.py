"""Command-line surface: solve single inputs, benchmark, score, generate.

Exit codes: 0 on success, 2 for unreadable or malformed inputs, 64 for flag
combinations that parse but make no sense together.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, golden
from .bench import (
    ALGORITHMS,
    BRUTE_LIMIT,
    check_records,
    load_matrix,
    run_bench,
    timed_solve,
    write_records,
)
from .core import build_full_prefix_sums, rect_sum
from .datagen import GenSpec, KINDS, generate, spec_to_text
from .matrix_io import ParseError, write_matrix_csv
from .metrics import CoherenceParams, coherence_score
from .swss import StrideSpec

__all__ = ["main", "UsageError"]


class UsageError(ValueError):
    """Flag combination that parses but cannot be executed."""


def _parse_stride(text: str) -> StrideSpec:
    try:
        return StrideSpec.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="input matrix file")
    p.add_argument(
        "--input-format",
        choices=["csv", "pgm", "ppm", "triplets"],
        help="override format inference from the file suffix",
    )
    p.add_argument(
        "--channel",
        default="R",
        choices=["R", "G", "B"],
        help="color channel for PPM inputs (default R)",
    )


def _add_gen_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=list(KINDS), help="synthetic matrix kind")
    p.add_argument("--rows", type=int, help="generated rows")
    p.add_argument("--cols", type=int, help="generated cols")
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    p.add_argument("--lo", type=float, default=-1.0, help="value range low (default -1)")
    p.add_argument("--hi", type=float, default=1.0, help="value range high (default 1)")
    p.add_argument("--blobs", type=int, default=3, help="blob count (default 3)")
    p.add_argument(
        "--blob-scale", type=float, default=0.15, help="blob width fraction"
    )
    p.add_argument(
        "--noise", type=float, default=0.05, help="additive noise fraction"
    )


def _gen_spec(args, rows: int, cols: int, seed: int) -> GenSpec:
    try:
        return GenSpec(
            rows=rows,
            cols=cols,
            seed=seed,
            kind=args.kind,
            value_range=(args.lo, args.hi),
            num_blobs=args.blobs,
            blob_scale=args.blob_scale,
            noise_level=args.noise,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subwin",
        description="Max-weight rectangle solvers and benchmark harness.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one input and print the result")
    _add_input_flags(p_solve)
    p_solve.add_argument("--alg", required=True, choices=list(ALGORITHMS))
    p_solve.add_argument(
        "--stride",
        default="sqrt",
        help="stride rule for swss: loglog|log|sqrt|logsq|const:K|unit",
    )
    p_solve.add_argument(
        "--cap", type=int, default=20, help="swss iteration cap (default 20)"
    )
    p_solve.add_argument(
        "--safety-cap",
        type=int,
        default=1000,
        help="aess convergence guard (default 1000)",
    )
    p_solve.add_argument(
        "--brute-limit",
        type=int,
        default=BRUTE_LIMIT,
        help=f"max edge length for brute force (default {BRUTE_LIMIT})",
    )

    p_bench = sub.add_parser("bench", help="timed comparison runs, one record per solve")
    p_bench.add_argument(
        "--input", action="append", default=[], help="input file (repeatable)"
    )
    p_bench.add_argument(
        "--input-format", choices=["csv", "pgm", "ppm", "triplets"], default=None
    )
    p_bench.add_argument("--channel", default="R", choices=["R", "G", "B"])
    _add_gen_flags(p_bench)
    p_bench.add_argument(
        "--sizes", default=None, help="generated sizes, e.g. 256 or 256,512"
    )
    p_bench.add_argument(
        "--count", type=int, default=1, help="generated matrices per size (default 1)"
    )
    p_bench.add_argument(
        "--alg", default="aess,swss", help="comma-separated algorithms (default aess,swss)"
    )
    p_bench.add_argument(
        "--stride", default="sqrt", help="comma-separated stride rules for swss"
    )
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--cap", type=int, default=20)
    p_bench.add_argument("--safety-cap", type=int, default=1000)
    p_bench.add_argument(
        "--oracle", action="store_true", help="also solve exactly and record IoU"
    )
    p_bench.add_argument(
        "--coherence", action="store_true", help="record each input's coherence score"
    )
    p_bench.add_argument("--radius", type=int, default=5)
    p_bench.add_argument("--iou-threshold", type=float, default=0.5)
    p_bench.add_argument(
        "--split-phases",
        action="store_true",
        help="also time preprocessing and search separately",
    )
    p_bench.add_argument("--brute-limit", type=int, default=BRUTE_LIMIT)
    p_bench.add_argument("--out", required=True, help="record file (appended)")
    p_bench.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")

    p_coh = sub.add_parser("coherence", help="print an input's coherence score")
    _add_input_flags(p_coh)
    p_coh.add_argument("--radius", type=int, default=5)

    p_gen = sub.add_parser("gen", help="write a synthetic matrix as CSV")
    _add_gen_flags(p_gen)
    p_gen.add_argument("--out", required=True)

    p_check = sub.add_parser("check", help="re-verify true_sum fields in a record file")
    p_check.add_argument("--records", required=True, help="JSONL record file")

    p_gold = sub.add_parser("golden", help="run the frozen end-to-end cases")
    p_gold.add_argument(
        "--corpus", default=None, help="corpus directory (default: repo corpus/)"
    )

    return parser


def _cmd_solve(args) -> int:
    m = load_matrix(args.input, args.input_format, args.channel)
    stride = _parse_stride(args.stride)
    if args.cap < 1 or args.safety_cap < 1:
        raise UsageError("--cap and --safety-cap must be >= 1")
    try:
        outcome = timed_solve(
            args.alg,
            m,
            stride_spec=stride,
            cap=args.cap,
            safety_cap=args.safety_cap,
            brute_limit=args.brute_limit,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    true_sum = rect_sum(build_full_prefix_sums(m), outcome.rect)

    print(f"algorithm: {args.alg}")
    print(f"input: {args.input} ({m.rows}x{m.cols})")
    if args.alg == "swss":
        print(
            f"stride: {outcome.stride_spec} -> {outcome.resolved_stride} "
            f"(offset {outcome.resolved_stride // 2}, natural-log rules, half-up rounding)"
        )
        print(f"estimate: {outcome.reported_sum!r}")
    r1, r2, c1, c2 = outcome.rect.as_tuple()
    print(f"rect: rows [{r1}, {r2}] cols [{c1}, {c2}]")
    print(f"sum: {true_sum!r}")
    print(f"iterations: {outcome.iterations}")
    print(f"termination: {outcome.termination}")
    if outcome.search is not None:
        for i, step in enumerate(outcome.search.trace, start=1):
            print(
                f"trace {i}: col_max={step.col_pass_max!r} "
                f"row_max={step.row_pass_max!r} gain={step.gain!r}"
            )
    return 0


def _cmd_bench(args) -> int:
    inputs: list = []
    for path in args.input:
        inputs.append((f"file:{path}", load_matrix(path, args.input_format, args.channel)))
    if args.sizes is not None or args.kind is not None:
        if args.kind is None or args.sizes is None:
            raise UsageError("generated inputs need both --kind and --sizes")
        if args.count < 1:
            raise UsageError("--count must be >= 1")
        try:
            sizes = [int(s) for s in args.sizes.split(",") if s]
        except ValueError:
            raise UsageError(f"bad --sizes value {args.sizes!r}") from None
        for size in sizes:
            for i in range(args.count):
                spec = _gen_spec(args, size, size, args.seed + i)
                inputs.append((spec_to_text(spec), generate(spec)))
    if not inputs:
        raise UsageError("no inputs: pass --input files and/or --kind with --sizes")
    algorithms = [a for a in args.alg.split(",") if a]
    strides = [_parse_stride(s) for s in args.stride.split(",") if s]
    try:
        records, summary = run_bench(
            inputs,
            algorithms,
            strides,
            repeats=args.repeats,
            cap=args.cap,
            safety_cap=args.safety_cap,
            oracle=args.oracle,
            with_coherence=args.coherence,
            radius=args.radius,
            iou_threshold=args.iou_threshold,
            split_phases=args.split_phases,
            brute_limit=args.brute_limit,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_records(records, args.out, args.format)
    print(f"wrote {len(records)} record(s) to {args.out}")
    for line in summary:
        print(line)
    return 0


def _cmd_coherence(args) -> int:
    m = load_matrix(args.input, args.input_format, args.channel)
    if args.radius < 1:
        raise UsageError("--radius must be >= 1")
    c = coherence_score(m, CoherenceParams(args.radius))
    print(f"coherence: {c!r} (radius {args.radius}, {m.rows}x{m.cols})")
    return 0


def _cmd_gen(args) -> int:
    if args.kind is None or args.rows is None or args.cols is None:
        raise UsageError("gen needs --kind, --rows and --cols")
    spec = _gen_spec(args, args.rows, args.cols, args.seed)
    write_matrix_csv(generate(spec), args.out)
    print(f"wrote {spec_to_text(spec)} to {args.out}")
    return 0


def _cmd_check(args) -> int:
    errors = check_records(args.records)
    if errors:
        for line in errors:
            print(line, file=sys.stderr)
        print(f"check failed: {len(errors)} record(s) inconsistent", file=sys.stderr)
        return 1
    print("all records consistent")
    return 0


def _cmd_golden(args) -> int:
    corpus = Path(args.corpus) if args.corpus else golden.default_corpus_dir()
    report = golden.run_golden_suite(corpus)
    for line in report.lines:
        print(line)
    if report.failures:
        print(f"golden suite failed: {len(report.failures)} case(s)", file=sys.stderr)
        return 1
    print(f"golden suite passed ({report.total} cases)")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "coherence": _cmd_coherence,
    "gen": _cmd_gen,
    "check": _cmd_check,
    "golden": _cmd_golden,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    except (ParseError, FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
