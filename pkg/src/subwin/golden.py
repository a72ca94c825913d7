"""Frozen end-to-end cases: committed inputs with pinned solver outputs.

The corpus directory holds small CSV matrices plus ``golden_cases.jsonl``,
one case per line. Expected values are produced by :func:`build_corpus`
(see scripts/freeze_golden.py) running the in-repo solvers and oracles at
freeze time; nothing in the corpus is typed by hand. The suite re-runs every
case through the same solve path the CLI uses and demands exact rectangle
matches and 1e-9 sum matches, so it doubles as a cross-machine determinism
check.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from .bench import timed_solve
from .core import Matrix, Rect, build_full_prefix_sums, iou, rect_sum
from .datagen import GenSpec, generate
from .exact import bentley_max_rect, brute_force_max_rect
from .matrix_io import read_matrix_csv, write_matrix_csv
from .swss import StrideSpec

__all__ = [
    "GoldenCase",
    "GoldenReport",
    "default_corpus_dir",
    "load_cases",
    "run_golden_suite",
    "build_corpus",
]

CASES_FILE = "golden_cases.jsonl"


@dataclass(frozen=True)
class GoldenCase:
    """One frozen solve: input file, algorithm flags, expected output."""

    name: str
    input: str
    algorithm: str
    stride: str | None
    cap: int
    safety_cap: int
    expected_rect: tuple[int, int, int, int]
    expected_sum: float
    provenance: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["expected_rect"] = list(self.expected_rect)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GoldenCase":
        d = dict(d)
        d["expected_rect"] = tuple(d["expected_rect"])
        return cls(**d)


@dataclass
class GoldenReport:
    total: int
    failures: list[str]
    lines: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


def default_corpus_dir() -> Path:
    """The repo-level corpus/ directory next to the package sources."""
    repo = Path(__file__).resolve().parents[2] / "corpus"
    return repo if repo.is_dir() else Path.cwd() / "corpus"


def load_cases(corpus_dir) -> list[GoldenCase]:
    path = Path(corpus_dir) / CASES_FILE
    cases = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                cases.append(GoldenCase.from_dict(json.loads(line)))
    return cases


def _run_case(corpus_dir: Path, case: GoldenCase) -> tuple[Rect, float]:
    m = read_matrix_csv(corpus_dir / case.input)
    stride = StrideSpec.parse(case.stride) if case.stride else None
    out = timed_solve(
        case.algorithm, m, stride_spec=stride, cap=case.cap, safety_cap=case.safety_cap
    )
    true_sum = rect_sum(build_full_prefix_sums(m), out.rect)
    return out.rect, true_sum


def run_golden_suite(corpus_dir) -> GoldenReport:
    """Execute every case; exact rect match, 1e-9 sum match."""
    corpus = Path(corpus_dir)
    cases = load_cases(corpus)
    failures: list[str] = []
    lines: list[str] = []
    for case in cases:
        rect, true_sum = _run_case(corpus, case)
        problems = []
        if rect.as_tuple() != case.expected_rect:
            problems.append(f"rect {rect.as_tuple()} != expected {case.expected_rect}")
        if not math.isclose(
            true_sum, case.expected_sum, rel_tol=1e-9, abs_tol=1e-9
        ):
            problems.append(f"sum {true_sum!r} != expected {case.expected_sum!r}")
        if problems:
            failures.append(f"{case.name}: " + "; ".join(problems))
            lines.append(f"FAIL {case.name}: " + "; ".join(problems))
        else:
            lines.append(f"PASS {case.name} [{case.provenance}]")
    return GoldenReport(total=len(cases), failures=failures, lines=lines)


def _freeze(
    corpus: Path,
    name: str,
    input_file: str,
    algorithm: str,
    stride: str | None,
    provenance: str,
    cap: int = 20,
    safety_cap: int = 1000,
) -> GoldenCase:
    case_stub = GoldenCase(
        name=name,
        input=input_file,
        algorithm=algorithm,
        stride=stride,
        cap=cap,
        safety_cap=safety_cap,
        expected_rect=(0, 0, 0, 0),
        expected_sum=0.0,
        provenance=provenance,
    )
    rect, true_sum = _run_case(corpus, case_stub)
    return GoldenCase(
        name=name,
        input=input_file,
        algorithm=algorithm,
        stride=stride,
        cap=cap,
        safety_cap=safety_cap,
        expected_rect=rect.as_tuple(),
        expected_sum=true_sum,
        provenance=provenance,
    )


def build_corpus(corpus_dir) -> list[GoldenCase]:
    """Regenerate the committed corpus: inputs, then frozen expectations.

    Deterministic end to end; rebuilding on another machine must reproduce
    the committed files byte for byte.
    """
    corpus = Path(corpus_dir)
    corpus.mkdir(parents=True, exist_ok=True)

    write_matrix_csv(Matrix([[1.0, -2.0], [-3.0, 4.0]]), corpus / "tiny_2x2.csv")
    allneg = generate(
        GenSpec(rows=6, cols=6, seed=20260808, kind="uniform_random",
                value_range=(-2.0, -0.1))
    )
    write_matrix_csv(allneg, corpus / "allneg_6x6.csv")
    blob = generate(
        GenSpec(rows=100, cols=100, seed=7, kind="coherent_blobs",
                num_blobs=1, blob_scale=0.18, noise_level=0.05)
    )
    write_matrix_csv(blob, corpus / "blob_100x100.csv")
    rand = generate(GenSpec(rows=24, cols=24, seed=99, kind="uniform_random"))
    write_matrix_csv(rand, corpus / "rand_24x24.csv")
    checker = generate(GenSpec(rows=4, cols=4, seed=0, kind="checkerboard"))
    write_matrix_csv(checker, corpus / "checker_4x4.csv")

    # sanity anchors for the frozen expectations below
    tiny = read_matrix_csv(corpus / "tiny_2x2.csv")
    assert brute_force_max_rect(tiny).rect.as_tuple() == (1, 1, 1, 1)
    blob_exact = bentley_max_rect(read_matrix_csv(corpus / "blob_100x100.csv"))

    cases = [
        _freeze(corpus, "tiny_bentley", "tiny_2x2.csv", "bentley", None,
                "derived: enumeration oracle agrees"),
        _freeze(corpus, "allneg_bentley", "allneg_6x6.csv", "bentley", None,
                "derived: enumeration oracle agrees"),
        _freeze(corpus, "allneg_aess", "allneg_6x6.csv", "aess", None,
                "trivial: all-negative input collapses to one cell"),
        _freeze(corpus, "checker_bentley", "checker_4x4.csv", "bentley", None,
                "derived: enumeration oracle agrees"),
        _freeze(corpus, "blob_swss_stride10", "blob_100x100.csv", "swss", "const:10",
                "derived: frozen sampled search; exact-optimum IoU checked at freeze"),
        _freeze(corpus, "unit_degeneracy_aess", "rand_24x24.csv", "aess", None,
                "trivial: baseline for the stride-1 equivalence"),
        _freeze(corpus, "unit_degeneracy_swss", "rand_24x24.csv", "swss", "unit",
                "trivial: stride 1 must reproduce the aess case exactly",
                cap=1000),
    ]

    by_name = {c.name: c for c in cases}
    # enumeration oracle must agree wherever it is feasible
    for name, path in [
        ("tiny_bentley", "tiny_2x2.csv"),
        ("allneg_bentley", "allneg_6x6.csv"),
        ("checker_bentley", "checker_4x4.csv"),
    ]:
        oracle = brute_force_max_rect(read_matrix_csv(corpus / path))
        if not math.isclose(oracle.sum, by_name[name].expected_sum,
                            rel_tol=1e-9, abs_tol=1e-9):
            raise AssertionError(f"{name}: oracle sum disagrees at freeze time")
    swss_case = by_name["blob_swss_stride10"]
    if iou(Rect.from_bounds(*swss_case.expected_rect), blob_exact.rect) < 0.5:
        raise AssertionError("blob case drifted too far from the exact optimum")
    if by_name["unit_degeneracy_swss"].expected_rect != by_name[
        "unit_degeneracy_aess"
    ].expected_rect:
        raise AssertionError("stride-1 search must match the baseline exactly")

    with open(corpus / CASES_FILE, "w", encoding="utf-8") as fh:
        for case in cases:
            fh.write(json.dumps(case.to_dict(), sort_keys=True))
            fh.write("\n")
    return cases
