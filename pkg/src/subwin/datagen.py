"""Seeded synthetic matrices plus size and normalization transforms.

All randomness flows through numpy's PCG64 generator, so a given spec
reproduces bit-identical matrices on any platform running a compatible
numpy (the pinned dependency floor in pyproject keeps the stream stable).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Matrix

__all__ = [
    "GenSpec",
    "generate",
    "duplicate_scale",
    "normalize_zero_mean",
    "spec_to_text",
    "spec_from_text",
]

KINDS = ("uniform_random", "coherent_blobs", "checkerboard")


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one synthetic matrix.

    ``value_range`` bounds uniform noise directly; for coherent blobs it
    sets the overall scale (mildly negative background at -5% of the span,
    positive Gaussian bumps up to half the span). ``num_blobs``,
    ``blob_scale`` (bump width as a fraction of the short dimension) and
    ``noise_level`` (additive uniform noise as a fraction of the span) only
    apply to the coherent_blobs kind.
    """

    rows: int
    cols: int
    seed: int
    kind: str = "uniform_random"
    value_range: tuple[float, float] = (-1.0, 1.0)
    num_blobs: int = 3
    blob_scale: float = 0.15
    noise_level: float = 0.05

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be >= 1")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        lo, hi = self.value_range
        if not lo < hi:
            raise ValueError(f"value_range must satisfy lo < hi, got ({lo}, {hi})")
        if self.num_blobs < 1:
            raise ValueError("num_blobs must be >= 1")
        if self.blob_scale <= 0:
            raise ValueError("blob_scale must be positive")
        if self.noise_level < 0:
            raise ValueError("noise_level must be >= 0")


def generate(spec: GenSpec) -> Matrix:
    """Deterministic matrix for a spec; same seed, same bits."""
    lo, hi = spec.value_range
    if spec.kind == "checkerboard":
        rr = np.arange(spec.rows)[:, None]
        cc = np.arange(spec.cols)[None, :]
        out = np.where((rr + cc) % 2 == 0, hi, lo).astype(np.float64)
        return Matrix(out)

    rng = np.random.default_rng(spec.seed)
    if spec.kind == "uniform_random":
        return Matrix(rng.uniform(lo, hi, (spec.rows, spec.cols)))

    # coherent_blobs: smooth positive bumps on a mildly negative background,
    # so a clearly localized optimum exists.
    span = hi - lo
    out = np.full((spec.rows, spec.cols), -0.05 * span)
    rr = np.arange(spec.rows, dtype=np.float64)[:, None]
    cc = np.arange(spec.cols, dtype=np.float64)[None, :]
    short_dim = min(spec.rows, spec.cols)
    for k in range(spec.num_blobs):
        center_r = rng.uniform(0.15, 0.85) * (spec.rows - 1)
        center_c = rng.uniform(0.15, 0.85) * (spec.cols - 1)
        sigma = max(1.0, spec.blob_scale * short_dim * rng.uniform(0.75, 1.25))
        # later blobs shrink so one region usually dominates the optimum
        amp = 0.5 * span * rng.uniform(0.5, 1.0) * 0.55**k
        out += amp * np.exp(
            -((rr - center_r) ** 2 + (cc - center_c) ** 2) / (2.0 * sigma * sigma)
        )
    if spec.noise_level > 0:
        out += spec.noise_level * span * rng.uniform(-0.5, 0.5, out.shape)
    return Matrix(out)


def duplicate_scale(m: Matrix, k: int) -> Matrix:
    """Blow the matrix up by replacing each entry with a k x k constant block."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return m
    return Matrix(np.repeat(np.repeat(m.values, k, axis=0), k, axis=1))


def normalize_zero_mean(m: Matrix) -> Matrix:
    """Subtract the mean entry so the result averages to zero.

    The subtraction runs twice to cancel the rounding residue of the first
    pass, making the operation idempotent to within ~1e-12.
    """
    shifted = m.values - m.values.mean()
    shifted -= shifted.mean()
    return Matrix(shifted)


def spec_to_text(spec: GenSpec) -> str:
    """Compact one-line encoding, used to tag benchmark records."""
    lo, hi = spec.value_range
    parts = [
        f"kind={spec.kind}",
        f"rows={spec.rows}",
        f"cols={spec.cols}",
        f"seed={spec.seed}",
        f"lo={lo!r}",
        f"hi={hi!r}",
    ]
    if spec.kind == "coherent_blobs":
        parts += [
            f"blobs={spec.num_blobs}",
            f"scale={spec.blob_scale!r}",
            f"noise={spec.noise_level!r}",
        ]
    return "gen:" + ";".join(parts)


def spec_from_text(text: str) -> GenSpec:
    """Inverse of :func:`spec_to_text`."""
    if not text.startswith("gen:"):
        raise ValueError(f"not a generator spec: {text!r}")
    fields: dict[str, str] = {}
    for part in text[len("gen:") :].split(";"):
        key, _, value = part.partition("=")
        if not value:
            raise ValueError(f"malformed generator spec field {part!r}")
        fields[key] = value
    try:
        kwargs = dict(
            rows=int(fields["rows"]),
            cols=int(fields["cols"]),
            seed=int(fields["seed"]),
            kind=fields["kind"],
            value_range=(float(fields["lo"]), float(fields["hi"])),
        )
        if fields["kind"] == "coherent_blobs":
            kwargs.update(
                num_blobs=int(fields["blobs"]),
                blob_scale=float(fields["scale"]),
                noise_level=float(fields["noise"]),
            )
    except KeyError as exc:
        raise ValueError(f"generator spec missing field {exc}") from None
    return GenSpec(**kwargs)
