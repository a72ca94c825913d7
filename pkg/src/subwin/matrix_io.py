"""Matrix ingestion and persistence: CSV, netpbm images, sparse triplets.

Every parser validates as it reads and raises :class:`ParseError` with the
offending line (or byte offset, for binary raster data), so a returned
Matrix always satisfies the core invariants. Values are parsed and written
as float64; CSV and triplet files round-trip doubles exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import math

import numpy as np

from .core import Matrix

__all__ = [
    "ParseError",
    "SparseTriplets",
    "read_matrix_csv",
    "write_matrix_csv",
    "read_pgm_channel",
    "read_ppm_channel",
    "parse_sparse_triplets",
    "read_sparse_triplets",
    "write_sparse_triplets",
]


class ParseError(ValueError):
    """Malformed input file, with a location.

    ``line`` is 1-based for text formats; binary formats report a byte
    offset in the message instead.
    """

    def __init__(self, path, message: str, line: int | None = None):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


# --- CSV ---------------------------------------------------------------


def read_matrix_csv(path) -> Matrix:
    """Rectangular numeric CSV -> Matrix. Blank lines are ignored."""
    rows: list[list[float]] = []
    width = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            cells = line.split(",")
            if rows and len(cells) != width:
                raise ParseError(
                    path,
                    f"ragged row: expected {width} cells, got {len(cells)}",
                    line=lineno,
                )
            parsed = []
            for cell in cells:
                try:
                    value = float(cell)
                except ValueError:
                    raise ParseError(
                        path, f"non-numeric cell {cell.strip()!r}", line=lineno
                    ) from None
                if not math.isfinite(value):
                    raise ParseError(
                        path, f"non-finite cell {cell.strip()!r}", line=lineno
                    )
                parsed.append(value)
            if not rows:
                width = len(parsed)
            rows.append(parsed)
    if not rows:
        raise ParseError(path, "empty file: no matrix rows", line=1)
    return Matrix(rows)


def write_matrix_csv(m: Matrix, path) -> None:
    """One CSV line per row; floats written with exact round-trip reprs."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in m.values:
            fh.write(",".join(repr(float(x)) for x in row))
            fh.write("\n")


# --- netpbm (PGM / PPM) --------------------------------------------------


def read_pgm_channel(path) -> Matrix:
    """Grayscale PGM (P2 ASCII or P5 binary) as a matrix of raw intensities."""
    pixels = _read_netpbm(path, magics=("P2", "P5"), samples_per_pixel=1)
    return Matrix(pixels[:, :, 0])


def read_ppm_channel(path, channel: str = "R") -> Matrix:
    """One color channel of a PPM (P3 ASCII or P6 binary) image."""
    try:
        idx = {"R": 0, "G": 1, "B": 2}[channel.upper()]
    except KeyError:
        raise ValueError(f"channel must be R, G or B, got {channel!r}") from None
    pixels = _read_netpbm(path, magics=("P3", "P6"), samples_per_pixel=3)
    return Matrix(pixels[:, :, idx])


def _read_netpbm(path, magics: tuple[str, ...], samples_per_pixel: int) -> np.ndarray:
    data = Path(path).read_bytes()
    pos = 0

    def next_token() -> tuple[bytes, int]:
        nonlocal pos
        while pos < len(data):
            byte = data[pos : pos + 1]
            if byte == b"#":  # comment runs to end of line
                while pos < len(data) and data[pos : pos + 1] not in (b"\n", b"\r"):
                    pos += 1
            elif byte.isspace():
                pos += 1
            else:
                break
        if pos >= len(data):
            raise ParseError(path, f"truncated header at byte {pos}")
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        return data[start:pos], start

    magic, _ = next_token()
    if magic.decode("ascii", "replace") not in magics:
        raise ParseError(
            path,
            f"bad magic number {magic!r}, expected one of {'/'.join(magics)}",
        )

    def next_int(what: str, at_least: int, at_most: int) -> int:
        token, start = next_token()
        try:
            value = int(token)
        except ValueError:
            raise ParseError(
                path, f"bad {what} token {token!r} at byte {start}"
            ) from None
        if not at_least <= value <= at_most:
            raise ParseError(
                path, f"{what} {value} out of range [{at_least}, {at_most}]"
            )
        return value

    width = next_int("width", 1, 1 << 30)
    height = next_int("height", 1, 1 << 30)
    maxval = next_int("maxval", 1, 65535)
    count = width * height * samples_per_pixel

    if magic in (b"P5", b"P6"):
        pos += 1  # exactly one whitespace byte separates header and raster
        bytes_per_sample = 2 if maxval > 255 else 1
        need = count * bytes_per_sample
        raster = data[pos : pos + need]
        if len(raster) < need:
            raise ParseError(
                path,
                f"truncated pixel data at byte {pos + len(raster)}: "
                f"expected {need} raster bytes, found {len(raster)}",
            )
        dtype = ">u2" if bytes_per_sample == 2 else "u1"
        flat = np.frombuffer(raster, dtype=dtype).astype(np.float64)
    else:
        values = []
        while len(values) < count:
            token, start = next_token()
            try:
                values.append(int(token))
            except ValueError:
                raise ParseError(
                    path, f"bad sample token {token!r} at byte {start}"
                ) from None
        flat = np.asarray(values, dtype=np.float64)

    if flat.max() > maxval:
        raise ParseError(path, f"sample value {int(flat.max())} exceeds maxval {maxval}")
    return flat.reshape(height, width, samples_per_pixel)


# --- sparse triplets -----------------------------------------------------


@dataclass(frozen=True)
class SparseTriplets:
    """Header dimensions plus explicit (row, col, weight) entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, float], ...]


def parse_sparse_triplets(path) -> SparseTriplets:
    """Text format: a "rows cols" header line, then "row col weight" lines."""
    entries: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    rows = cols = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            tokens = line.split()
            if rows is None:
                if len(tokens) != 2:
                    raise ParseError(
                        path, "header must be exactly 'rows cols'", line=lineno
                    )
                try:
                    rows, cols = int(tokens[0]), int(tokens[1])
                except ValueError:
                    raise ParseError(
                        path, f"non-integer header {line!r}", line=lineno
                    ) from None
                if rows < 1 or cols < 1:
                    raise ParseError(path, "dimensions must be >= 1", line=lineno)
                continue
            if len(tokens) != 3:
                raise ParseError(
                    path, "entry must be exactly 'row col weight'", line=lineno
                )
            try:
                r, c, w = int(tokens[0]), int(tokens[1]), float(tokens[2])
            except ValueError:
                raise ParseError(path, f"bad entry {line!r}", line=lineno) from None
            if not math.isfinite(w):
                raise ParseError(path, f"non-finite weight {tokens[2]!r}", line=lineno)
            if not (0 <= r < rows and 0 <= c < cols):
                raise ParseError(
                    path, f"index ({r}, {c}) out of bounds for {rows}x{cols}",
                    line=lineno,
                )
            if (r, c) in seen:
                raise ParseError(path, f"duplicate cell ({r}, {c})", line=lineno)
            seen.add((r, c))
            entries.append((r, c, w))
    if rows is None:
        raise ParseError(path, "empty file: missing 'rows cols' header", line=1)
    return SparseTriplets(rows=rows, cols=cols, entries=tuple(entries))


def read_sparse_triplets(path) -> Matrix:
    """Parse and densify: listed weights in place, zeros everywhere else."""
    t = parse_sparse_triplets(path)
    dense = np.zeros((t.rows, t.cols))
    for r, c, w in t.entries:
        dense[r, c] = w
    return Matrix(dense)


def write_sparse_triplets(m: Matrix, path) -> None:
    """Write nonzero cells only; densifying the result restores the matrix."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{m.rows} {m.cols}\n")
        for r, c in zip(*np.nonzero(m.values)):
            fh.write(f"{int(r)} {int(c)} {float(m.values[r, c])!r}\n")
