import struct

import numpy as np
import pytest

from subwin.core import Matrix
from subwin.datagen import GenSpec, generate
from subwin.matrix_io import (
    ParseError,
    parse_sparse_triplets,
    read_matrix_csv,
    read_pgm_channel,
    read_ppm_channel,
    read_sparse_triplets,
    write_matrix_csv,
    write_sparse_triplets,
)


class TestCsv:
    def test_basic_parse(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("1,2\n3,4\n")
        assert read_matrix_csv(path).values.tolist() == [[1, 2], [3, 4]]

    def test_round_trip_is_bit_exact(self, tmp_path):
        m = generate(GenSpec(rows=8, cols=8, seed=1))
        path = tmp_path / "m.csv"
        write_matrix_csv(m, path)
        assert read_matrix_csv(path) == m

    def test_ragged_row_names_line(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(ParseError, match="ragged") as err:
            read_matrix_csv(path)
        assert err.value.line == 2

    def test_non_numeric_cell(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3,x\n")
        with pytest.raises(ParseError, match="non-numeric") as err:
            read_matrix_csv(path)
        assert err.value.line == 2

    def test_non_finite_cell(self, tmp_path):
        path = tmp_path / "inf.csv"
        path.write_text("1,inf\n")
        with pytest.raises(ParseError, match="non-finite"):
            read_matrix_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(ParseError, match="empty"):
            read_matrix_csv(path)

    def test_blank_lines_ignored(self, tmp_path):
        path = tmp_path / "blank.csv"
        path.write_text("1,2\n\n3,4\n\n")
        assert read_matrix_csv(path).values.tolist() == [[1, 2], [3, 4]]

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_matrix_csv(tmp_path / "nope.csv")


class TestPgm:
    def test_tiny_ascii(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P2\n1 1\n255\n7\n")
        assert read_pgm_channel(path).values.tolist() == [[7.0]]

    def test_binary_with_comment(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P5\n# a comment\n3 2\n255\n" + bytes([1, 2, 3, 4, 5, 6]))
        assert read_pgm_channel(path).values.tolist() == [[1, 2, 3], [4, 5, 6]]

    def test_16_bit_big_endian(self, tmp_path):
        path = tmp_path / "t.pgm"
        samples = struct.pack(">4H", 0, 300, 65535, 12)
        path.write_bytes(b"P5 2 2 65535\n" + samples)
        assert read_pgm_channel(path).values.tolist() == [[0, 300], [65535, 12]]

    def test_truncated_raster(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P5\n2 2\n255\n" + bytes([1, 2, 3]))
        with pytest.raises(ParseError, match="truncated"):
            read_pgm_channel(path)

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P9\n1 1\n255\n\x00")
        with pytest.raises(ParseError, match="magic"):
            read_pgm_channel(path)

    def test_ppm_magic_rejected_by_pgm_reader(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
        with pytest.raises(ParseError, match="magic"):
            read_pgm_channel(path)

    def test_sample_above_maxval(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P2\n1 1\n10\n11\n")
        with pytest.raises(ParseError, match="exceeds maxval"):
            read_pgm_channel(path)

    def test_truncated_ascii(self, tmp_path):
        path = tmp_path / "t.pgm"
        path.write_bytes(b"P2\n2 2\n255\n1 2 3\n")
        with pytest.raises(ParseError, match="truncated"):
            read_pgm_channel(path)


class TestPpm:
    def test_channel_extraction(self, tmp_path):
        path = tmp_path / "t.ppm"
        path.write_bytes(b"P6\n1 2\n255\n" + bytes([255, 0, 0, 0, 0, 255]))
        assert read_ppm_channel(path, "R").values.tolist() == [[255], [0]]
        assert read_ppm_channel(path, "G").values.tolist() == [[0], [0]]
        assert read_ppm_channel(path, "B").values.tolist() == [[0], [255]]

    def test_ascii_variant(self, tmp_path):
        path = tmp_path / "t.ppm"
        path.write_text("P3\n2 1\n9\n1 2 3 4 5 6\n")
        assert read_ppm_channel(path, "g").values.tolist() == [[2, 5]]

    def test_bad_channel(self, tmp_path):
        path = tmp_path / "t.ppm"
        path.write_bytes(b"P6\n1 1\n255\n\x01\x02\x03")
        with pytest.raises(ValueError, match="channel"):
            read_ppm_channel(path, "Q")

    def test_against_independent_decoder(self, tmp_path):
        # second decoder: struct-based, written from the format definition
        rng = np.random.default_rng(33)
        w, h = 7, 5
        raster = rng.integers(0, 256, w * h * 3).astype(np.uint8)
        path = tmp_path / "r.ppm"
        path.write_bytes(f"P6\n{w} {h}\n255\n".encode() + raster.tobytes())

        blob = path.read_bytes()
        header_end = blob.index(b"255\n") + 4
        flat = struct.unpack(f"{w * h * 3}B", blob[header_end:])
        for idx, name in enumerate("RGB"):
            expected = [
                [float(flat[(r * w + c) * 3 + idx]) for c in range(w)]
                for r in range(h)
            ]
            assert read_ppm_channel(path, name).values.tolist() == expected


class TestSparseTriplets:
    def test_basic(self, tmp_path):
        path = tmp_path / "t.tri"
        path.write_text("2 2\n0 0 1.5\n")
        assert read_sparse_triplets(path).values.tolist() == [[1.5, 0], [0, 0]]

    def test_empty_entry_list_gives_zero_matrix(self, tmp_path):
        path = tmp_path / "t.tri"
        path.write_text("3 4\n")
        m = read_sparse_triplets(path)
        assert (m.rows, m.cols) == (3, 4)
        assert not m.values.any()

    def test_duplicate_cell_names_line(self, tmp_path):
        path = tmp_path / "t.tri"
        path.write_text("2 2\n0 1 3.0\n0 1 4.0\n")
        with pytest.raises(ParseError, match="duplicate") as err:
            read_sparse_triplets(path)
        assert err.value.line == 3

    def test_out_of_bounds_index(self, tmp_path):
        path = tmp_path / "t.tri"
        path.write_text("2 2\n2 0 1.0\n")
        with pytest.raises(ParseError, match="out of bounds") as err:
            read_sparse_triplets(path)
        assert err.value.line == 2

    def test_bad_header(self, tmp_path):
        path = tmp_path / "t.tri"
        path.write_text("2\n")
        with pytest.raises(ParseError, match="header"):
            read_sparse_triplets(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "t.tri"
        path.write_text("")
        with pytest.raises(ParseError, match="header"):
            read_sparse_triplets(path)

    def test_round_trip_is_bit_exact(self, tmp_path):
        rng = np.random.default_rng(44)
        v = rng.uniform(-1, 1, (9, 6))
        v[rng.uniform(size=(9, 6)) < 0.7] = 0.0  # sparse-ish
        m = Matrix(v)
        path = tmp_path / "t.tri"
        write_sparse_triplets(m, path)
        assert read_sparse_triplets(path) == m
        parsed = parse_sparse_triplets(path)
        assert len(parsed.entries) == int(np.count_nonzero(v))
