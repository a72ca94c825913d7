import math

import numpy as np
import pytest

from conftest import naive_rect_sum
from subwin.aess import GAIN_NONPOSITIVE, ITERATION_CAP, STATIONARY, aess_search
from subwin.core import Interval, Matrix, build_full_prefix_sums, iou
from subwin.datagen import GenSpec, generate
from subwin.exact import bentley_max_rect
from subwin.swss import (
    StrideSpec,
    SwssConfig,
    build_partial_prefix_sums,
    resolve_stride,
    sampled_col_aggregate,
    sampled_row_aggregate,
    swss_search,
)


class TestStrideSpec:
    def test_sqrt_of_100(self):
        assert resolve_stride(100, StrideSpec("sqrt")) == 10

    def test_loglog_clamps_to_one(self):
        assert resolve_stride(4, StrideSpec("loglog")) == 1
        assert resolve_stride(1, StrideSpec("loglog")) == 1

    def test_logsq_of_2048(self):
        # ln(2048)^2 = 58.134..., rounded half-up
        assert math.isclose(math.log(2048) ** 2, 58.134, abs_tol=0.01)
        assert resolve_stride(2048, StrideSpec("logsq")) == 58

    def test_log_of_100(self):
        assert resolve_stride(100, StrideSpec("log")) == 5  # ln 100 = 4.605

    def test_unit(self):
        assert resolve_stride(977, StrideSpec("unit")) == 1

    def test_constant_clamps_to_dimension(self):
        assert resolve_stride(100, StrideSpec("constant", 7)) == 7
        assert resolve_stride(3, StrideSpec("constant", 7)) == 3

    def test_n_one_resolves_to_one_for_all_kinds(self):
        for kind in ("loglog", "log", "sqrt", "logsq", "unit"):
            assert resolve_stride(1, StrideSpec(kind)) == 1

    def test_validation(self):
        with pytest.raises(ValueError):
            StrideSpec("bogus")
        with pytest.raises(ValueError):
            StrideSpec("constant")
        with pytest.raises(ValueError):
            StrideSpec("constant", 0)
        with pytest.raises(ValueError):
            StrideSpec("sqrt", 3)
        with pytest.raises(ValueError):
            StrideSpec("sqrt").resolve(0)

    def test_parse_and_text_round_trip(self):
        for text in ("loglog", "log", "sqrt", "logsq", "unit", "const:4"):
            assert str(StrideSpec.parse(text)) == text
        with pytest.raises(ValueError):
            StrideSpec.parse("const:x")


class TestBuildPartial:
    def test_sampled_lines_match_worked_offsets(self):
        m = Matrix(np.zeros((100, 100)))
        p = build_partial_prefix_sums(m, 10, 5)
        assert p.sampled_rows.tolist() == list(range(5, 100, 10))
        assert p.sampled_cols.tolist() == list(range(5, 100, 10))

    def test_stride_one_equals_full_tables_bitwise(self):
        rng = np.random.default_rng(8)
        m = Matrix(rng.uniform(-1, 1, (13, 17)))
        partial = build_partial_prefix_sums(m, 1, 0)
        full = build_full_prefix_sums(m)
        assert np.array_equal(partial.row_prefix, full.horiz)
        assert np.array_equal(partial.col_prefix, full.vert)

    def test_each_sampled_line_matches_the_full_table(self):
        rng = np.random.default_rng(9)
        m = Matrix(rng.uniform(-1, 1, (30, 30)))
        p = build_partial_prefix_sums(m, 7, 3)
        full = build_full_prefix_sums(m)
        for i, row in enumerate(p.sampled_rows):
            assert np.array_equal(p.row_prefix[i], full.horiz[row])
        for j, col in enumerate(p.sampled_cols):
            assert np.array_equal(p.col_prefix[:, j], full.vert[:, col])

    def test_counters(self):
        m = Matrix(np.ones((30, 40)))
        p = build_partial_prefix_sums(m, 7, 3)
        n_rows = len(range(3, 30, 7))
        n_cols = len(range(3, 40, 7))
        assert p.entries_touched == n_rows * 40 + n_cols * 30
        assert p.stored_entries == n_rows * 41 + n_cols * 31

    def test_stride_larger_than_dimension_leaves_axis_empty(self):
        m = Matrix(np.ones((3, 50)))
        p = build_partial_prefix_sums(m, 20, 10)
        assert p.sampled_rows.size == 0
        assert p.sampled_cols.tolist() == [10, 30]

    def test_validation(self):
        m = Matrix([[1.0]])
        with pytest.raises(ValueError):
            build_partial_prefix_sums(m, 0, 0)
        with pytest.raises(ValueError):
            build_partial_prefix_sums(m, 3, 3)
        with pytest.raises(ValueError):
            build_partial_prefix_sums(m, 3, -1)


class TestAggregates:
    def test_zero_matrix_gives_zero_arrays(self):
        m = Matrix(np.zeros((12, 12)))
        p = build_partial_prefix_sums(m, 4, 2)
        assert not sampled_col_aggregate(p, Interval(0, 11), 12).any()
        assert not sampled_row_aggregate(p, Interval(0, 11), 12).any()

    def test_stride_one_equals_exact_aggregation(self):
        rng = np.random.default_rng(10)
        m = Matrix(rng.uniform(-1, 1, (9, 11)))
        p = build_partial_prefix_sums(m, 1, 0)
        full = build_full_prefix_sums(m)
        got = sampled_col_aggregate(p, Interval(2, 6), 11)
        assert np.array_equal(got, full.vert[7] - full.vert[2])
        got = sampled_row_aggregate(p, Interval(3, 8), 9)
        assert np.array_equal(got, full.horiz[:, 9] - full.horiz[:, 3])

    def test_sampled_positions_match_naive_sums_zeros_elsewhere(self):
        rng = np.random.default_rng(12)
        v = rng.uniform(-2, 2, (20, 20))
        p = build_partial_prefix_sums(Matrix(v), 4, 2)
        span = Interval(5, 14)
        a = sampled_col_aggregate(p, span, 20)
        for j in range(20):
            if j in p.sampled_cols:
                assert a[j] == pytest.approx(
                    naive_rect_sum(v, 5, 14, j, j), rel=1e-12, abs=1e-12
                )
            else:
                assert a[j] == 0.0
        b = sampled_row_aggregate(p, span, 20)
        for i in range(20):
            if i in p.sampled_rows:
                assert b[i] == pytest.approx(
                    naive_rect_sum(v, i, i, 5, 14), rel=1e-12, abs=1e-12
                )
            else:
                assert b[i] == 0.0

    def test_argument_validation(self):
        p = build_partial_prefix_sums(Matrix(np.ones((5, 5))), 2, 1)
        with pytest.raises(ValueError):
            sampled_col_aggregate(p, Interval(0, 4), 6)
        with pytest.raises(ValueError):
            sampled_col_aggregate(p, Interval(0, 5), 5)
        with pytest.raises(ValueError):
            sampled_row_aggregate(p, Interval(0, 4), 6)
        with pytest.raises(ValueError):
            sampled_row_aggregate(p, Interval(0, 5), 5)


class TestSwssSearch:
    def test_unit_stride_reproduces_the_exact_search(self):
        rng = np.random.default_rng(14)
        cfg = SwssConfig(StrideSpec("unit"), iteration_cap=1000)
        for _ in range(20):
            rows, cols = rng.integers(8, 40, 2).tolist()
            m = Matrix(rng.uniform(-1, 1, (rows, cols)))
            sampled = swss_search(m, cfg)
            exact = aess_search(m, safety_cap=1000)
            assert sampled.rect == exact.rect
            assert sampled.iterations == exact.iterations
            assert sampled.trace == exact.trace

    def test_block_with_coarse_stride_still_lands_near_the_optimum(self):
        v = np.zeros((100, 100))
        v[20:50, 20:50] = 1.0
        m = Matrix(v)
        res = swss_search(m, SwssConfig(StrideSpec("constant", 10), 20))
        # sampled search cannot see the block edges; it stops one stride short
        assert res.rect.as_tuple() == (0, 45, 0, 45)
        assert res.iterations == 1
        assert res.reported_sum == 78.0  # estimate over sampled lines only
        exact = bentley_max_rect(m)
        assert iou(res.rect, exact.rect) >= 0.5

    def test_adversarial_random_input_hits_the_cap(self):
        m = generate(GenSpec(rows=64, cols=64, seed=8, kind="uniform_random"))
        res = swss_search(m, SwssConfig(StrideSpec("sqrt"), 20))
        assert res.termination == ITERATION_CAP
        assert res.iterations == 20
        assert all(step.gain > 0 for step in res.trace)

    def test_iterations_never_exceed_cap(self):
        rng = np.random.default_rng(15)
        cfg = SwssConfig(StrideSpec("sqrt"), 20)
        for _ in range(50):
            rows, cols = rng.integers(16, 65, 2).tolist()
            m = Matrix(rng.uniform(-1, 1, (rows, cols)))
            res = swss_search(m, cfg)
            assert res.iterations <= 20
            assert res.termination in (GAIN_NONPOSITIVE, ITERATION_CAP, STATIONARY)
            for step in res.trace:
                assert step.gain == step.row_pass_max - step.col_pass_max

    def test_reported_sum_is_an_estimate_not_the_true_sum(self):
        v = np.zeros((100, 100))
        v[20:50, 20:50] = 1.0
        res = swss_search(Matrix(v), SwssConfig(StrideSpec("constant", 10), 20))
        true = naive_rect_sum(v, *res.rect.as_tuple()[:2], *res.rect.as_tuple()[2:])
        assert res.reported_sum < true  # sampling undercounts here

    def test_stride_resolved_from_larger_dimension(self):
        m = Matrix(np.ones((4, 100)))
        res = swss_search(m, SwssConfig(StrideSpec("sqrt"), 20))
        assert res.rect.col_span.hi <= 99
        p = build_partial_prefix_sums(m, 10, 5)
        assert p.sampled_rows.size == 0  # rows axis degenerates, search survives

    def test_partial_tables_must_match_config(self):
        m = Matrix(np.ones((20, 20)))
        wrong = build_partial_prefix_sums(m, 3, 1)
        with pytest.raises(ValueError):
            swss_search(m, SwssConfig(StrideSpec("sqrt"), 20), partial=wrong)

    def test_prebuilt_tables_give_identical_result(self):
        m = Matrix(np.random.default_rng(16).uniform(-1, 1, (36, 28)))
        cfg = SwssConfig(StrideSpec("sqrt"), 20)
        stride = cfg.stride_spec.resolve(36)
        tables = build_partial_prefix_sums(m, stride, stride // 2)
        assert swss_search(m, cfg) == swss_search(m, cfg, partial=tables)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SwssConfig(StrideSpec("sqrt"), 0)


class TestResourceBounds:
    @pytest.mark.parametrize("n", [64, 128])
    @pytest.mark.parametrize("kind", ["sqrt", "log"])
    def test_touch_and_storage_bounds(self, n, kind):
        m = generate(GenSpec(rows=n, cols=n, seed=1, kind="uniform_random"))
        stride = resolve_stride(n, StrideSpec(kind))
        p = build_partial_prefix_sums(m, stride, stride // 2)
        lines = math.ceil(n / stride)
        assert p.entries_touched <= 2 * n * lines
        assert p.stored_entries <= 2 * n * lines + 2 * n
