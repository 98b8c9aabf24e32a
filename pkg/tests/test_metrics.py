import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import recurtest as rt
from recurtest import InvalidInputError, Metric

from oracles import distance_naive


class TestDistance:
    def test_euclidean_345(self):
        assert rt.distance((0, 0), (3, 4), Metric.L2) == 5.0

    def test_manhattan(self):
        assert rt.distance((0, 0), (3, 4), Metric.L1) == 7.0

    def test_chebyshev(self):
        assert rt.distance((0, 0), (3, 4), Metric.LINF) == 4.0

    def test_self_distance_zero(self):
        v = [1.5, -2.0, 3.25]
        for kind in Metric:
            assert rt.distance(v, v, kind) == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            rt.distance([1, 2], [1, 2, 3], Metric.L2)

    def test_non_finite_entry(self):
        with pytest.raises(InvalidInputError):
            rt.distance([1, np.nan], [0, 0], Metric.L1)
        with pytest.raises(InvalidInputError):
            rt.distance([0, 0], [np.inf, 0], Metric.LINF)

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(st.floats(-50, 50), min_size=1, max_size=6),
        st.sampled_from(list(Metric)),
        st.randoms(use_true_random=False),
    )
    def test_matches_naive_loop(self, a, kind, rnd):
        b = [rnd.uniform(-50, 50) for _ in a]
        got = rt.distance(a, b, kind)
        want = distance_naive(a, b, kind.value)
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)

    def test_symmetry(self):
        rng = np.random.default_rng(3)
        a, b = rng.standard_normal(5), rng.standard_normal(5)
        for kind in Metric:
            assert rt.distance(a, b, kind) == rt.distance(b, a, kind)


class TestEnsureSample:
    def test_1d_promoted_to_column(self):
        s = rt.ensure_sample([1.0, 2.0, 3.0])
        assert s.shape == (3, 1)

    def test_too_few_rows(self):
        with pytest.raises(InvalidInputError):
            rt.ensure_sample([[1.0, 2.0]])

    def test_non_finite(self):
        with pytest.raises(InvalidInputError):
            rt.ensure_sample([[1.0], [np.nan]])

    def test_bad_ndim(self):
        with pytest.raises(InvalidInputError):
            rt.ensure_sample(np.zeros((2, 2, 2)))


class TestPairedDistances:
    def test_hand_example(self):
        pd = rt.paired_distances([0, 1, 3], [0, 2, 3], Metric.L1, Metric.L1)
        assert pd.n == 3 and pd.pair_count == 3 and pd.ordered_pair_count == 6
        assert list(zip(pd.z, pd.t)) == [(1, 2), (3, 3), (2, 1)]

    def test_two_observations_single_record(self):
        pd = rt.paired_distances([[0.0], [2.0]], [[5.0], [1.0]], Metric.L2, Metric.L2)
        assert pd.pair_count == 1
        assert pd.z[0] == 2.0 and pd.t[0] == 4.0

    def test_identical_inputs_give_equal_sides(self):
        rng = np.random.default_rng(11)
        x = rng.standard_normal((7, 3))
        pd = rt.paired_distances(x, x, Metric.LINF, Metric.LINF)
        assert np.array_equal(pd.z, pd.t)

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            rt.paired_distances(np.zeros((3, 2)), np.zeros((4, 2)), Metric.L2, Metric.L2)

    def test_row_swap_leaves_multiset(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal((6, 2))
        y = rng.standard_normal((6, 3))
        pd = rt.paired_distances(x, y, Metric.L2, Metric.L1)
        perm = rng.permutation(6)
        pd2 = rt.paired_distances(x[perm], y[perm], Metric.L2, Metric.L1)
        recs = sorted(zip(pd.z.tolist(), pd.t.tolist()))
        recs2 = sorted(zip(pd2.z.tolist(), pd2.t.tolist()))
        assert np.allclose(recs, recs2)

    def test_records_recomputable_independently(self):
        rng = np.random.default_rng(5)
        x = rng.standard_normal((5, 4))
        y = rng.standard_normal((5, 2))
        pd = rt.paired_distances(x, y, Metric.L1, Metric.LINF)
        k = 0
        for i in range(5):
            for j in range(i + 1, 5):
                assert pd.z[k] == pytest.approx(distance_naive(x[i], x[j], "l1"), rel=1e-12)
                assert pd.t[k] == pytest.approx(distance_naive(y[i], y[j], "linf"), rel=1e-12)
                k += 1

    def test_rate_matches_ordered_pair_list(self):
        # duplicating every record (= the ordered-pair list) changes nothing
        rng = np.random.default_rng(6)
        x = rng.standard_normal((8, 2))
        y = rng.standard_normal((8, 2))
        pd = rt.paired_distances(x, y, Metric.L2, Metric.L2)
        dup = rt.PairedDistances(n=8, z=np.tile(pd.z, 2), t=np.tile(pd.t, 2))
        for r in (0.5, 1.0, 2.0):
            assert rt.recurrence_rate(pd, "x", r) == rt.recurrence_rate(dup, "x", r)
        assert rt.joint_recurrence_rate(pd, 1.0, 1.5) == rt.joint_recurrence_rate(dup, 1.0, 1.5)

    def test_negative_distance_rejected(self):
        with pytest.raises(InvalidInputError):
            rt.PairedDistances(n=3, z=np.array([1.0, -0.1, 2.0]), t=np.ones(3))
