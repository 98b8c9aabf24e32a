"""Kernel values against direct evaluations of the statistic definitions."""

import numpy as np
import pytest

import recurtest as rt
from recurtest import Functional, Metric, StatisticSpec

from oracles import (
    exact_integral_l1,
    exact_integral_l2,
    exhaustive_sup,
    quadrature_l1,
    quadrature_l2,
)

METRIC_PAIRS = [(mx, my) for mx in Metric for my in Metric]


def instance(i):
    n = 4 + i % 7
    rng = np.random.default_rng(1000 + i)
    x = rng.standard_normal((n, 3))
    y = rng.standard_normal((n, 2))
    mx, my = METRIC_PAIRS[i % 9]
    pd = rt.paired_distances(x, y, mx, my)
    return pd, rt.estimate_weight(pd.z), rt.estimate_weight(pd.t)


@pytest.mark.parametrize("i", range(12))
def test_l2_matches_exact_integral(i):
    pd, wx, wy = instance(i)
    assert rt.l2_statistic(pd, wx, wy) == pytest.approx(
        exact_integral_l2(pd, wx, wy), rel=1e-11
    )


@pytest.mark.parametrize("i", range(12))
def test_l1_matches_exact_integral(i):
    pd, wx, wy = instance(i)
    assert rt.l1_statistic(pd, wx, wy) == pytest.approx(
        exact_integral_l1(pd, wx, wy), rel=1e-11
    )


@pytest.mark.parametrize("i", range(12))
def test_sup_matches_exhaustive_grid(i):
    pd, _, _ = instance(i)
    assert rt.sup_statistic(pd) == pytest.approx(exhaustive_sup(pd), abs=1e-12)


def test_sup_spec_example_n6():
    rng = np.random.default_rng(60)
    x = rng.standard_normal((6, 3))
    y = rng.standard_normal((6, 3))
    pd = rt.paired_distances(x, y, Metric.L2, Metric.L2)
    assert rt.sup_statistic(pd) == pytest.approx(exhaustive_sup(pd), abs=1e-12)


@pytest.mark.parametrize("i", [0, 4, 8])
def test_midpoint_quadrature_resolution(i):
    # The uniform 2000^2 midpoint rule resolves the step integrand only to a
    # few parts in a thousand (jump-straddling cells); the kernels must sit
    # within that envelope of the grid value and essentially on top of the
    # exact integral (asserted above).
    pd, wx, wy = instance(i)
    assert rt.l2_statistic(pd, wx, wy) == pytest.approx(
        quadrature_l2(pd, wx, wy), rel=2.5e-2
    )
    assert rt.l1_statistic(pd, wx, wy) == pytest.approx(
        quadrature_l1(pd, wx, wy), rel=2.5e-2
    )


def test_end_to_end_statistic_matches_oracles():
    rng = np.random.default_rng(7)
    x = rng.standard_normal((7, 4))
    y = rng.standard_normal((7, 4))
    pd = rt.paired_distances(x, y, Metric.L1, Metric.L1)
    wx, wy = rt.estimate_weight(pd.z), rt.estimate_weight(pd.t)
    spec_l2 = StatisticSpec(Functional.L2, Metric.L1, Metric.L1)
    spec_l1 = StatisticSpec(Functional.L1, Metric.L1, Metric.L1)
    spec_sup = StatisticSpec(Functional.SUP, Metric.L1, Metric.L1)
    assert rt.statistic(x, y, spec_l2) == pytest.approx(exact_integral_l2(pd, wx, wy), rel=1e-11)
    assert rt.statistic(x, y, spec_l1) == pytest.approx(exact_integral_l1(pd, wx, wy), rel=1e-11)
    assert rt.statistic(x, y, spec_sup) == pytest.approx(exhaustive_sup(pd), abs=1e-12)
