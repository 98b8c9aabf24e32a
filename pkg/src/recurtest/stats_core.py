"""Recurrence rates and the three dependence statistics.

All statistics measure the discrepancy between the joint recurrence rate of a
coupled pair sample and the product of its marginal recurrence rates,
aggregated three ways:

* ``l2_statistic``  -- n * integral of the squared discrepancy against the
  calibrated Gaussian product weight (quadratic functional),
* ``l1_statistic``  -- sqrt(n) * integral of the absolute discrepancy against
  the same weight,
* ``sup_statistic`` -- sqrt(n) * supremum of the absolute discrepancy over
  all radius pairs (weight-free).

Each kernel has a closed form over the coupled distance list.  The ``_naive``
variants evaluate the defining sums literally and serve as oracles; the
default implementations use sorted orders, prefix sums and rank dominance
structures.  Both agree to floating round-off and are invariant to how ties
are broken (equal values carry equal weight-CDF values and equal counts).

The sqrt(n) / n prefactors always use the observation count n, never the
pair count.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .exceptions import InternalConsistencyError, InvalidInputError
from .metrics import Metric, PairedDistances, ensure_sample, paired_distances
from .rankstats import prefix_dominance, stable_ranks
from .weights import GaussianWeight, estimate_weight, weight_cdf

# Computed values of the quadratic statistic below this are round-off noise
# and clamp to zero; anything more negative indicates a kernel bug.
_NEGATIVE_TOL = 1e-12


class Functional(Enum):
    """Aggregation of the discrepancy: absolute integral, squared integral,
    or supremum."""

    L1 = "l1"
    L2 = "l2"
    SUP = "sup"

    @classmethod
    def parse(cls, text: str) -> "Functional":
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            choices = ", ".join(f.value for f in cls)
            raise InvalidInputError(
                f"unknown functional {text!r} (choose from {choices})"
            ) from None


@dataclass(frozen=True)
class StatisticSpec:
    """A statistic choice: the functional plus the metric used on each side."""

    functional: Functional
    metric_x: Metric
    metric_y: Metric

    def label(self) -> str:
        return f"{self.functional.value}:{self.metric_x.value}:{self.metric_y.value}"


def recurrence_rate(pd: PairedDistances, axis: str, radius: float) -> float:
    """Fraction of pairs whose ``axis`` distance is strictly below ``radius``."""
    if axis not in ("x", "y"):
        raise InvalidInputError(f"axis must be 'x' or 'y', got {axis!r}")
    d = pd.z if axis == "x" else pd.t
    return float(np.count_nonzero(d < radius)) / pd.pair_count


def joint_recurrence_rate(pd: PairedDistances, r: float, s: float) -> float:
    """Fraction of pairs simultaneously close on both sides (strictly)."""
    return float(np.count_nonzero((pd.z < r) & (pd.t < s))) / pd.pair_count


def empirical_process(pd: PairedDistances, r: float, s: float) -> float:
    """sqrt(n) * (joint rate - product of marginal rates) at ``(r, s)``."""
    return float(
        np.sqrt(pd.n)
        * (
            joint_recurrence_rate(pd, r, s)
            - recurrence_rate(pd, "x", r) * recurrence_rate(pd, "y", s)
        )
    )


def _survival(weight: GaussianWeight, values: np.ndarray) -> np.ndarray:
    return 1.0 - weight_cdf(weight, values)


def _clamp_nonnegative(value: float, where: str) -> float:
    if value < 0.0:
        if value <= -_NEGATIVE_TOL:
            raise InternalConsistencyError(
                f"{where} produced {value!r}, below the -{_NEGATIVE_TOL} round-off floor"
            )
        return 0.0
    return value


# ---------------------------------------------------------------------------
# Quadratic (L2) functional


def l2_statistic(pd: PairedDistances, wx: GaussianWeight, wy: GaussianWeight) -> float:
    """Closed form of the quadratic functional.

    Expanding the square gives three terms: the joint term couples the pair
    maxima on both sides (rank dominance sums over the coupled list), the
    product term factorizes into two sorted survival sums with odd-integer
    weights, and the cross term factorizes per record.  Everything is
    O(m^1.5) elementwise or better after sorting.
    """
    m = pd.pair_count
    if m == 1:
        return 0.0
    n = pd.n

    z_order = np.argsort(pd.z, kind="stable")
    z_sorted = pd.z[z_order]
    t_aligned = pd.t[z_order]
    t_sorted = np.sort(pd.t, kind="stable")

    g1_sorted = weight_cdf(wx, z_sorted)
    g2_sorted = weight_cdf(wy, t_sorted)
    surv_z = 1.0 - g1_sorted                   # in z-sorted order
    surv_t_aligned = _survival(wy, t_aligned)  # per record, z-sorted order

    # Joint term: mean over all ordered index pairs (i, j) of
    # surv_z(max(z_i, z_j)) * surv_t(max(t_i, t_j)).
    t_rank = stable_ranks(t_aligned)
    count_less, wsum_greater = prefix_dominance(t_rank, surv_t_aligned)
    diag = float(np.dot(surv_z, surv_t_aligned))
    off = float(np.dot(surv_z, surv_t_aligned * count_less + wsum_greater))
    joint_term = (diag + 2.0 * off) / (m * m)

    # Product term: for sorted values, sum_{i,j} G(max(v_i, v_j)) equals
    # sum_i (2i - 1) G(v_(i)).
    odd = 2.0 * np.arange(1, m + 1) - 1.0
    product_term = (1.0 - float(np.dot(odd, g1_sorted)) / (m * m)) * (
        1.0 - float(np.dot(odd, g2_sorted)) / (m * m)
    )

    # Cross term: sum_i [sum_j surv_z(max(z_i,z_j))] [sum_k surv_t(max(t_i,t_k))] / m^3,
    # with each bracket computable per record from its sorted position.
    pos = np.arange(1, m + 1, dtype=float)
    suffix_z = np.concatenate([np.cumsum(surv_z[::-1])[::-1][1:], [0.0]])
    z_bracket_sorted = pos * surv_z + suffix_z
    z_bracket = np.empty(m)
    z_bracket[z_order] = z_bracket_sorted

    surv_t_sorted = 1.0 - g2_sorted
    suffix_t = np.concatenate([np.cumsum(surv_t_sorted[::-1])[::-1][1:], [0.0]])
    t_bracket_sorted = pos * surv_t_sorted + suffix_t
    t_order = np.argsort(pd.t, kind="stable")
    t_bracket = np.empty(m)
    t_bracket[t_order] = t_bracket_sorted

    cross_term = float(np.dot(z_bracket, t_bracket)) / (m * m * m)

    value = n * (joint_term + product_term - 2.0 * cross_term)
    return _clamp_nonnegative(value, "l2_statistic")


def l2_statistic_naive(pd: PairedDistances, wx: GaussianWeight, wy: GaussianWeight) -> float:
    """Literal-sum evaluation of the quadratic closed form (oracle).

    Materializes the pairwise maximum matrices and contracts the triple sum
    directly; O(m^2) memory, for small m only.
    """
    m = pd.pair_count
    if m == 1:
        return 0.0
    n = pd.n

    z_order = np.argsort(pd.z, kind="stable")
    z_sorted = pd.z[z_order]
    t_aligned = pd.t[z_order]
    t_sorted = np.sort(pd.t, kind="stable")

    surv_z_pair = _survival(wx, np.maximum.outer(z_sorted, z_sorted))
    surv_t_pair = _survival(wy, np.maximum.outer(t_aligned, t_aligned))

    joint_term = float(np.sum(surv_z_pair * surv_t_pair)) / (m * m)

    odd = 2.0 * np.arange(1, m + 1) - 1.0
    product_term = (1.0 - float(np.dot(odd, weight_cdf(wx, z_sorted))) / (m * m)) * (
        1.0 - float(np.dot(odd, weight_cdf(wy, t_sorted))) / (m * m)
    )

    cross_term = float(np.einsum("ij,ik->", surv_z_pair, surv_t_pair)) / (m * m * m)

    value = n * (joint_term + product_term - 2.0 * cross_term)
    return _clamp_nonnegative(value, "l2_statistic_naive")


# ---------------------------------------------------------------------------
# Absolute (L1) functional


def l1_statistic(pd: PairedDistances, wx: GaussianWeight, wy: GaussianWeight) -> float:
    """Closed form of the absolute functional.

    The discrepancy is piecewise constant between consecutive sorted
    distances; integrating cell by cell gives

        sqrt(n)/m * sum_{h,j=1}^{m-1} dG1(h) dG2(j) |c(h, j) - h*j/m|

    where c(h, j) counts, among the first h records in z-order, those whose
    t-value ranks at or below j.  The count row is updated incrementally
    across h; memory stays O(m).  Cells whose weight increment vanishes
    (tied values) contribute nothing, which makes the formula tie-safe.
    """
    m = pd.pair_count
    if m == 1:
        return 0.0
    n = pd.n

    z_order = np.argsort(pd.z, kind="stable")
    z_sorted = pd.z[z_order]
    t_aligned = pd.t[z_order]
    t_sorted = np.sort(pd.t, kind="stable")

    dg1 = np.diff(weight_cdf(wx, z_sorted))  # h = 1..m-1
    dg2 = np.diff(weight_cdf(wy, t_sorted))  # j = 1..m-1
    t_rank = stable_ranks(t_aligned)

    j = np.arange(1, m, dtype=float)
    counts = np.zeros(m - 1, dtype=float)  # c(h, j) for the current h
    acc = 0.0
    for h in range(1, m):
        rank_h = t_rank[h - 1]
        if rank_h <= m - 1:
            counts[rank_h - 1 :] += 1.0
        w = dg1[h - 1]
        if w != 0.0:
            acc += w * float(np.dot(dg2, np.abs(counts - (h / m) * j)))
    return float(np.sqrt(n) / m * acc)


def l1_statistic_naive(pd: PairedDistances, wx: GaussianWeight, wy: GaussianWeight) -> float:
    """Literal evaluation of the absolute closed form (oracle).

    Builds the full count matrix c(h, j) from the defining indicator sums;
    O(m^2) memory, for small m only.
    """
    m = pd.pair_count
    if m == 1:
        return 0.0
    n = pd.n

    z_order = np.argsort(pd.z, kind="stable")
    z_sorted = pd.z[z_order]
    t_aligned = pd.t[z_order]
    t_sorted = np.sort(pd.t, kind="stable")

    dg1 = np.diff(weight_cdf(wx, z_sorted))
    dg2 = np.diff(weight_cdf(wy, t_sorted))

    # counts[h-1, j-1] = #{i <= h : t_aligned[i] < t_sorted[j]} for h, j = 1..m-1
    below = t_aligned[:, None] < t_sorted[None, 1:]
    counts = np.cumsum(below, axis=0)[: m - 1].astype(float)

    h = np.arange(1, m, dtype=float)[:, None]
    j = np.arange(1, m, dtype=float)[None, :]
    cells = np.abs(counts - h * j / m)
    return float(np.sqrt(n) / m * (dg1 @ cells @ dg2))


# ---------------------------------------------------------------------------
# Supremum functional


def _value_cumcounts(sorted_values: np.ndarray):
    """Distinct values of an ascending array and their cumulative counts."""
    distinct, counts = np.unique(sorted_values, return_counts=True)
    return distinct, np.cumsum(counts)


def sup_statistic(pd: PairedDistances) -> float:
    """Supremum of the absolute discrepancy times sqrt(n) (weight-free).

    The discrepancy is a step function of the two radii, so its supremum is
    attained on the grid of distinct distance values; the scan sweeps the
    z-values in ascending order while maintaining cumulative counts over the
    t-values.  Counts compare actual values (not sort positions), which makes
    the result invariant to tie-breaking and equal to the supremum of the
    left-continuous rate process over all radii.
    """
    m = pd.pair_count
    if m == 1:
        return 0.0
    n = pd.n

    z_order = np.argsort(pd.z, kind="stable")
    z_sorted = pd.z[z_order]
    t_aligned = pd.t[z_order]

    t_distinct, t_cum = _value_cumcounts(np.sort(pd.t, kind="stable"))
    t_idx = np.searchsorted(t_distinct, t_aligned)

    # Boundaries of the runs of equal z-values in the sorted order.
    run_ends = np.flatnonzero(np.diff(z_sorted) != 0)
    run_ends = np.append(run_ends, m - 1)  # inclusive end position of each run

    hist = np.zeros(t_distinct.size, dtype=np.int64)
    best = 0.0
    start = 0
    for end in run_ends:
        np.add.at(hist, t_idx[start : end + 1], 1)
        start = end + 1
        z_count = end + 1  # #{z <= current distinct value}
        joint = np.cumsum(hist)
        dev = np.abs(joint - (z_count / m) * t_cum).max()
        if dev > best:
            best = float(dev)
    return float(np.sqrt(n) * best / m)


def sup_statistic_naive(pd: PairedDistances) -> float:
    """Brute-force dominance-count evaluation of the supremum (oracle).

    Counts dominated pairs for every distinct-value grid point directly;
    O(m^2) pairs times O(m) counting, for small m only.
    """
    m = pd.pair_count
    if m == 1:
        return 0.0
    n = pd.n

    z_distinct = np.unique(pd.z)
    t_distinct = np.unique(pd.t)
    z_le = pd.z[None, :] <= z_distinct[:, None]
    t_le = pd.t[None, :] <= t_distinct[:, None]
    joint = z_le.astype(np.int64) @ t_le.T.astype(np.int64)
    marg = np.outer(z_le.sum(axis=1), t_le.sum(axis=1)) / m
    best = float(np.abs(joint - marg).max())
    return float(np.sqrt(n) * best / m)


# ---------------------------------------------------------------------------
# End-to-end entry point


def statistic(x, y, spec: StatisticSpec) -> float:
    """Compute the selected statistic between two samples end to end."""
    xs = ensure_sample(x, "x")
    ys = ensure_sample(y, "y")
    pd = paired_distances(xs, ys, spec.metric_x, spec.metric_y)
    return statistic_from_pairs(pd, spec.functional)


def statistic_from_pairs(pd: PairedDistances, functional: Functional) -> float:
    """Compute a functional on an existing coupled distance structure."""
    if functional == Functional.SUP:
        return sup_statistic(pd)
    if pd.pair_count == 1:
        # A single pair carries no dependence information; both integral
        # statistics are identically zero and the weight is uncalibratable.
        return 0.0
    wx = estimate_weight(pd.z)
    wy = estimate_weight(pd.t)
    if functional == Functional.L2:
        return l2_statistic(pd, wx, wy)
    return l1_statistic(pd, wx, wy)
