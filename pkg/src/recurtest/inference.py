"""Permutation-based inference: p-values, critical values, dependograms.

Calibration permutes the second sample against the first.  All pairwise
distances and both weight calibrations are computed once: permuting rows
leaves each side's distance multiset unchanged, so only the pairing between
the two coupled lists is rebuilt per replicate (O(pairs) gather).  Replicate
k draws its permutation from a stream that depends only on (seed, k), so the
result is identical for any execution order or worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import ceil

import numpy as np

from . import streams
from .exceptions import InvalidInputError
from .metrics import PairedDistances, ensure_sample, paired_distances, pairwise_matrix
from .stats_core import (
    Functional,
    StatisticSpec,
    l1_statistic,
    l2_statistic,
    sup_statistic,
)
from .weights import estimate_weight


@dataclass(frozen=True)
class TestReport:
    """Outcome of one permutation test."""

    spec: StatisticSpec
    n: int
    observed: float
    p_value: float
    m: int
    seed: int
    perm_stats: np.ndarray | None = None
    elapsed: float = 0.0


@dataclass(frozen=True)
class DependogramEntry:
    label_a: str
    label_b: str
    observed: float
    p_value: float
    critical_values: dict[float, float]
    rejects: dict[float, bool]


@dataclass(frozen=True)
class Dependogram:
    """All pairwise test outcomes between a list of groups."""

    labels: list[str]
    entries: list[DependogramEntry] = field(default_factory=list)


def _kernel(functional: Functional, wx, wy):
    if functional == Functional.SUP:
        return lambda pd: sup_statistic(pd)
    if functional == Functional.L2:
        return lambda pd: l2_statistic(pd, wx, wy)
    return lambda pd: l1_statistic(pd, wx, wy)


def permutation_test(
    x,
    y,
    spec: StatisticSpec,
    m: int,
    seed: int,
    *,
    keep_perm_stats: bool = False,
    threads: int = 1,
) -> TestReport:
    """Test independence of two samples with ``m`` random permutations.

    The p-value uses the add-one estimator (1 + #{permuted >= observed}) /
    (m + 1), which is finite-sample valid under exchangeability and never
    zero; ties with the observed value count toward rejection.
    """
    if m < 1:
        raise InvalidInputError(f"permutation count must be >= 1, got {m}")
    if threads < 1:
        raise InvalidInputError(f"thread count must be >= 1, got {threads}")
    start = time.perf_counter()

    xs = ensure_sample(x, "x")
    ys = ensure_sample(y, "y")
    if xs.shape[0] != ys.shape[0]:
        raise InvalidInputError(
            f"sample sizes differ: x has {xs.shape[0]} rows, y has {ys.shape[0]}"
        )
    n = xs.shape[0]
    if n < 3:
        raise InvalidInputError(f"permutation test needs n >= 3 observations, got {n}")

    pd0 = paired_distances(xs, ys, spec.metric_x, spec.metric_y)
    if spec.functional == Functional.SUP:
        wx = wy = None
    else:
        wx = estimate_weight(pd0.z)
        wy = estimate_weight(pd0.t)  # distance multiset is permutation-invariant
    kernel = _kernel(spec.functional, wx, wy)
    observed = kernel(pd0)

    dist_y = pairwise_matrix(ys, spec.metric_y)
    rows, cols = np.triu_indices(n, 1)

    def one(k: int) -> float:
        perm = streams.substream(seed, streams.PERMUTATION, k).permutation(n)
        paired = PairedDistances(n=n, z=pd0.z, t=dist_y[perm[rows], perm[cols]])
        return kernel(paired)

    if threads == 1:
        perm_stats = np.array([one(k) for k in range(1, m + 1)])
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            perm_stats = np.array(list(pool.map(one, range(1, m + 1))))

    p_value = (1.0 + float(np.count_nonzero(perm_stats >= observed))) / (m + 1)
    return TestReport(
        spec=spec,
        n=n,
        observed=float(observed),
        p_value=p_value,
        m=m,
        seed=seed,
        perm_stats=perm_stats if keep_perm_stats else None,
        elapsed=time.perf_counter() - start,
    )


def min_permutations(alpha: float) -> int:
    """Smallest m for which the level-alpha permutation quantile exists."""
    return ceil(1.0 / alpha - 1e-9) - 1


def critical_values(perm_stats, levels) -> list[float]:
    """Finite-sample permutation critical values at the requested levels.

    For level alpha the critical value is the ceil((1 - alpha) * (m + 1))-th
    order statistic of the m permuted values.
    """
    stats = np.sort(np.asarray(perm_stats, dtype=float))
    m = stats.size
    out = []
    for alpha in levels:
        if not 0.0 < alpha < 1.0:
            raise InvalidInputError(f"level must be in (0, 1), got {alpha}")
        # Small epsilon keeps exact lattice points (e.g. 0.95 * 100) from
        # rounding up through floating noise.
        q = ceil((1.0 - alpha) * (m + 1) - 1e-12)
        if q > m:
            raise InvalidInputError(
                f"level {alpha} needs at least m = {min_permutations(alpha)} "
                f"permutations, got {m}"
            )
        out.append(float(stats[q - 1]))
    return out


def dependogram(
    groups,
    spec: StatisticSpec,
    m: int,
    seed: int,
    levels=(0.05, 0.10),
    *,
    labels=None,
    threads: int = 1,
) -> Dependogram:
    """Pairwise mutual-independence tests between several groups.

    Runs the permutation test on every unordered pair of groups with a
    per-pair derived seed, and records observed values, permutation critical
    values and rejection flags at each level.
    """
    samples = [ensure_sample(g, f"group {i}") for i, g in enumerate(groups)]
    if len(samples) < 2:
        raise InvalidInputError(f"need at least 2 groups, got {len(samples)}")
    sizes = {s.shape[0] for s in samples}
    if len(sizes) != 1:
        raise InvalidInputError(f"groups must share a common sample size, got {sorted(sizes)}")
    levels = [float(a) for a in levels]
    for alpha in levels:
        if not 0.0 < alpha < 1.0:
            raise InvalidInputError(f"level must be in (0, 1), got {alpha}")
        if m < min_permutations(alpha):
            raise InvalidInputError(
                f"level {alpha} needs at least m = {min_permutations(alpha)} "
                f"permutations, got {m}"
            )
    if labels is None:
        labels = [f"g{i}" for i in range(len(samples))]
    labels = [str(l) for l in labels]
    if len(labels) != len(samples):
        raise InvalidInputError("one label per group required")

    entries = []
    for a in range(len(samples)):
        for b in range(a + 1, len(samples)):
            pair_seed = streams.derive_seed(seed, streams.GROUP_PAIR, a, b)
            report = permutation_test(
                samples[a],
                samples[b],
                spec,
                m,
                pair_seed,
                keep_perm_stats=True,
                threads=threads,
            )
            crits = critical_values(report.perm_stats, levels)
            entries.append(
                DependogramEntry(
                    label_a=labels[a],
                    label_b=labels[b],
                    observed=report.observed,
                    p_value=report.p_value,
                    critical_values=dict(zip(levels, crits)),
                    rejects={alpha: report.p_value <= alpha for alpha in levels},
                )
            )
    return Dependogram(labels=labels, entries=entries)
