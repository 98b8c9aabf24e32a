"""Rank and prefix-sum helpers for the statistic kernels.

The quadratic-functional kernel needs, for every element of a sequence, the
count and the weighted sum of *earlier* elements whose rank falls on a given
side of its own.  ``prefix_dominance`` computes both in one pass using a
block decomposition: queries against the already-seen prefix are answered
from a cumulative histogram over ranks (rebuilt once per block), and pairs
inside the current block are handled by a small dense comparison.  With block
size ~sqrt(m) the elementwise work is O(m^1.5), all vectorized.
"""

from __future__ import annotations

import numpy as np


def stable_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..m of ``values``, ties broken by position (stable)."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size, dtype=np.int64)
    ranks[order] = np.arange(1, values.size + 1)
    return ranks


def prefix_dominance(ranks: np.ndarray, weights: np.ndarray, block: int | None = None):
    """Per-position dominance statistics over the preceding prefix.

    For each position j returns
      ``count_less[j]  = #{i < j : ranks[i] < ranks[j]}``
      ``wsum_greater[j] = sum of weights[i] over i < j with ranks[i] > ranks[j]``.

    ``ranks`` must be a permutation of 1..m.
    """
    m = ranks.size
    count_less = np.zeros(m, dtype=np.int64)
    wsum_greater = np.zeros(m, dtype=float)
    if m <= 1:
        return count_less, wsum_greater
    if block is None:
        block = max(32, int(np.sqrt(m)))

    # Cumulative structures over the rank axis for everything seen so far:
    # seen_count_cum[r] = #{seen with rank <= r}, seen_wsum_cum[r] likewise.
    seen_count_cum = np.zeros(m + 1, dtype=np.int64)
    seen_wsum_cum = np.zeros(m + 1, dtype=float)
    seen_flags = np.zeros(m + 1, dtype=np.int64)
    seen_wts = np.zeros(m + 1, dtype=float)

    for start in range(0, m, block):
        stop = min(start + block, m)
        rb = ranks[start:stop]
        wb = weights[start:stop]

        # Against the prefix before this block.
        count_less[start:stop] = seen_count_cum[rb - 1]
        wsum_greater[start:stop] = seen_wsum_cum[m] - seen_wsum_cum[rb]

        # Within-block pairs (i before j, both local).
        width = stop - start
        if width > 1:
            earlier = np.tri(width, width, -1, dtype=bool)  # [j, i] with i < j
            less = rb[None, :] < rb[:, None]                # [j, i] rank_i < rank_j
            count_less[start:stop] += (earlier & less).sum(axis=1)
            wsum_greater[start:stop] += ((earlier & ~less) * wb[None, :]).sum(axis=1)

        seen_flags[rb] = 1
        seen_wts[rb] = wb
        np.cumsum(seen_flags, out=seen_count_cum)
        np.cumsum(seen_wts, out=seen_wsum_cum)

    return count_less, wsum_greater
