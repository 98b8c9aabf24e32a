"""Distance kernels and the coupled pairwise-distance structure.

Observations are rows of an ``(n, d)`` matrix; a discretized curve is just a
row with many columns (an equispaced time step only rescales all distances by
a common factor, which every downstream statistic is invariant to).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .exceptions import InvalidInputError


class Metric(Enum):
    """Coordinate-wise distance: sum, root of sum of squares, or maximum of
    absolute differences."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, text: str) -> "Metric":
        try:
            return cls(str(text).strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise InvalidInputError(f"unknown metric {text!r} (choose from {choices})") from None


_PDIST_NAME = {Metric.L1: "cityblock", Metric.L2: "euclidean", Metric.LINF: "chebyshev"}


def ensure_sample(data, name: str = "sample") -> np.ndarray:
    """Validate and return a sample as an ``(n, d)`` float matrix.

    A 1-D input is treated as ``n`` scalar observations.  Requires ``n >= 2``,
    ``d >= 1`` and finite entries.
    """
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise InvalidInputError(f"{name} must be a 2-D matrix, got {arr.ndim} dimensions")
    n, d = arr.shape
    if n < 2:
        raise InvalidInputError(f"{name} needs at least 2 observations, got {n}")
    if d < 1:
        raise InvalidInputError(f"{name} needs at least 1 coordinate")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} contains non-finite entries")
    return np.ascontiguousarray(arr)


def distance(a, b, kind: Metric) -> float:
    """Distance between two observations under ``kind``."""
    av = np.atleast_1d(np.asarray(a, dtype=float))
    bv = np.atleast_1d(np.asarray(b, dtype=float))
    if av.ndim != 1 or bv.ndim != 1:
        raise InvalidInputError("observations must be 1-D vectors")
    if av.shape != bv.shape:
        raise InvalidInputError(f"dimension mismatch: {av.shape[0]} vs {bv.shape[0]}")
    if not (np.all(np.isfinite(av)) and np.all(np.isfinite(bv))):
        raise InvalidInputError("observations contain non-finite entries")
    diff = np.abs(av - bv)
    if kind == Metric.L1:
        return float(diff.sum())
    if kind == Metric.L2:
        return float(np.sqrt(np.square(diff).sum()))
    return float(diff.max())


@dataclass(frozen=True)
class PairedDistances:
    """Coupled pairwise distances of two samples over identical index pairs.

    ``z[k]`` and ``t[k]`` are the X-side and Y-side distances of the k-th
    unordered pair {i, j}, i < j, in lexicographic order.  Storing unordered
    pairs halves the ordered-pair list: every statistic downstream is
    invariant to the duplication because numerators and denominators double
    together.
    """

    n: int
    z: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=float)
        t = np.asarray(self.t, dtype=float)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", t)
        if self.n < 2:
            raise InvalidInputError(f"need n >= 2 observations, got {self.n}")
        if z.ndim != 1 or t.ndim != 1 or z.shape != t.shape or z.size < 1:
            raise InvalidInputError("z and t must be 1-D arrays of equal positive length")
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(t))):
            raise InvalidInputError("pairwise distances contain non-finite values")
        if (z < 0).any() or (t < 0).any():
            raise InvalidInputError("pairwise distances must be nonnegative")

    @property
    def pair_count(self) -> int:
        """Number of stored (unordered) pairs."""
        return self.z.size

    @property
    def ordered_pair_count(self) -> int:
        """Size of the equivalent ordered-pair list (each pair twice)."""
        return 2 * self.z.size


def pairwise_matrix(x: np.ndarray, kind: Metric) -> np.ndarray:
    """Full symmetric ``(n, n)`` distance matrix of a validated sample."""
    return squareform(pdist(x, _PDIST_NAME[kind]))


def paired_distances(x, y, metric_x: Metric, metric_y: Metric) -> PairedDistances:
    """Build the coupled distance structure of two samples.

    Both samples must have the same number of rows (their column counts may
    differ).  Pair order is lexicographic (i, j) with i < j.
    """
    xs = ensure_sample(x, "x")
    ys = ensure_sample(y, "y")
    if xs.shape[0] != ys.shape[0]:
        raise InvalidInputError(
            f"sample sizes differ: x has {xs.shape[0]} rows, y has {ys.shape[0]}"
        )
    z = pdist(xs, _PDIST_NAME[metric_x])
    t = pdist(ys, _PDIST_NAME[metric_y])
    return PairedDistances(n=xs.shape[0], z=z, t=t)
