"""Gaussian weight measure calibrated from pairwise distances.

The integral statistics weight deviations by a product measure whose factors
are normal distribution functions centred at the mean pairwise distance with
the pairwise-distance spread as scale.  The normal is normalized to unit mass
(a genuine CDF); any global positive rescaling of the weight is irrelevant to
permutation decisions, and unit mass is what makes the closed-form survival
identities exact.  The small mass below zero is kept: the closed forms
integrate indicators over ``(value, +inf)`` and are exact regardless.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .exceptions import DegenerateWeightError, InvalidInputError


@dataclass(frozen=True)
class GaussianWeight:
    """Location/scale of the calibrated normal weight; ``sigma > 0``."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not np.isfinite(self.mu) or not np.isfinite(self.sigma):
            raise InvalidInputError("weight parameters must be finite")
        if self.sigma <= 0:
            raise DegenerateWeightError(f"weight scale must be positive, got {self.sigma}")


def estimate_weight(distances) -> GaussianWeight:
    """Calibrate the weight from a multiset of pairwise distances.

    ``mu`` is the arithmetic mean and ``sigma`` the population (divide by
    count) standard deviation.  Both are identical whether the multiset holds
    each unordered pair once or each ordered pair twice.
    """
    d = np.asarray(distances, dtype=float).ravel()
    if d.size == 0:
        raise InvalidInputError("cannot calibrate a weight from an empty distance list")
    if not np.all(np.isfinite(d)):
        raise InvalidInputError("distance list contains non-finite values")
    if d.size == 1 or np.ptp(d) == 0.0:
        raise DegenerateWeightError(
            "all pairwise distances are identical; the weight scale is zero"
        )
    mu = float(d.mean())
    sigma = float(np.sqrt(np.mean((d - mu) ** 2)))
    if sigma == 0.0:
        raise DegenerateWeightError("pairwise distance spread underflowed to zero")
    return GaussianWeight(mu=mu, sigma=sigma)


def weight_cdf(weight: GaussianWeight, value):
    """Weight distribution function Phi((value - mu) / sigma).

    Accepts scalars or arrays; evaluated through the erf-based normal CDF
    (absolute error well below 1e-12).
    """
    v = np.asarray(value, dtype=float)
    out = ndtr((v - weight.mu) / weight.sigma)
    if np.ndim(value) == 0:
        return float(out)
    return out
