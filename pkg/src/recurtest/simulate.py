"""Generators for the stochastic processes and dependence scenarios used in
the power studies.

Discrete series come from AR/ARMA recursions driven by Gaussian white noise
(500 burn-in steps discarded).  Continuous series live on the equispaced grid
t = 0, 1/len, ..., (len-1)/len:

* fractional Brownian motion, exact via Cholesky factorization of the
  covariance 0.5 * (|t|^2H + |s|^2H - |t-s|^2H), pinned to zero at t = 0
  (factors are cached per grid);
* the exponential-kernel moving average Y_t = sigma * int_{-inf}^t
  e^{-lambda (t - s)} dX_s of a (fractional) Brownian driver.  For H = 0.5
  the recursion is exact with a stationary start, with the step innovation
  decomposed conditionally on the returned driver increment.  For H != 0.5
  the integral is a Riemann-Stieltjes sum over a driver extended across a
  burn-in window [-10/lambda, 0) at the grid resolution (truncation error
  ~e^-10);
* the fixed two-rate combination lam1/(lam1-lam2) * Y(lam1) +
  lam2/(lam2-lam1) * Y(lam2) sharing one driver.  The two components also
  share the standardized innovation stream, so the combination is exactly
  linear in its components; each (driver, component) pair keeps its exact
  joint law, while the residual cross-correlation between components is
  approximated to O(lambda/len).

Every replication draws from a stream that depends only on (seed, index).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, replace
from math import ceil, exp, sqrt

import numpy as np
from scipy.signal import lfilter

from . import streams
from .exceptions import InternalConsistencyError, InvalidInputError

_SCENARIOS = (
    "null",
    "D1",
    "D2",
    "D3",
    "C1",
    "C2",
    "C3",
    "C4",
    "C5",
    "C6",
    "C7",
    "X-OU-Y-OU",
    "X-FOU-Y-FOU",
)

# Default Hurst exponent of the long-memory scenario variants.
_LONG_MEMORY_DEFAULT = 0.7


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of one simulation scenario.

    ``n`` replications of an (X, Y) series pair of length ``length`` are
    generated.  ``phi``/``theta`` parametrize the autoregressive scenarios,
    ``hurst``/``lam``/``lam1``/``lam2``/``sigma`` the continuous ones; fields
    irrelevant to a scenario are ignored.  ``hurst=None`` resolves to the
    scenario default (0.5, or 0.7 for the long-memory variants C5/C7 and
    X-FOU-Y-FOU).
    """

    scenario: str
    n: int
    length: int = 100
    phi: tuple[float, ...] = (0.1,)
    theta: float = 0.0
    hurst: float | None = None
    lam: float = 0.3
    lam1: float = 0.3
    lam2: float = 0.8
    sigma: float = 1.0
    seed: int = 0


def gen_white_noise(length: int, rng: np.random.Generator) -> np.ndarray:
    """Standard Gaussian white noise of the given length."""
    if length < 1:
        raise InvalidInputError(f"length must be >= 1, got {length}")
    return rng.standard_normal(length)


def _check_stationary(phi: tuple[float, ...]) -> None:
    coeffs = np.asarray(phi, dtype=float)
    if coeffs.size == 0 or not np.any(coeffs):
        return  # pure moving average
    # Roots of 1 - phi_1 z - ... - phi_p z^p must lie outside the unit circle.
    poly = np.concatenate([[-c for c in coeffs[::-1]], [1.0]])
    roots = np.roots(poly)
    if roots.size and np.min(np.abs(roots)) <= 1.0:
        raise InvalidInputError(f"autoregressive coefficients {tuple(phi)} are not stationary")


def arma_stationary_sd(phi, theta: float, tol: float = 1e-15) -> float:
    """Stationary standard deviation of the ARMA recursion under unit noise,
    from its moving-average expansion."""
    phi = tuple(float(p) for p in np.atleast_1d(phi))
    _check_stationary(phi)
    psi = [1.0]
    total = 1.0
    for j in range(1, 100_000):
        value = float(theta) if j == 1 else 0.0
        for i, p in enumerate(phi, start=1):
            if j - i >= 0:
                value += p * psi[j - i]
        psi.append(value)
        total += value * value
        if j > max(2, len(phi)) and value * value < tol * total:
            break
    return float(np.sqrt(total))


def gen_ar_arma(
    length: int,
    phi,
    theta: float,
    rng: np.random.Generator,
    burnin: int = 500,
) -> np.ndarray:
    """ARMA series x_t = sum_i phi_i x_{t-i} + e_t + theta e_{t-1}.

    Driven by standard Gaussian noise; the first ``burnin`` steps are
    discarded, which far exceeds the mixing time of every parameter set used
    in the study scenarios.
    """
    if length < 1:
        raise InvalidInputError(f"length must be >= 1, got {length}")
    phi = tuple(float(p) for p in np.atleast_1d(phi))
    _check_stationary(phi)
    eps = rng.standard_normal(burnin + length)
    ar = np.concatenate([[1.0], [-p for p in phi]])
    ma = np.array([1.0, float(theta)])
    series = lfilter(ma, ar, eps)
    return series[burnin:]


_chol_cache: dict[tuple, np.ndarray] = {}


def _fbm_factor(times: np.ndarray, hurst: float, cache_key: tuple) -> np.ndarray:
    """Cholesky factor of the fBm covariance on strictly nonzero times."""
    if cache_key in _chol_cache:
        return _chol_cache[cache_key]
    h2 = 2.0 * hurst
    at = np.abs(times)
    cov = 0.5 * (
        at[:, None] ** h2 + at[None, :] ** h2 - np.abs(times[:, None] - times[None, :]) ** h2
    )
    try:
        factor = np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        # One jitter retry; the covariance is positive definite in exact
        # arithmetic but can lose definiteness to round-off on large grids.
        try:
            factor = np.linalg.cholesky(cov + 1e-12 * np.eye(cov.shape[0]))
        except np.linalg.LinAlgError as err:
            raise InternalConsistencyError(
                f"fBm covariance factorization failed for {cov.shape[0]} grid points"
            ) from err
    _chol_cache[cache_key] = factor
    return factor


def _validate_hurst(hurst: float) -> float:
    hurst = float(hurst)
    if not 0.0 < hurst < 1.0:
        raise InvalidInputError(f"Hurst exponent must be in (0, 1), got {hurst}")
    return hurst


def gen_fbm(length: int, hurst: float, rng: np.random.Generator) -> np.ndarray:
    """Fractional Brownian motion on t = 0, 1/length, ..., (length-1)/length.

    Exact Gaussian draw (unit scale) via the Cholesky factor of the grid
    covariance; the path starts at zero.
    """
    if length < 1:
        raise InvalidInputError(f"length must be >= 1, got {length}")
    hurst = _validate_hurst(hurst)
    if length == 1:
        return np.zeros(1)
    times = np.arange(1, length) / length
    factor = _fbm_factor(times, hurst, ("fbm", length, hurst))
    path = np.empty(length)
    path[0] = 0.0
    path[1:] = factor @ rng.standard_normal(length - 1)
    return path


def _brownian_path(length: int, rng: np.random.Generator) -> np.ndarray:
    steps = rng.standard_normal(length - 1) * sqrt(1.0 / length)
    path = np.empty(length)
    path[0] = 0.0
    np.cumsum(steps, out=path[1:])
    return path


def _extended_fbm(length: int, hurst: float, pre_steps: int, rng: np.random.Generator):
    """fBm on the grid -pre_steps/length, ..., 0, ..., (length-1)/length."""
    total = pre_steps + length
    times = (np.arange(total) - pre_steps) / length
    nonzero = times[times != 0.0]
    factor = _fbm_factor(nonzero, hurst, ("fbm-ext", length, pre_steps, hurst))
    values = factor @ rng.standard_normal(nonzero.size)
    path = np.empty(total)
    path[times != 0.0] = values
    path[pre_steps] = 0.0
    return path


def _kernel_average_from_path(path: np.ndarray, lam: float, sigma: float, delta: float):
    """Riemann-Stieltjes sum of the exponential kernel against a driver path."""
    decay = exp(-lam * delta)
    increments = np.diff(path)
    inp = np.empty(path.size)
    inp[0] = 0.0
    inp[1:] = sigma * increments
    return lfilter([decay], [1.0, -decay], inp)


def gen_fou(
    length: int,
    hurst: float,
    lam: float,
    sigma: float,
    rng: np.random.Generator,
    driver: np.ndarray | None = None,
):
    """Exponential-kernel average of a (fractional) Brownian driver.

    Returns ``(x, y)`` where ``x`` is the driver path on [0, 1) and ``y`` the
    smoothed process, both of ``length`` points.  For H = 0.5 an externally
    generated driver path may be supplied (its increments are consumed); for
    H != 0.5 the driver must be generated internally because the burn-in
    segment has to be drawn jointly with it.
    """
    if length < 2:
        raise InvalidInputError(f"length must be >= 2, got {length}")
    hurst = _validate_hurst(hurst)
    lam = float(lam)
    if lam <= 0:
        raise InvalidInputError(f"mean-reversion rate must be positive, got {lam}")
    sigma = float(sigma)
    if sigma <= 0:
        raise InvalidInputError(f"scale must be positive, got {sigma}")
    delta = 1.0 / length

    if hurst != 0.5:
        if driver is not None:
            raise InvalidInputError(
                "an external driver is only supported for hurst = 0.5; the "
                "long-memory driver must be generated internally"
            )
        pre_steps = ceil(10.0 / (lam * delta))
        path = _extended_fbm(length, hurst, pre_steps, rng)
        y = _kernel_average_from_path(path, lam, sigma, delta)
        return path[pre_steps:], y[pre_steps:]

    if driver is None:
        driver = _brownian_path(length, rng)
    else:
        driver = np.asarray(driver, dtype=float)
        if driver.ndim != 1 or driver.size != length:
            raise InvalidInputError(
                f"driver must be a 1-D path of {length} points, got shape {driver.shape}"
            )
    d_w = np.diff(driver)

    # Exact one-step law: y_{k+1} = decay * y_k + eta_k with the innovation
    # split into its projection on the driver increment plus an independent
    # residual, so (driver, y) has the exact joint distribution.
    decay = exp(-lam * delta)
    eta_var = sigma * sigma * (1.0 - decay * decay) / (2.0 * lam)
    loading = sigma * (1.0 - decay) / (lam * delta)
    resid_var = max(eta_var - loading * loading * delta, 0.0)

    start = sqrt(sigma * sigma / (2.0 * lam)) * rng.standard_normal()
    resid = sqrt(resid_var) * rng.standard_normal(length - 1)
    eta = loading * d_w + resid

    y = np.empty(length)
    y[0] = start
    y[1:] = lfilter([1.0], [1.0, -decay], eta, zi=np.array([decay * start]))[0]
    return driver, y


def fou_pair_weights(lam1: float, lam2: float) -> tuple[float, float]:
    """Combination weights lam1/(lam1-lam2) and lam2/(lam2-lam1)."""
    if lam1 == lam2:
        raise InvalidInputError("the two mean-reversion rates must differ")
    return lam1 / (lam1 - lam2), lam2 / (lam2 - lam1)


def gen_fou2(
    length: int,
    hurst: float,
    lam1: float,
    lam2: float,
    sigma: float,
    rng: np.random.Generator,
    driver: np.ndarray | None = None,
):
    """Two-rate combination of exponential-kernel averages of one driver.

    Equals w1 * y(lam1) + w2 * y(lam2) exactly, where both components consume
    identical innovation draws against the shared driver.
    """
    w1, w2 = fou_pair_weights(lam1, lam2)
    hurst = _validate_hurst(hurst)

    if hurst != 0.5:
        if driver is not None:
            raise InvalidInputError(
                "an external driver is only supported for hurst = 0.5; the "
                "long-memory driver must be generated internally"
            )
        if length < 2:
            raise InvalidInputError(f"length must be >= 2, got {length}")
        delta = 1.0 / length
        pre_steps = ceil(10.0 / (min(lam1, lam2) * delta))
        path = _extended_fbm(length, hurst, pre_steps, rng)
        y1 = _kernel_average_from_path(path, lam1, sigma, delta)[pre_steps:]
        y2 = _kernel_average_from_path(path, lam2, sigma, delta)[pre_steps:]
        return path[pre_steps:], w1 * y1 + w2 * y2

    if driver is None:
        driver_rng, flow_rng = rng.spawn(2)
        driver = _brownian_path(length, driver_rng)
    else:
        flow_rng = rng
    _, y1 = gen_fou(length, hurst, lam1, sigma, copy.deepcopy(flow_rng), driver=driver)
    _, y2 = gen_fou(length, hurst, lam2, sigma, copy.deepcopy(flow_rng), driver=driver)
    return np.asarray(driver, dtype=float), w1 * y1 + w2 * y2


def _resolve_hurst(cfg: ScenarioConfig) -> float:
    if cfg.scenario in ("C5", "C7", "X-FOU-Y-FOU"):
        return _LONG_MEMORY_DEFAULT if cfg.hurst is None else _validate_hurst(cfg.hurst)
    if cfg.scenario in ("C4", "C6", "X-OU-Y-OU"):
        return 0.5  # the short-memory processes are defined on a Brownian driver
    return 0.5 if cfg.hurst is None else _validate_hurst(cfg.hurst)


def _shared_rate_pair(cfg: ScenarioConfig, hurst: float, rng: np.random.Generator):
    """Two exponential-kernel processes with distinct rates on one driver."""
    if hurst == 0.5:
        driver_rng, flow_rng = rng.spawn(2)
        driver = _brownian_path(cfg.length, driver_rng)
        _, xs = gen_fou(cfg.length, hurst, cfg.lam1, cfg.sigma, copy.deepcopy(flow_rng), driver=driver)
        _, ys = gen_fou(cfg.length, hurst, cfg.lam2, cfg.sigma, copy.deepcopy(flow_rng), driver=driver)
        return xs, ys
    delta = 1.0 / cfg.length
    pre_steps = ceil(10.0 / (min(cfg.lam1, cfg.lam2) * delta))
    path = _extended_fbm(cfg.length, hurst, pre_steps, rng)
    xs = _kernel_average_from_path(path, cfg.lam1, cfg.sigma, delta)[pre_steps:]
    ys = _kernel_average_from_path(path, cfg.lam2, cfg.sigma, delta)[pre_steps:]
    return xs, ys


def _one_replication(cfg: ScenarioConfig, hurst: float, rng: np.random.Generator):
    """One (x, y, noise) draw; D2/C2 defer their noise scaling to the batch."""
    scenario = cfg.scenario
    if scenario == "null":
        x = gen_white_noise(cfg.length, rng)
        y = gen_white_noise(cfg.length, rng)
        return x, y

    if scenario in ("D1", "D2", "D3"):
        # The discrete scenarios use the series in units of its stationary
        # spread; only the quadratic alternative is sensitive to the scale
        # (the other transforms are exactly scale-equivariant).
        x = gen_ar_arma(cfg.length, cfg.phi, cfg.theta, rng)
        x = x / arma_stationary_sd(cfg.phi, cfg.theta)
    elif scenario in ("C1", "C2", "C3"):
        x = gen_fbm(cfg.length, hurst, rng)
    elif scenario == "C4" or scenario == "C5":
        return gen_fou(cfg.length, hurst, cfg.lam, cfg.sigma, rng)
    elif scenario == "C6" or scenario == "C7":
        return gen_fou2(cfg.length, hurst, cfg.lam1, cfg.lam2, cfg.sigma, rng)
    elif scenario in ("X-OU-Y-OU", "X-FOU-Y-FOU"):
        return _shared_rate_pair(cfg, hurst, rng)
    else:
        raise InvalidInputError(f"unknown scenario {scenario!r}")

    eps = gen_white_noise(cfg.length, rng)
    if scenario in ("D1", "C1"):
        return x, x * x + 3.0 * eps
    if scenario in ("D2", "C2"):
        return x, eps  # noise scale applied across the batch
    if scenario == "D3":
        return x, eps * x
    # C3
    eps2 = gen_white_noise(cfg.length, rng)
    return x, eps * x + 3.0 * eps2


def gen_scenario(cfg: ScenarioConfig):
    """Generate ``cfg.n`` independent replications of the scenario.

    Returns two (n, length) matrices, one series per row.  Replication k
    draws only from the stream (cfg.seed, k).  In D2/C2 the noise added to
    sqrt(|x|) is scaled by the pooled sample standard deviation of sqrt(|x|)
    across the whole replication batch.
    """
    if cfg.scenario not in _SCENARIOS:
        raise InvalidInputError(
            f"unknown scenario {cfg.scenario!r} (choose from {', '.join(_SCENARIOS)})"
        )
    if cfg.n < 1:
        raise InvalidInputError(f"replication count must be >= 1, got {cfg.n}")
    if cfg.length < 1:
        raise InvalidInputError(f"series length must be >= 1, got {cfg.length}")
    hurst = _resolve_hurst(cfg)

    xs = np.empty((cfg.n, cfg.length))
    ys = np.empty((cfg.n, cfg.length))
    for k in range(cfg.n):
        rng = streams.substream(cfg.seed, streams.SCENARIO, k)
        xs[k], ys[k] = _one_replication(cfg, hurst, rng)

    if cfg.scenario in ("D2", "C2"):
        root = np.sqrt(np.abs(xs))
        scale = float(root.std())  # pooled over the whole batch
        ys = root + scale * ys
    return xs, ys


def scenario_with(cfg: ScenarioConfig, **changes) -> ScenarioConfig:
    """Convenience wrapper around dataclasses.replace."""
    return replace(cfg, **changes)
