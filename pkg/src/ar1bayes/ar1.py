"""Zero-mean AR(1) processes: containers, simulation and likelihoods.

The model is ``y_t = phi * y_{t-1} + eps_t`` with Gaussian white noise of
known variance ``sigma_eps2``.  The constant term is fixed at zero.

Random streams come from numpy's ``PCG64`` bit generator and innovations
from ``Generator.standard_normal`` (ziggurat), so a given integer seed
yields the same series on every platform numpy supports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

__all__ = [
    "TimeSeries",
    "Ar1Params",
    "as_series",
    "lag_sums",
    "make_rng",
    "simulate",
    "filter_innovations",
    "conditional_log_likelihood",
    "exact_log_likelihood",
    "DEFAULT_BURN_IN",
]

DEFAULT_BURN_IN = 200
_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """An ordered run of finite observations y_1..y_T with T >= 2."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 2:
            raise ValueError(f"a time series needs at least 2 observations, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise ValueError("time series contains non-finite values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, item):
        return self.values[item]

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    @property
    def T(self) -> int:
        return self.values.size

    def head(self, n: int) -> "TimeSeries":
        return TimeSeries(self.values[:n])


def as_series(series) -> TimeSeries:
    return series if isinstance(series, TimeSeries) else TimeSeries(series)


@dataclass(frozen=True)
class Ar1Params:
    phi: float
    sigma_eps2: float = 1.0
    c: float = 0.0

    def __post_init__(self):
        if not self.sigma_eps2 > 0.0:
            raise ValueError(f"sigma_eps2 must be positive, got {self.sigma_eps2}")
        if self.c != 0.0:
            raise ValueError("only the zero-mean model (c = 0) is supported")


def lag_sums(series) -> tuple[float, float]:
    """Return ``(sum y_t y_{t-1}, sum y_{t-1}^2)`` over t = 2..T."""
    y = as_series(series).values
    return float(np.dot(y[1:], y[:-1])), float(np.dot(y[:-1], y[:-1]))


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def filter_innovations(innovations, phi: float) -> np.ndarray:
    """Run the recursion y_t = phi*y_{t-1} + e_t from y_0 = 0."""
    return lfilter([1.0], [1.0, -phi], np.asarray(innovations, dtype=float))


def simulate(params: Ar1Params, length: int, burn_in: int = DEFAULT_BURN_IN,
             seed=None) -> TimeSeries:
    """Simulate a stationary AR(1) path.

    ``burn_in + length`` values are generated from ``y_0 = 0`` and the
    first ``burn_in`` are dropped.  The innovation stream depends only on
    ``seed`` (an int or a ``numpy.random.Generator``), so paths for
    different ``phi`` under the same seed share their shocks.
    """
    if not abs(params.phi) < 1.0:
        raise ValueError(f"stationarity violated: |phi| = {abs(params.phi)} >= 1")
    if length < 2:
        raise ValueError(f"length must be at least 2, got {length}")
    if burn_in < 0:
        raise ValueError(f"burn_in must be nonnegative, got {burn_in}")
    rng = make_rng(seed)
    eps = rng.standard_normal(burn_in + length) * math.sqrt(params.sigma_eps2)
    return TimeSeries(filter_innovations(eps, params.phi)[burn_in:])


def conditional_log_likelihood(series, phi: float, sigma_eps2: float = 1.0) -> float:
    """Gaussian log-likelihood of y_2..y_T given y_1."""
    if not sigma_eps2 > 0.0:
        raise ValueError(f"sigma_eps2 must be positive, got {sigma_eps2}")
    y = as_series(series).values
    resid = y[1:] - phi * y[:-1]
    n = resid.size
    return -0.5 * n * (_LOG_2PI + math.log(sigma_eps2)) - float(resid @ resid) / (2.0 * sigma_eps2)


def exact_log_likelihood(series, phi: float, sigma_eps2: float = 1.0) -> float:
    """Conditional log-likelihood plus the stationary density of y_1."""
    if not abs(phi) < 1.0:
        raise ValueError(f"exact likelihood needs |phi| < 1, got {phi}")
    y = as_series(series).values
    one_minus = (1.0 - phi) * (1.0 + phi)
    init = -0.5 * (_LOG_2PI + math.log(sigma_eps2) - math.log(one_minus)) \
        - y[0] ** 2 * one_minus / (2.0 * sigma_eps2)
    return conditional_log_likelihood(y, phi, sigma_eps2) + init
