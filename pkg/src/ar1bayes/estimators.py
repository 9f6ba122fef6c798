"""Frequentist point estimators of the AR(1) coefficient.

``mme`` is the lag-one sample autocorrelation about the known zero mean, ``cls`` the
least-squares slope through the origin, ``mle`` the maximiser of the exact
Gaussian likelihood (stationary start) and ``cmle`` a numerical maximiser
of the conditional likelihood.  For known noise variance ``cls`` and
``cmle`` solve the same quadratic problem and agree to optimiser tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ar1 import as_series, exact_log_likelihood, lag_sums
from .optimize import grid_then_golden

__all__ = ["EstimatorResult", "METHODS", "mme", "cls", "mle", "cmle"]

METHODS = ("MME", "CLS", "MLE", "CMLE", "BE")

# the exact likelihood is evaluated strictly inside the stationary region
_EDGE = 1e-8


@dataclass(frozen=True)
class EstimatorResult:
    method: str
    estimate: float

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not np.isfinite(self.estimate):
            raise ValueError(f"{self.method} estimate is not finite")

    def __float__(self):
        return float(self.estimate)


def mme(series, demean: bool = False) -> EstimatorResult:
    """Lag-one sample autocorrelation.

    The process mean is known to be zero, so by default the moments are
    taken about zero.  ``demean=True`` subtracts the sample mean first,
    which adds an O(1/T) downward bias.
    """
    y = as_series(series).values
    dev = y - y.mean() if demean else y
    denom = float(dev @ dev)
    if denom == 0.0:
        raise ValueError("MME undefined: zero sample second moment")
    return EstimatorResult("MME", float(dev[1:] @ dev[:-1]) / denom)


def cls(series) -> EstimatorResult:
    s_xy, s_xx = lag_sums(series)
    if s_xx == 0.0:
        raise ValueError("CLS undefined: sum of squared lagged values is zero")
    return EstimatorResult("CLS", s_xy / s_xx)


def mle(series, sigma_eps2: float = 1.0, tol: float = 1e-8) -> EstimatorResult:
    y = as_series(series)
    phi = grid_then_golden(
        lambda p: exact_log_likelihood(y, p, sigma_eps2), -1.0 + _EDGE, 1.0 - _EDGE, tol
    )
    return EstimatorResult("MLE", phi)


def cmle(series, sigma_eps2: float = 1.0, tol: float = 1e-8) -> EstimatorResult:
    """Numerical maximiser of the conditional likelihood.

    The search starts on [-1.5, 1.5]; since the conditional likelihood puts
    no bound on phi, the window is widened while the optimum sits on its
    edge (explosive series).
    """
    y = as_series(series)
    _, s_xx = lag_sums(y)
    if s_xx == 0.0:
        raise ValueError("CMLE undefined: sum of squared lagged values is zero")
    if not sigma_eps2 > 0.0:
        raise ValueError(f"sigma_eps2 must be positive, got {sigma_eps2}")
    x, z = y.values[:-1], y.values[1:]

    # the log-likelihood less its constant: the constant would swamp the
    # small differences the search compares near a flat optimum
    def objective(p):
        r = z - p * x
        return -float(r @ r) / (2.0 * sigma_eps2)

    half = 1.5
    while True:
        phi = grid_then_golden(objective, -half, half, tol)
        if abs(phi) < half - 2.0 * half / 99:
            return EstimatorResult("CMLE", phi)
        half *= 2.0
