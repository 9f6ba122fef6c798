"""Posterior inference for the AR(1) coefficient under four priors.

With the noise variance known, the conditional likelihood is Gaussian in
phi with precision ``S_xx / sigma_eps2`` and centre ``S_xy / S_xx``, where
``S_xy = sum y_t y_{t-1}`` and ``S_xx = sum y_{t-1}^2``.  Each prior below
combines with it in closed form:

==================  ==========================================  ===============
prior               form                                        posterior
==================  ==========================================  ===============
truncated normal    N(d, sigma_phi2) restricted to [-1, 1]      truncated normal
natural conjugate   N(d, sigma_phi2)                            normal
g prior             N(location, g * sigma_eps2 / S_xx)          normal
Jeffreys            flat                                        normal
==================  ==========================================  ===============
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from .ar1 import as_series, lag_sums
from .estimators import EstimatorResult
from .truncnorm import TruncatedNormal, std_normal_cdf, std_normal_quantile, tn_cdf

__all__ = [
    "PriorSpec",
    "PosteriorSummary",
    "PRIOR_KINDS",
    "compute_ef",
    "posterior_tn",
    "bayes_estimator",
    "posterior_for_prior",
    "centered_interval",
    "coverage_percentage",
]

TRUNCATED_NORMAL = "TruncatedNormal"
JEFFREYS = "Jeffreys"
G_PRIOR = "GPrior"
NATURAL_CONJUGATE = "NaturalConjugate"
PRIOR_KINDS = (JEFFREYS, G_PRIOR, NATURAL_CONJUGATE, TRUNCATED_NORMAL)


@dataclass(frozen=True)
class PriorSpec:
    """One of the four prior families with its hyperparameters.

    ``g=None`` on a g prior means unit information, ``g = T`` for a series
    of length T, resolved when the posterior is formed.
    """

    kind: str
    d: Optional[float] = None
    sigma_phi2: Optional[float] = None
    g: Optional[float] = None
    location: float = 0.0

    def __post_init__(self):
        if self.kind not in PRIOR_KINDS:
            raise ValueError(f"unknown prior kind {self.kind!r}; expected one of {PRIOR_KINDS}")
        needs_normal = self.kind in (TRUNCATED_NORMAL, NATURAL_CONJUGATE)
        has_normal = self.d is not None or self.sigma_phi2 is not None
        if needs_normal:
            if self.d is None or self.sigma_phi2 is None:
                raise ValueError(f"{self.kind} prior needs both d and sigma_phi2")
            if not self.sigma_phi2 > 0.0:
                raise ValueError(f"sigma_phi2 must be positive, got {self.sigma_phi2}")
        elif has_normal:
            raise ValueError(f"{self.kind} prior takes no d / sigma_phi2")
        if self.g is not None:
            if self.kind != G_PRIOR:
                raise ValueError(f"{self.kind} prior takes no g")
            if not self.g > 0.0:
                raise ValueError(f"g must be positive, got {self.g}")

    @classmethod
    def truncated_normal(cls, d: float, sigma_phi2: float) -> "PriorSpec":
        return cls(TRUNCATED_NORMAL, d=d, sigma_phi2=sigma_phi2)

    @classmethod
    def natural_conjugate(cls, d: float, sigma_phi2: float) -> "PriorSpec":
        return cls(NATURAL_CONJUGATE, d=d, sigma_phi2=sigma_phi2)

    @classmethod
    def g_prior(cls, g: Optional[float] = None, location: float = 0.0) -> "PriorSpec":
        return cls(G_PRIOR, g=g, location=location)

    @classmethod
    def jeffreys(cls) -> "PriorSpec":
        return cls(JEFFREYS)


@dataclass(frozen=True)
class PosteriorSummary:
    family: str
    mean: float
    variance: float
    params: Union[TruncatedNormal, NormalDist]

    @property
    def truncated(self) -> bool:
        return self.family == "TruncatedNormalPosterior"

    def cdf(self, x):
        if self.truncated:
            return tn_cdf(self.params, x)
        return std_normal_cdf((np.asarray(x, dtype=float) - self.params.mean) / self.params.stdev)


def compute_ef(series, sigma_eps2: float, d: float, sigma_phi2: float) -> tuple[float, float]:
    """Posterior precision-weighted centre ``e`` and precision ``f``."""
    s_xy, s_xx = lag_sums(series)
    e = s_xy / sigma_eps2 + d / sigma_phi2
    f = s_xx / sigma_eps2 + 1.0 / sigma_phi2
    return e, f


def posterior_tn(series, sigma_eps2: float, d: float, sigma_phi2: float) -> TruncatedNormal:
    e, f = compute_ef(series, sigma_eps2, d, sigma_phi2)
    return TruncatedNormal(e / f, math.sqrt(1.0 / f), -1.0, 1.0)


def bayes_estimator(series, sigma_eps2: float, d: float, sigma_phi2: float) -> EstimatorResult:
    """Posterior mean under the truncated-normal prior (squared-error loss)."""
    return EstimatorResult("BE", posterior_tn(series, sigma_eps2, d, sigma_phi2).mean())


def _normal_posterior(mean: float, variance: float) -> PosteriorSummary:
    return PosteriorSummary("NormalPosterior", mean, variance, NormalDist(mean, math.sqrt(variance)))


def posterior_for_prior(series, sigma_eps2: float, prior: PriorSpec) -> PosteriorSummary:
    series = as_series(series)
    if prior.kind == TRUNCATED_NORMAL:
        post = posterior_tn(series, sigma_eps2, prior.d, prior.sigma_phi2)
        return PosteriorSummary("TruncatedNormalPosterior", post.mean(), post.var(), post)
    if prior.kind == NATURAL_CONJUGATE:
        e, f = compute_ef(series, sigma_eps2, prior.d, prior.sigma_phi2)
        return _normal_posterior(e / f, 1.0 / f)

    s_xy, s_xx = lag_sums(series)
    if s_xx == 0.0:
        raise ValueError(f"{prior.kind} posterior undefined: sum of squared lagged values is zero")
    if prior.kind == JEFFREYS:
        return _normal_posterior(s_xy / s_xx, sigma_eps2 / s_xx)
    g = float(len(series)) if prior.g is None else prior.g
    precision = (1.0 + 1.0 / g) * s_xx / sigma_eps2
    mean = (s_xy / sigma_eps2 + prior.location * s_xx / (g * sigma_eps2)) / precision
    return _normal_posterior(mean, g * sigma_eps2 / ((1.0 + g) * s_xx))


def centered_interval(posterior: PosteriorSummary, prob: float = 0.95) -> tuple[float, float]:
    """Interval ``(m - h, m + h)`` about the posterior mean holding mass ``prob``.

    For a normal posterior ``h`` is a quantile multiple of the standard
    deviation.  For a truncated posterior the mass is not symmetric about
    the mean, and ``h`` is found by a bracketed root search on the mass.
    """
    if not 0.0 < prob < 1.0:
        raise ValueError(f"prob must lie in (0, 1), got {prob}")
    m = posterior.mean
    if not posterior.truncated:
        h = float(std_normal_quantile(0.5 * (1.0 + prob))) * math.sqrt(posterior.variance)
        return m - h, m + h

    dist = posterior.params

    def excess(h):
        return float(tn_cdf(dist, m + h) - tn_cdf(dist, m - h)) - prob

    h_max = max(m - dist.a, dist.b - m)
    h = brentq(excess, 0.0, h_max, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    return m - h, m + h


def coverage_percentage(hits: int, total: int) -> float:
    if total <= 0:
        raise ValueError(f"total must be positive, got {total}")
    if not 0 <= hits <= total:
        raise ValueError(f"hits must lie in [0, total], got {hits} of {total}")
    return 100.0 * hits / total
