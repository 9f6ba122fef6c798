"""Monte Carlo studies: estimator comparison, bias data, prior sensitivity.

Seeding
-------
Replication ``r`` of every study draws its innovations from
``PCG64(base_seed + r)``.  The path for each ``phi`` is built from those
same shocks, so cells are comparable and the results do not depend on the
order (or the process) in which replications run.

Training samples
----------------
The truncated-normal and natural-conjugate priors take their
hyperparameters from a short training sample of ``max(10, ceil(T/10))``
observations.  Where that sample comes from is set by ``training``:

``"separate"``
    the stretch of the simulated path immediately before the analysed
    window (the tail of the discarded warm-up); the likelihood uses the
    full window.  Default for the simulation studies.
``"holdout"``
    the first observations of the window; the likelihood then conditions
    on the last training observation and uses only the rest.
``"overlap"``
    the first observations of the window, with the likelihood using the
    whole window again.  Counts the training data twice.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .ar1 import DEFAULT_BURN_IN, as_series, filter_innovations, lag_sums, make_rng
from .bayes import (
    G_PRIOR,
    NATURAL_CONJUGATE,
    PRIOR_KINDS,
    TRUNCATED_NORMAL,
    PriorSpec,
    bayes_estimator,
    centered_interval,
    coverage_percentage,
    posterior_for_prior,
)
from .estimators import METHODS, cls, cmle, mle, mme

__all__ = [
    "TRAINING_SOURCES",
    "SimulationConfig",
    "ComparisonRow",
    "CoverageReport",
    "comparison_config",
    "bias_config",
    "sensitivity_config",
    "training_sample_size",
    "hyperparams_from_sample",
    "training_hyperparams",
    "run_estimator_comparison",
    "run_bias_study",
    "run_sensitivity_study",
]

log = logging.getLogger(__name__)

TRAINING_SOURCES = ("separate", "holdout", "overlap")
DEFAULT_SEED = 20240
D_CLAMP = 0.999
SIGMA_PHI2_FLOOR = 1e-4


@dataclass(frozen=True)
class SimulationConfig:
    phi_grid: tuple = (-0.9, -0.5, 0.0, 0.5, 0.9)
    lengths: tuple = (30, 100)
    replications: int = 1
    burn_in: int = DEFAULT_BURN_IN
    sigma_eps2: float = 1.0
    base_seed: int = DEFAULT_SEED
    priors: tuple = PRIOR_KINDS
    training: str = "separate"
    prob: float = 0.95
    g: Optional[float] = None
    g_location: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phi_grid", tuple(float(p) for p in self.phi_grid))
        object.__setattr__(self, "lengths", tuple(int(n) for n in self.lengths))
        object.__setattr__(self, "priors", tuple(self.priors))
        if not self.phi_grid:
            raise ValueError("empty grid: phi_grid has no values")
        if not self.lengths:
            raise ValueError("empty grid: lengths has no values")
        bad = [p for p in self.phi_grid if not abs(p) < 1.0]
        if bad:
            raise ValueError(f"stationarity violated: phi values {bad} outside (-1, 1)")
        if min(self.lengths) < 12:
            raise ValueError("every series length must be at least 12 (training prefix + 2)")
        if self.replications < 1:
            raise ValueError("replications must be at least 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")
        if not self.sigma_eps2 > 0.0:
            raise ValueError("sigma_eps2 must be positive")
        if self.training not in TRAINING_SOURCES:
            raise ValueError(f"training must be one of {TRAINING_SOURCES}, got {self.training!r}")
        if self.training == "separate" and self.burn_in < training_sample_size(max(self.lengths)):
            raise ValueError("separate training samples are cut from the warm-up; burn_in is too short")
        unknown = set(self.priors) - set(PRIOR_KINDS)
        if unknown:
            raise ValueError(f"unknown prior kinds {sorted(unknown)}")
        if not 0.0 < self.prob < 1.0:
            raise ValueError("prob must lie in (0, 1)")

    def with_(self, **changes) -> "SimulationConfig":
        return replace(self, **changes)


def comparison_config(**overrides) -> SimulationConfig:
    return SimulationConfig(**overrides)


def bias_config(**overrides) -> SimulationConfig:
    base = dict(phi_grid=(0.5,), lengths=(30,))
    base.update(overrides)
    return SimulationConfig(**base)


def sensitivity_config(**overrides) -> SimulationConfig:
    base = dict(
        phi_grid=(-0.2, 0.2, -0.5, 0.5, -0.8, 0.8),
        lengths=(30, 50, 100, 200, 500),
        replications=500,
    )
    base.update(overrides)
    return SimulationConfig(**base)


# -- training-sample hyperparameters -------------------------------------------


def training_sample_size(T: int) -> int:
    return max(10, math.ceil(0.10 * T))


def hyperparams_from_sample(sample, sigma_eps2: float = 1.0) -> tuple[float, float]:
    """Least-squares centre and its sampling variance on a training sample.

    ``d`` is clamped into [-0.999, 0.999] and ``sigma_phi2`` floored at
    1e-4 so that the result is always a valid truncated-normal prior.
    """
    s_xy, s_xx = lag_sums(sample)
    if s_xx == 0.0:
        raise ValueError("training sample has zero sum of squared lagged values")
    d = min(max(s_xy / s_xx, -D_CLAMP), D_CLAMP)
    return d, max(sigma_eps2 / s_xx, SIGMA_PHI2_FLOOR)


def training_hyperparams(series, sigma_eps2: float = 1.0) -> tuple[float, float]:
    """Hyperparameters ``(d, sigma_phi2)`` from the series' own prefix."""
    y = as_series(series)
    if len(y) < 12:
        raise ValueError(f"series too short for a training prefix: {len(y)} < 12")
    return hyperparams_from_sample(y.values[: training_sample_size(len(y))], sigma_eps2)


def _informative_inputs(path: np.ndarray, start: int, n: int, training: str, sigma_eps2: float):
    """(d, sigma_phi2, series for the likelihood) for a window path[start:start+n]."""
    window = path[start:start + n]
    m = training_sample_size(n)
    if training == "separate":
        d, s2 = hyperparams_from_sample(path[start - m:start], sigma_eps2)
        return d, s2, window
    d, s2 = hyperparams_from_sample(window[:m], sigma_eps2)
    if training == "holdout":
        return d, s2, window[m - 1:]
    return d, s2, window


def _replication_path(config: SimulationConfig, r: int, length: int, phi: float) -> np.ndarray:
    eps = make_rng(config.base_seed + r).standard_normal(config.burn_in + length)
    return filter_innovations(eps * math.sqrt(config.sigma_eps2), phi)


# -- estimator comparison -------------------------------------------------------


@dataclass
class ComparisonRow:
    phi: float
    T: int
    estimates: dict = field(default_factory=dict)
    mean_abs_bias: dict = field(default_factory=dict)
    replications_used: int = 0
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def _all_estimates(path: np.ndarray, config: SimulationConfig, T: int) -> dict:
    start = config.burn_in
    y = path[start:start + T]
    d, s2, post = _informative_inputs(path, start, T, config.training, config.sigma_eps2)
    return {
        "MME": mme(y).estimate,
        "CLS": cls(y).estimate,
        "MLE": mle(y, config.sigma_eps2).estimate,
        "CMLE": cmle(y, config.sigma_eps2).estimate,
        "BE": bayes_estimator(post, config.sigma_eps2, d, s2).estimate,
    }


def run_estimator_comparison(config: SimulationConfig) -> list[ComparisonRow]:
    """One row per (phi, T): the five estimates, averaged over replications.

    With ``replications == 1`` each row is a single seeded run.  A cell
    whose estimators fail is returned with ``error`` set; other cells are
    unaffected.
    """
    rows = []
    for T in config.lengths:
        for phi in config.phi_grid:
            draws = {k: [] for k in METHODS}
            error = None
            for r in range(config.replications):
                try:
                    est = _all_estimates(_replication_path(config, r, T, phi), config, T)
                except (ValueError, FloatingPointError) as exc:
                    log.warning("comparison cell phi=%s T=%s rep=%s failed: %s", phi, T, r, exc)
                    error = str(exc)
                    continue
                for k, v in est.items():
                    draws[k].append(v)
            used = len(draws["CLS"])
            if used == 0:
                rows.append(ComparisonRow(phi, T, error=error or "no replications"))
                continue
            rows.append(ComparisonRow(
                phi, T,
                estimates={k: float(np.mean(v)) for k, v in draws.items()},
                mean_abs_bias={k: float(np.mean(np.abs(np.array(v) - phi))) for k, v in draws.items()},
                replications_used=used,
            ))
    return rows


def run_bias_study(config: SimulationConfig, repeats: int = 10) -> list[tuple[int, str, float]]:
    """Absolute bias of each estimator over ``repeats`` seeded runs.

    Uses the first ``phi`` and first length of ``config``.  Returns
    long-format ``(repeat, method, abs_bias)`` rows, repeat numbering from 1.
    """
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    phi, T = config.phi_grid[0], config.lengths[0]
    rows = []
    for i in range(repeats):
        est = _all_estimates(_replication_path(config, i, T, phi), config, T)
        rows.extend((i + 1, k, abs(est[k] - phi)) for k in METHODS)
    return rows


# -- prior sensitivity ----------------------------------------------------------


@dataclass
class CoverageReport:
    """Coverage percentages by (prior kind, series length, true phi)."""

    priors: tuple
    lengths: tuple
    phi_grid: tuple
    hits: np.ndarray  # (prior, length, phi) integer counts
    totals: np.ndarray  # (length, phi) replications that produced all posteriors
    replications: int
    prob: float = 0.95

    @property
    def replications_used(self) -> int:
        return int(self.totals.min())

    @property
    def entries(self) -> dict:
        out = {}
        for i, kind in enumerate(self.priors):
            for j, n in enumerate(self.lengths):
                for k, phi in enumerate(self.phi_grid):
                    out[(kind, n, phi)] = self.percentage(kind, n, phi)
        return out

    def percentage(self, kind: str, n: int, phi: float) -> float:
        i, j, k = self.priors.index(kind), self.lengths.index(n), self.phi_grid.index(phi)
        return coverage_percentage(int(self.hits[i, j, k]), int(self.totals[j, k]))

    def table(self, phi: float) -> list[dict]:
        """Rows for one true phi: length, then one percentage per prior."""
        k = self.phi_grid.index(phi)
        rows = []
        for j, n in enumerate(self.lengths):
            row = {"n": n}
            row.update({kind: self.percentage(kind, n, phi) for kind in self.priors})
            row["denominator"] = int(self.totals[j, k])
            rows.append(row)
        return rows


def _prior_for(kind: str, d: float, s2: float, config: SimulationConfig) -> PriorSpec:
    if kind == TRUNCATED_NORMAL:
        return PriorSpec.truncated_normal(d, s2)
    if kind == NATURAL_CONJUGATE:
        return PriorSpec.natural_conjugate(d, s2)
    if kind == G_PRIOR:
        return PriorSpec.g_prior(config.g, config.g_location)
    return PriorSpec.jeffreys()


def _sensitivity_block(config: SimulationConfig, reps: Sequence[int]):
    n_p, n_l, n_phi = len(config.priors), len(config.lengths), len(config.phi_grid)
    hits = np.zeros((n_p, n_l, n_phi), dtype=np.int64)
    totals = np.zeros((n_l, n_phi), dtype=np.int64)
    longest = max(config.lengths)
    for r in reps:
        for k, phi in enumerate(config.phi_grid):
            path = _replication_path(config, r, longest, phi)
            for j, n in enumerate(config.lengths):
                try:
                    cell = _sensitivity_cell(path, n, phi, config)
                except (ValueError, FloatingPointError, RuntimeError) as exc:
                    log.warning("replication %d (phi=%s, n=%d) excluded: %s", r, phi, n, exc)
                    continue
                hits[:, j, k] += cell
                totals[j, k] += 1
    return hits, totals


def _sensitivity_cell(path: np.ndarray, n: int, phi: float, config: SimulationConfig) -> np.ndarray:
    start = config.burn_in
    window = path[start:start + n]
    d, s2, post_series = _informative_inputs(path, start, n, config.training, config.sigma_eps2)
    out = np.zeros(len(config.priors), dtype=np.int64)
    for i, kind in enumerate(config.priors):
        prior = _prior_for(kind, d, s2, config)
        series = post_series if kind in (TRUNCATED_NORMAL, NATURAL_CONJUGATE) else window
        lo, hi = centered_interval(posterior_for_prior(series, config.sigma_eps2, prior), config.prob)
        out[i] = int(lo <= phi <= hi)
    return out


def run_sensitivity_study(config: SimulationConfig, jobs: int = 1) -> CoverageReport:
    """Coverage of the centred posterior interval for each prior.

    For each replication and each true ``phi`` a path of
    ``burn_in + max(lengths)`` values is generated and the warm-up dropped;
    every length ``n`` analyses the first ``n`` retained observations.
    Replications that fail for a (length, phi) cell are logged and left out
    of that cell's denominator.  ``jobs > 1`` spreads replications over
    worker processes; counts are integers, so the report is identical.
    """
    reps = list(range(config.replications))
    if jobs <= 1:
        hits, totals = _sensitivity_block(config, reps)
    else:
        chunks = [reps[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sensitivity_block, [config] * len(chunks), chunks))
        hits = sum(p[0] for p in parts)
        totals = sum(p[1] for p in parts)
    excluded = config.replications - totals
    if excluded.any():
        log.warning("excluded replications per (length, phi) cell:\n%s", excluded)
    return CoverageReport(
        priors=config.priors,
        lengths=config.lengths,
        phi_grid=config.phi_grid,
        hits=hits,
        totals=totals,
        replications=config.replications,
        prob=config.prob,
    )
