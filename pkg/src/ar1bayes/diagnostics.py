"""Residual and stationarity diagnostics for a fitted AR(1).

``phillips_perron`` is the single-mean (intercept, no trend) variant with a
Bartlett-weighted Newey-West long-run variance.  Its p-values come from
MacKinnon's (1994) normal-quantile response surfaces for the constant-only
case.  The normality tests standardise by the sample mean and standard
deviation and report the Lilliefors / Stephens approximations for
estimated parameters.  All p-values are approximations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .ar1 import as_series

__all__ = [
    "UnitRootResult",
    "NormalityResult",
    "NORMALITY_TESTS",
    "phillips_perron",
    "residuals",
    "normality_tests",
    "ks_statistic",
    "lilliefors_pvalue",
    "cvm_statistic",
    "cvm_pvalue",
    "ad_statistic",
    "ad_pvalue",
]

NORMALITY_TESTS = ("KolmogorovSmirnov", "CramerVonMises", "AndersonDarling")

# MacKinnon (1994) response surfaces, constant-only regression
_TAU_STAR, _TAU_MIN, _TAU_MAX = -1.61, -18.83, 2.74
_TAU_SMALLP = (2.1659, 1.4412, 3.8269e-2)
_TAU_LARGEP = (1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2)
_Z_STAR = -8.9
_Z_SMALLP = (2.2142, -1.7863, 0.32828, -0.07727)
_Z_LARGEP = (1.717, 5.5243e-1, 4.3463e-2, 1.6671e-3)


@dataclass(frozen=True)
class UnitRootResult:
    lag: int
    rho_stat: float
    tau_stat: float
    rho_p: float
    tau_p: float


@dataclass(frozen=True)
class NormalityResult:
    test: str
    statistic: float
    p_value: float
    in_table_range: bool = True


def _poly(coefs, x: float) -> float:
    return sum(c * x**i for i, c in enumerate(coefs))


def _tau_pvalue(tau: float) -> float:
    if tau > _TAU_MAX:
        return 1.0
    if tau < _TAU_MIN:
        return 0.0
    coefs = _TAU_SMALLP if tau <= _TAU_STAR else _TAU_LARGEP
    return float(ndtr(_poly(coefs, tau)))


def _rho_pvalue(z: float) -> float:
    if z >= 0.0:
        return 1.0
    if z <= _Z_STAR:
        return float(ndtr(_poly(_Z_SMALLP, math.log(-z))))
    return float(ndtr(_poly(_Z_LARGEP, z)))


def _long_run_variance(u: np.ndarray, lag: int) -> float:
    n = u.size
    s = float(u @ u) / n
    for j in range(1, lag + 1):
        s += 2.0 * (1.0 - j / (lag + 1.0)) * float(u[j:] @ u[:-j]) / n
    return s


def phillips_perron(series, max_lag: int) -> list[UnitRootResult]:
    """Z(rho) and Z(tau) for lags 0..max_lag.

    Regresses ``y_t`` on a constant and ``y_{t-1}``.  At lag 0 the long-run
    and short-run variances coincide and ``tau`` is the Dickey-Fuller
    t-ratio.
    """
    if max_lag < 0:
        raise ValueError(f"max_lag must be nonnegative, got {max_lag}")
    y = as_series(series).values
    if y.size < max_lag + 10:
        raise ValueError(f"series too short: {y.size} observations for max_lag={max_lag}")
    x, yt = y[:-1], y[1:]
    n = yt.size
    design = np.column_stack([np.ones(n), x])
    coef, *_ = np.linalg.lstsq(design, yt, rcond=None)
    u = yt - design @ coef
    rho = float(coef[1])
    ssr = float(u @ u)
    if ssr == 0.0:
        raise ValueError("regression residuals are identically zero")
    s2 = ssr / (n - 2)
    sxx = float(((x - x.mean()) ** 2).sum())
    se = math.sqrt(s2 / sxx)
    gamma0 = ssr / n
    out = []
    for lag in range(max_lag + 1):
        lam2 = _long_run_variance(u, lag)
        if not lam2 > 0.0:
            raise ValueError(f"nonpositive long-run variance at lag {lag}")
        lam = math.sqrt(lam2)
        tau = math.sqrt(gamma0 / lam2) * (rho - 1.0) / se \
            - 0.5 * (lam2 - gamma0) / lam * n * se / math.sqrt(s2)
        z = n * (rho - 1.0) - 0.5 * (n * n * se * se / s2) * (lam2 - gamma0)
        out.append(UnitRootResult(lag, z, tau, _rho_pvalue(z), _tau_pvalue(tau)))
    return out


def residuals(series, phi_hat: float) -> np.ndarray:
    y = as_series(series).values
    return y[1:] - phi_hat * y[:-1]


def _standardized_cdf(sample) -> np.ndarray:
    x = np.sort(np.asarray(sample, dtype=float).ravel())
    if x.size < 8:
        raise ValueError(f"normality tests need at least 8 values, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise ValueError("sample contains non-finite values")
    sd = x.std(ddof=1)
    if not sd > 0.0:
        raise ValueError("sample has zero variance")
    return ndtr((x - x.mean()) / sd)


def ks_statistic(sample) -> float:
    f = _standardized_cdf(sample)
    n = f.size
    i = np.arange(1, n + 1)
    return float(max((i / n - f).max(), (f - (i - 1) / n).max()))


def lilliefors_pvalue(d: float, n: int) -> float:
    """Dallal-Wilkinson approximation, with Stephens' form above 0.1."""
    if n > 100:
        kd, nd = d * (n / 100.0) ** 0.49, 100
    else:
        kd, nd = d, n
    p = math.exp(-7.01256 * kd * kd * (nd + 2.78019)
                 + 2.99587 * kd * math.sqrt(nd + 2.78019)
                 - 0.122119 + 0.974598 / math.sqrt(nd) + 1.67997 / nd)
    if p <= 0.1:
        return p
    kk = (math.sqrt(n) - 0.01 + 0.85 / math.sqrt(n)) * d
    if kk <= 0.302:
        return 1.0
    if kk <= 0.5:
        p = 2.76773 - 19.828315 * kk + 80.709644 * kk**2 - 138.55152 * kk**3 + 81.218052 * kk**4
    elif kk <= 0.9:
        p = -4.901232 + 40.662806 * kk - 97.490286 * kk**2 + 94.029866 * kk**3 - 32.355711 * kk**4
    elif kk <= 1.31:
        p = 6.198765 - 19.558097 * kk + 23.186922 * kk**2 - 12.234627 * kk**3 + 2.423045 * kk**4
    else:
        p = 0.0
    return min(max(p, 0.0), 1.0)


def cvm_statistic(sample) -> float:
    f = _standardized_cdf(sample)
    n = f.size
    i = np.arange(1, n + 1)
    return float(1.0 / (12 * n) + ((f - (2 * i - 1) / (2.0 * n)) ** 2).sum())


def cvm_pvalue(w2: float, n: int) -> float:
    w = w2 * (1.0 + 0.5 / n)
    if w < 0.0275:
        p = 1.0 - math.exp(-13.953 + 775.5 * w - 12542.61 * w * w)
    elif w < 0.051:
        p = 1.0 - math.exp(-5.903 + 179.546 * w - 1515.29 * w * w)
    elif w < 0.092:
        p = math.exp(0.886 - 31.62 * w + 10.897 * w * w)
    elif w < 1.1:
        p = math.exp(1.111 - 34.242 * w + 12.832 * w * w)
    else:
        # the quadratic turns upward past here; report its value at the edge
        p = 7.37e-10
    return min(max(p, 0.0), 1.0)


def ad_statistic(sample) -> float:
    f = _standardized_cdf(sample)
    n = f.size
    i = np.arange(1, n + 1)
    with np.errstate(divide="ignore"):
        terms = (2 * i - 1) * (np.log(f) + np.log1p(-f[::-1]))
    return float(-n - terms.sum() / n)


def ad_pvalue(a2: float, n: int) -> float:
    a = a2 * (1.0 + 0.75 / n + 2.25 / n**2)
    if a < 0.2:
        p = 1.0 - math.exp(-13.436 + 101.14 * a - 223.73 * a * a)
    elif a < 0.34:
        p = 1.0 - math.exp(-8.318 + 42.796 * a - 59.938 * a * a)
    elif a < 0.6:
        p = math.exp(0.9177 - 4.279 * a - 1.38 * a * a)
    elif a <= 13.0:
        p = math.exp(1.2937 - 5.709 * a + 0.0186 * a * a)
    else:
        p = 0.0  # below 5e-31
    return min(max(p, 0.0), 1.0)


def normality_tests(sample) -> list[NormalityResult]:
    """KS, Cramer-von Mises and Anderson-Darling tests of normality.

    ``in_table_range`` is False when a p-value falls where the published
    tables stop (above 0.15 or below 0.005 for KS; above 0.25 or below 0.005
    for the quadratic statistics), so the figure is an extrapolation.
    """
    x = np.asarray(sample, dtype=float).ravel()
    n = x.size
    d, w2, a2 = ks_statistic(x), cvm_statistic(x), ad_statistic(x)
    p_ks, p_cvm, p_ad = lilliefors_pvalue(d, n), cvm_pvalue(w2, n), ad_pvalue(a2, n)
    return [
        NormalityResult("KolmogorovSmirnov", d, p_ks, 0.005 <= p_ks <= 0.15),
        NormalityResult("CramerVonMises", w2, p_cvm, 0.005 <= p_cvm <= 0.25),
        NormalityResult("AndersonDarling", a2, p_ad, 0.005 <= p_ad <= 0.25),
    ]
