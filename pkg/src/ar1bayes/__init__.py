"""Bayesian and classical estimation of the zero-mean AR(1) coefficient."""
__version__ = "0.1.0"

from .ar1 import Ar1Params, TimeSeries, simulate
from .bayes import PriorSpec, bayes_estimator, centered_interval, posterior_for_prior
from .estimators import cls, cmle, mle, mme
from .truncnorm import TruncatedNormal

__all__ = [
    "__version__",
    "Ar1Params",
    "TimeSeries",
    "simulate",
    "PriorSpec",
    "bayes_estimator",
    "centered_interval",
    "posterior_for_prior",
    "cls",
    "cmle",
    "mle",
    "mme",
    "TruncatedNormal",
]
