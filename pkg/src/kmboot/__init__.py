"""Kaplan-Meier estimation, Efron's bootstrap up to the largest observed time, and
bootstrap confidence regions for the mean residual lifetime, Lorenz curve and Gini index."""

from .bands import (
    BootstrapDegenerateError,
    ConfidenceBand,
    ConfidenceInterval,
    gini_interval,
    lorenz_band,
    mrl_band,
    suggest_t2,
)
from .bootstrap import BootstrapDistribution, ResamplePlan, bootstrap_fit, quantile, resample, sup_statistic_mrl
from .covariance import (
    ConditionDiagnostic,
    CovarianceSurface,
    SupportError,
    censoring_diagnostic,
    gamma_hat,
    mrl_asymptotic_covariance,
    sigma2_hat,
)
from .estimators import ObservedSample, SurvivalFit, km_fit, resolve_ties
from .functionals import TailMassWarning, gini, lorenz, mean, mrl, mrl_curve
from .stepfn import PiecewiseLinear, StepFunction, antiderivative, generalized_inverse, stieltjes_integral

__version__ = "0.1.0"

__all__ = [
    "BootstrapDegenerateError",
    "BootstrapDistribution",
    "ConditionDiagnostic",
    "ConfidenceBand",
    "ConfidenceInterval",
    "CovarianceSurface",
    "ObservedSample",
    "PiecewiseLinear",
    "ResamplePlan",
    "StepFunction",
    "SupportError",
    "SurvivalFit",
    "TailMassWarning",
    "antiderivative",
    "bootstrap_fit",
    "censoring_diagnostic",
    "gamma_hat",
    "generalized_inverse",
    "gini",
    "gini_interval",
    "km_fit",
    "lorenz",
    "lorenz_band",
    "mean",
    "mrl",
    "mrl_asymptotic_covariance",
    "mrl_band",
    "mrl_curve",
    "quantile",
    "resample",
    "resolve_ties",
    "sigma2_hat",
    "stieltjes_integral",
    "sup_statistic_mrl",
    "suggest_t2",
]
