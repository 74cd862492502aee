"""Plug-in variance and covariance of the Kaplan-Meier process, and censoring diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .estimators import SurvivalFit
from .stepfn import StepFunction, antiderivative

__all__ = [
    "CovarianceSurface",
    "ConditionDiagnostic",
    "SupportError",
    "sigma2_hat",
    "gamma_hat",
    "censoring_diagnostic",
    "mrl_asymptotic_covariance",
]


class SupportError(ValueError):
    """A plug-in quantity is undefined because the survival estimate is zero."""


def sigma2_hat(fit: SurvivalFit) -> StepFunction:
    """``t -> int_0^t dA_n / H_n-``, with ``H_n(u-) = Y(u)/n``.

    Each event time contributes ``(d/Y) / (Y/n) = n d / Y**2``.
    """
    has_event = fit.n_events > 0
    d = fit.n_events[has_event].astype(np.float64)
    y = fit.n_at_risk[has_event].astype(np.float64)
    return StepFunction(fit.times[has_event], np.cumsum(fit.n * d / y**2), 0.0)


@dataclass(frozen=True, eq=False)
class CovarianceSurface:
    """Evaluator for ``Gamma_n(u, v) = S_n(u) sigma2_n(u ^ v) S_n(v)``."""

    fit: SurvivalFit
    sigma2: StepFunction

    @classmethod
    def from_fit(cls, fit: SurvivalFit) -> CovarianceSurface:
        return cls(fit, sigma2_hat(fit))

    def __call__(self, u: ArrayLike, v: ArrayLike) -> float | NDArray[np.float64]:
        u = np.asarray(u, dtype=np.float64)
        v = np.asarray(v, dtype=np.float64)
        # S(u) * S(v) first: the product is then bitwise symmetric in (u, v)
        out = (np.asarray(self.fit.km.eval(u)) * np.asarray(self.fit.km.eval(v))) * np.asarray(
            self.sigma2.eval(np.minimum(u, v))
        )
        return float(out) if out.ndim == 0 else out

    def on_grid(self, grid: ArrayLike) -> NDArray[np.float64]:
        """Matrix ``Gamma_n(grid[i], grid[j])``."""
        grid = np.asarray(grid, dtype=np.float64).ravel()
        return self(grid[:, None], grid[None, :])


def gamma_hat(fit: SurvivalFit, u: ArrayLike, v: ArrayLike) -> float | NDArray[np.float64]:
    return CovarianceSurface.from_fit(fit)(u, v)


@dataclass(frozen=True)
class ConditionDiagnostic:
    """Plug-in value of ``-int_t^tau dS / G_-**power``.

    ``zero_denominator_jumps`` counts event jumps where the censoring estimate's
    left limit is zero; when positive the value is infinite and the censoring
    condition is likely violated.
    """

    value: float
    t: float
    power: int
    zero_denominator_jumps: int

    @property
    def condition_likely_violated(self) -> bool:
        return self.zero_denominator_jumps > 0

    def to_dict(self) -> dict:
        return {
            "value": self.value if np.isfinite(self.value) else None,
            "t": self.t,
            "power": self.power,
            "zero_denominator_jumps": self.zero_denominator_jumps,
            "condition_likely_violated": self.condition_likely_violated,
        }


def censoring_diagnostic(fit: SurvivalFit, t: float = 0.0, power: int = 1) -> ConditionDiagnostic:
    """Sum of ``-Delta S_n(u) / G_n(u-)**power`` over event times ``u`` in ``(t, T_n]``.

    ``power=1`` assesses the basic censoring condition, ``power=3`` the stronger
    one needed for the bootstrap covariance estimate.
    """
    if int(power) != power or power < 1:
        raise ValueError("power must be a positive integer")
    if t < 0:
        raise ValueError("t must be non-negative")
    bp = fit.km.breakpoints
    mask = bp > t
    u = bp[mask]
    drops = -fit.km.jumps[mask]
    g_left = np.asarray(fit.censor_km.eval_left(u)) if u.size else np.empty(0)
    zero = g_left <= 0
    contrib = drops[~zero] / g_left[~zero] ** power
    value = float(np.sum(contrib))
    n_zero = int(np.sum(zero & (drops > 0)))
    if n_zero:
        value = float("inf")
    return ConditionDiagnostic(value, float(t), int(power), n_zero)


def _tail_area(km: StepFunction, upper: float, t: NDArray[np.float64]) -> NDArray[np.float64]:
    """``int_t^upper S(u) du`` for each entry of ``t`` (zero beyond ``upper``)."""
    area = antiderivative(km, upper)
    return np.maximum(area.node_values[-1] - np.asarray(area(t)), 0.0)


def mrl_asymptotic_covariance(fit: SurvivalFit, r: float, s: float) -> float:
    """Plug-in covariance of the limiting mean-residual-life process at ``(r, s)``.

    Evaluates ``int int_{m}^{T} Gamma_n(u,v) du dv / (S_n(r) S_n(s))
    - sigma2_n(m) g_n(r) g_n(s)`` with ``m = max(r, s)`` and ``T`` the largest
    observed time. The double integral is exact: by symmetry it equals
    ``2 int_m^T S_n(u) sigma2_n(u) I(u) du`` with ``I(u) = int_u^T S_n``, whose
    integrand is constant-times-linear between event times.
    """
    km = fit.km
    s_r, s_s = float(km.eval(r)), float(km.eval(s))
    if s_r <= 0 or s_s <= 0:
        raise SupportError("estimate undefined beyond support of fit")
    upper = fit.largest_time
    m = max(r, s)
    sig = sigma2_hat(fit)
    g_r = _tail_area(km, upper, np.array([r]))[0] / s_r
    g_s = _tail_area(km, upper, np.array([s]))[0] / s_s
    if m >= upper:
        return float(-sig.eval(m) * g_r * g_s)
    inner = km.breakpoints[(km.breakpoints > m) & (km.breakpoints < upper)]
    nodes = np.concatenate(([m], inner, [upper]))
    tail = _tail_area(km, upper, nodes)
    left = nodes[:-1]
    weight = np.asarray(km.eval(left)) * np.asarray(sig.eval(left))
    double = 2.0 * float(np.sum(weight * (tail[:-1] + tail[1:]) / 2.0 * np.diff(nodes)))
    return double / (s_r * s_s) - float(sig.eval(m)) * g_r * g_s
