"""Bootstrap confidence bands for the mean residual lifetime and Lorenz curve, and Gini intervals.

All regions are linear (untransformed): point estimate plus or minus
``q / sqrt(n)``, where ``q`` is the upper empirical ``(1 - alpha)``-quantile of
the bootstrap sup-statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from .bootstrap import BootstrapDistribution, ResamplePlan, run_replicates, sup_statistic_mrl
from .covariance import SupportError
from .estimators import ObservedSample, SurvivalFit, km_fit
from .functionals import lorenz, gini, mrl_curve

__all__ = [
    "BootstrapDegenerateError",
    "ConfidenceBand",
    "ConfidenceInterval",
    "mrl_band",
    "lorenz_band",
    "gini_interval",
    "suggest_t2",
    "lorenz_sup_distance",
]


class BootstrapDegenerateError(RuntimeError):
    """Every bootstrap replicate produced an undefined statistic."""


@dataclass(frozen=True, eq=False)
class ConfidenceBand:
    """Simultaneous band on a grid.

    ``center_left`` holds left limits of the point estimate at the grid points
    (equal to ``center`` for continuous curves); coverage checks use both.
    """

    kind: Literal["mrl", "lorenz"]
    grid: NDArray[np.float64]
    center: NDArray[np.float64]
    center_left: NDArray[np.float64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    alpha: float
    quantile_used: float
    half_width: float
    replicates_used: int
    replicates_dropped: int
    lower_clipped: bool = False
    upper_clipped: bool = False
    tail_mass: float = 0.0
    distribution: BootstrapDistribution | None = field(default=None, repr=False)

    def contains(self, truth) -> bool:
        """True if ``truth`` lies inside the band at every grid point and left limit."""
        values = np.asarray(truth(self.grid), dtype=np.float64)
        lo = np.maximum(self.center - self.half_width, self._floor)
        hi = np.minimum(self.center + self.half_width, self._ceiling)
        ok = np.all((values >= lo) & (values <= hi))
        if self.grid.size > 1:
            lo_l = np.maximum(self.center_left[1:] - self.half_width, self._floor)
            hi_l = np.minimum(self.center_left[1:] + self.half_width, self._ceiling)
            ok = ok and np.all((values[1:] >= lo_l) & (values[1:] <= hi_l))
        return bool(ok)

    @property
    def _floor(self) -> float:
        return 0.0

    @property
    def _ceiling(self) -> float:
        return 1.0 if self.kind == "lorenz" else math.inf

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "quantile_used": self.quantile_used,
            "half_width": self.half_width,
            "replicates_used": self.replicates_used,
            "replicates_dropped": self.replicates_dropped,
            "lower_clipped": self.lower_clipped,
            "upper_clipped": self.upper_clipped,
            "tail_mass": self.tail_mass,
            "grid": self.grid.tolist(),
            "center": self.center.tolist(),
            "center_left": self.center_left.tolist(),
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
        }


@dataclass(frozen=True)
class ConfidenceInterval:
    estimate: float
    lower: float
    upper: float
    alpha: float
    quantile_used: float
    replicates_used: int = 0
    replicates_dropped: int = 0
    tail_mass: float = 0.0

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def to_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "lower": self.lower,
            "upper": self.upper,
            "alpha": self.alpha,
            "quantile_used": self.quantile_used,
            "replicates_used": self.replicates_used,
            "replicates_dropped": self.replicates_dropped,
            "tail_mass": self.tail_mass,
        }


def suggest_t2(fit: SurvivalFit, threshold: float = 0.05) -> float:
    """Largest observed time at which the Kaplan-Meier estimate is still ``>= threshold``."""
    if not 0 < threshold <= 1:
        raise ValueError("threshold must lie in (0, 1]")
    s = np.asarray(fit.km.eval(fit.times))
    ok = fit.times[s >= threshold]
    return float(ok[-1]) if ok.size else 0.0


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")


def _quantile_or_raise(dist: BootstrapDistribution, alpha: float) -> float:
    if dist.B_used == 0:
        raise BootstrapDegenerateError("bootstrap degenerate: every replicate was dropped")
    return dist.quantile(alpha)


def mrl_band(
    sample: ObservedSample,
    t1: float,
    t2: float,
    alpha: float,
    plan: ResamplePlan,
    fit: SurvivalFit | None = None,
) -> ConfidenceBand:
    """Simultaneous ``(1 - alpha)`` band for the mean residual lifetime on ``[t1, t2]``.

    Replicates whose Kaplan-Meier estimate is zero at ``t2`` are dropped and
    counted. The lower limit is clipped at zero.
    """
    _check_alpha(alpha)
    if not 0 <= t1 <= t2:
        raise ValueError("need 0 <= t1 <= t2")
    fit = km_fit(sample) if fit is None else fit
    if fit.km.eval(t2) <= 0:
        raise SupportError("t2 exceeds estimator support")
    dist = run_replicates(sample, plan, lambda b: sup_statistic_mrl(fit, b, t1, t2), kind="mrl_sup")
    q = _quantile_or_raise(dist, alpha)
    half = q / math.sqrt(fit.n)

    bp = fit.km.breakpoints
    grid = np.unique(np.concatenate(([t1], bp[(bp > t1) & (bp < t2)], [t2])))
    g = mrl_curve(fit)
    center = np.asarray(g(grid), dtype=np.float64)
    center_left = center.copy()
    if grid.size > 1:
        center_left[1:] = g.left(grid[1:])
    lower = center - half
    clipped = bool(np.any(lower < 0))
    return ConfidenceBand(
        kind="mrl",
        grid=grid,
        center=center,
        center_left=center_left,
        lower=np.maximum(lower, 0.0),
        upper=center + half,
        alpha=alpha,
        quantile_used=half,
        half_width=half,
        replicates_used=dist.B_used,
        replicates_dropped=dist.B_dropped,
        lower_clipped=clipped,
        distribution=dist,
    )


def lorenz_sup_distance(a, b) -> float:
    """``sup_p |a(p) - b(p)|`` for two Lorenz curves, exact over the union of their nodes."""
    nodes = np.union1d(a.nodes, b.nodes)
    return float(np.max(np.abs(np.asarray(a.curve(nodes)) - np.asarray(b.curve(nodes)))))


def lorenz_band(
    sample: ObservedSample,
    alpha: float,
    plan: ResamplePlan,
    p_grid_resolution: int = 101,
    fit: SurvivalFit | None = None,
) -> ConfidenceBand:
    """Simultaneous ``(1 - alpha)`` band for the Lorenz curve on ``[0, 1]``, clipped to ``[0, 1]``."""
    _check_alpha(alpha)
    if p_grid_resolution < 2:
        raise ValueError("p_grid_resolution must be at least 2")
    fit = km_fit(sample) if fit is None else fit
    curve = lorenz(fit)
    dist = run_replicates(
        sample, plan, lambda b: math.sqrt(fit.n) * lorenz_sup_distance(lorenz(b, warn=False), curve),
        kind="lorenz_sup",
    )
    q = _quantile_or_raise(dist, alpha)
    half = q / math.sqrt(fit.n)
    grid = np.linspace(0.0, 1.0, int(p_grid_resolution))
    center = np.asarray(curve(grid), dtype=np.float64)
    lower, upper = center - half, center + half
    return ConfidenceBand(
        kind="lorenz",
        grid=grid,
        center=center,
        center_left=center.copy(),
        lower=np.clip(lower, 0.0, 1.0),
        upper=np.clip(upper, 0.0, 1.0),
        alpha=alpha,
        quantile_used=half,
        half_width=half,
        replicates_used=dist.B_used,
        replicates_dropped=dist.B_dropped,
        lower_clipped=bool(np.any(lower < 0)),
        upper_clipped=bool(np.any(upper > 1)),
        tail_mass=curve.tail_mass,
        distribution=dist,
    )


def gini_interval(
    sample: ObservedSample, alpha: float, plan: ResamplePlan, fit: SurvivalFit | None = None
) -> ConfidenceInterval:
    """``(1 - alpha)`` interval ``G_n +/- q / sqrt(n)`` with ``q`` from ``sqrt(n) |G*_n - G_n|``."""
    _check_alpha(alpha)
    fit = km_fit(sample) if fit is None else fit
    curve = lorenz(fit)
    estimate = float(1.0 - 2.0 * curve.curve.integral())
    root_n = math.sqrt(fit.n)
    dist = run_replicates(
        sample, plan, lambda b: root_n * abs(gini(b, warn=False) - estimate), kind="gini_abs"
    )
    q = _quantile_or_raise(dist, alpha)
    half = q / root_n
    return ConfidenceInterval(
        estimate=estimate,
        lower=max(estimate - half, 0.0),
        upper=min(estimate + half, 1.0),
        alpha=alpha,
        quantile_used=half,
        replicates_used=dist.B_used,
        replicates_dropped=dist.B_dropped,
        tail_mass=curve.tail_mass,
    )
