"""Plug-in functionals of a Kaplan-Meier fit: mean residual life, mean, Lorenz curve, Gini index.

When the largest observation is censored the Kaplan-Meier estimate does not
reach zero. The mean, Lorenz curve and Gini index then put the leftover mass
``S_n(T_n)`` as an atom at the largest observed time ``T_n``; a
:class:`TailMassWarning` is emitted unless ``warn=False``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .covariance import SupportError
from .estimators import SurvivalFit
from .stepfn import PiecewiseLinear, antiderivative

__all__ = [
    "TailMassWarning",
    "MrlCurve",
    "LorenzCurve",
    "mrl",
    "mrl_curve",
    "mean",
    "lorenz",
    "gini",
    "completed_masses",
]


class TailMassWarning(UserWarning):
    """Residual Kaplan-Meier mass was placed as an atom at the largest time."""


@dataclass(frozen=True, eq=False)
class MrlCurve:
    """``t -> g_n(t) = int_t^T S_n(u) du / S_n(t)`` with ``T`` the largest observed time.

    Between event times ``S_n`` is constant and the numerator decreases at rate
    ``S_n``, so the curve has slope -1 there and jumps up at event times.
    """

    fit: SurvivalFit
    area: PiecewiseLinear

    @property
    def t_max(self) -> float:
        """``sup{t : S_n(t) > 0}``; infinite when the estimate never reaches zero."""
        return self.fit.largest_time if self.fit.km.final_value <= 0 else float("inf")

    def _tail(self, t: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.maximum(self.area.node_values[-1] - np.asarray(self.area(t)), 0.0)

    def __call__(self, t: ArrayLike) -> float | NDArray[np.float64]:
        t_arr = np.asarray(t, dtype=np.float64)
        s = np.asarray(self.fit.km.eval(t_arr))
        if np.any(s <= 0):
            raise SupportError("MRL undefined beyond support")
        out = self._tail(t_arr) / s
        return float(out) if out.ndim == 0 else out

    def left(self, t: ArrayLike) -> float | NDArray[np.float64]:
        """Left limit ``g_n(t-)`` for ``t > 0``."""
        t_arr = np.asarray(t, dtype=np.float64)
        s = np.asarray(self.fit.km.eval_left(t_arr))
        if np.any(s <= 0):
            raise SupportError("MRL undefined beyond support")
        out = self._tail(t_arr) / s
        return float(out) if out.ndim == 0 else out


def mrl_curve(fit: SurvivalFit) -> MrlCurve:
    return MrlCurve(fit, antiderivative(fit.km, fit.largest_time))


def mrl(fit: SurvivalFit, t: ArrayLike) -> float | NDArray[np.float64]:
    """Plug-in mean residual lifetime at `t`; requires ``S_n(t) > 0``."""
    return mrl_curve(fit)(t)


def completed_masses(fit: SurvivalFit, warn: bool = True) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    """Support points and point masses of ``1 - S_n`` after tail completion.

    Returns
    -------
    points, masses : ndarray
        Increasing support points and their masses, summing to one.
    tail_mass : float
        Mass moved to the largest observed time (0 if none).
    """
    km = fit.km
    points = km.breakpoints
    masses = -km.jumps
    tail = km.final_value
    if tail > 0:
        if warn:
            warnings.warn(
                f"largest observation is censored; residual mass {tail:.6g} placed at "
                f"t={fit.largest_time:.6g}",
                TailMassWarning,
                stacklevel=3,
            )
        if points.size and points[-1] == fit.largest_time:
            masses = masses.copy()
            masses[-1] += tail
        else:
            points = np.append(points, fit.largest_time)
            masses = np.append(masses, tail)
    return points, masses, float(tail)


def mean(fit: SurvivalFit, warn: bool = True) -> float:
    """Kaplan-Meier mean ``int_0^T S_n(u) du``, equal to ``sum s * dF_n(s)`` after completion."""
    if warn and fit.km.final_value > 0:
        completed_masses(fit, warn=True)
    return float(mrl(fit, 0.0))


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    """Plug-in Lorenz curve ``p -> (1/mu) int_0^p F_n^{-1}(t) dt`` on ``[0, 1]``.

    Attributes
    ----------
    mean : float
        ``mu_n`` of the completed distribution.
    curve : PiecewiseLinear
        Nodes at the cumulative masses; slopes are the support points over ``mu_n``.
    tail_mass : float
        Mass moved to the largest observed time.
    """

    mean: float
    curve: PiecewiseLinear
    tail_mass: float = 0.0

    def __call__(self, p: ArrayLike) -> float | NDArray[np.float64]:
        p_arr = np.asarray(p, dtype=np.float64)
        if np.any((p_arr < 0) | (p_arr > 1)):
            raise ValueError("p must lie in [0, 1]")
        return self.curve(p)

    @property
    def nodes(self) -> NDArray[np.float64]:
        return self.curve.breakpoints


def lorenz(fit: SurvivalFit, warn: bool = True) -> LorenzCurve:
    points, masses, tail = completed_masses(fit, warn=warn)
    keep = masses > 0
    points, masses = points[keep], masses[keep]
    cum_p = np.cumsum(masses)
    cum_x = np.cumsum(points * masses)
    mu = float(cum_x[-1])
    if not mu > 0:
        raise ValueError("Lorenz curve needs a positive mean")
    inner_p, inner_l = cum_p[:-1], cum_x[:-1] / mu
    # round-off guard: interior nodes must stay strictly inside (0, 1) and increasing
    keep = (inner_p < 1.0) & (np.diff(inner_p, prepend=0.0) > 0)
    p_nodes = np.concatenate(([0.0], inner_p[keep], [1.0]))
    l_nodes = np.concatenate(([0.0], inner_l[keep], [1.0]))
    return LorenzCurve(mu, PiecewiseLinear(p_nodes, l_nodes), tail)


def gini(fit: SurvivalFit, warn: bool = True) -> float:
    """``1 - 2 int_0^1 L_n(u) du`` from the exact piecewise-linear Lorenz curve."""
    return float(1.0 - 2.0 * lorenz(fit, warn=warn).curve.integral())
