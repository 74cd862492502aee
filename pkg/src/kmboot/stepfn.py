"""Right-continuous step functions and their piecewise-linear antiderivatives.

Every estimator in this package is a :class:`StepFunction`: a value before the
first breakpoint and one value per half-open segment ``[b_k, b_{k+1})``.
Breakpoints are compared by exact float equality; no tolerance merging.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = [
    "StepFunction",
    "PiecewiseLinear",
    "stieltjes_integral",
    "lebesgue_integral",
    "antiderivative",
    "generalized_inverse",
]

Integrand = Union["StepFunction", Callable[[NDArray[np.float64]], NDArray[np.float64]]]


def _scalar_or_array(out: NDArray[np.float64], like) -> float | NDArray[np.float64]:
    if np.ndim(like) == 0:
        return float(out.reshape(()))
    return out


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Right-continuous piecewise-constant function on ``[0, inf)``.

    Parameters
    ----------
    breakpoints : array_like
        Strictly increasing, non-negative jump locations.
    values : array_like
        ``values[k]`` is the function value on ``[breakpoints[k], breakpoints[k+1])``.
    initial_value : float
        Value on ``[0, breakpoints[0])``.
    """

    breakpoints: NDArray[np.float64]
    values: NDArray[np.float64]
    initial_value: float = 0.0

    def __post_init__(self) -> None:
        bp = np.asarray(self.breakpoints, dtype=np.float64).ravel()
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        if bp.shape != vals.shape:
            raise ValueError("breakpoints and values must have the same length")
        if bp.size and bp[0] < 0:
            raise ValueError("breakpoints must be non-negative")
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        bp.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "initial_value", float(self.initial_value))

    @classmethod
    def constant(cls, c: float) -> StepFunction:
        return cls(np.empty(0), np.empty(0), c)

    @property
    def jumps(self) -> NDArray[np.float64]:
        """Jump sizes ``f(b_k) - f(b_k-)`` at each breakpoint."""
        return np.diff(self.values, prepend=self.initial_value)

    @property
    def final_value(self) -> float:
        return float(self.values[-1]) if self.values.size else self.initial_value

    def _lookup(self, t: ArrayLike, side: str) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=np.float64)
        idx = np.searchsorted(self.breakpoints, t, side=side) - 1
        table = np.concatenate(([self.initial_value], self.values))
        return table[idx + 1]

    def __call__(self, t: ArrayLike) -> float | NDArray[np.float64]:
        return self.eval(t)

    def eval(self, t: ArrayLike) -> float | NDArray[np.float64]:
        """Right-continuous value ``f(t)``."""
        if np.any(np.asarray(t) < 0):
            raise ValueError("t must be non-negative")
        return _scalar_or_array(self._lookup(t, "right"), t)

    def eval_left(self, t: ArrayLike) -> float | NDArray[np.float64]:
        """Left limit ``f(t-)``; only defined for ``t > 0``."""
        if np.any(np.asarray(t) <= 0):
            raise ValueError("left limit is only defined for t > 0")
        return _scalar_or_array(self._lookup(t, "left"), t)

    def map(self, func: Callable[[NDArray[np.float64]], NDArray[np.float64]]) -> StepFunction:
        """Apply ``func`` to every value, keeping the breakpoints."""
        return StepFunction(
            self.breakpoints, func(self.values), float(func(np.float64(self.initial_value)))
        )

    def to_records(self) -> list[dict[str, float]]:
        """Tidy rows ``(t, value, value_left)``, one per breakpoint."""
        left = np.concatenate(([self.initial_value], self.values[:-1]))
        return [
            {"t": float(t), "value": float(v), "value_left": float(vl)}
            for t, v, vl in zip(self.breakpoints, self.values, left)
        ]

    @classmethod
    def from_records(cls, rows: list[dict[str, float]], initial_value: float | None = None) -> StepFunction:
        """Inverse of :meth:`to_records`.

        The initial value is read from the first row's ``value_left`` unless given.
        """
        if not rows:
            return cls.constant(0.0 if initial_value is None else initial_value)
        if initial_value is None:
            initial_value = float(rows[0]["value_left"])
        return cls(
            np.array([float(r["t"]) for r in rows]),
            np.array([float(r["value"]) for r in rows]),
            initial_value,
        )

    def __repr__(self) -> str:
        return (
            f"StepFunction(breakpoints={self.breakpoints!r}, values={self.values!r}, "
            f"initial_value={self.initial_value!r})"
        )


@dataclass(frozen=True, eq=False)
class PiecewiseLinear:
    """Continuous piecewise-linear interpolant through ``(breakpoints, node_values)``.

    Outside the node range the function is held constant at the end nodes.
    """

    breakpoints: NDArray[np.float64]
    node_values: NDArray[np.float64]

    def __post_init__(self) -> None:
        bp = np.asarray(self.breakpoints, dtype=np.float64).ravel()
        nv = np.asarray(self.node_values, dtype=np.float64).ravel()
        if bp.shape != nv.shape or bp.size == 0:
            raise ValueError("need matching, non-empty breakpoints and node_values")
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        bp.setflags(write=False)
        nv.setflags(write=False)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "node_values", nv)

    @property
    def slopes(self) -> NDArray[np.float64]:
        return np.diff(self.node_values) / np.diff(self.breakpoints)

    def __call__(self, x: ArrayLike) -> float | NDArray[np.float64]:
        out = np.interp(np.asarray(x, dtype=np.float64), self.breakpoints, self.node_values)
        return _scalar_or_array(np.asarray(out), x)

    def integral(self) -> float:
        """Exact integral over the node range (trapezoid rule is exact here)."""
        widths = np.diff(self.breakpoints)
        return float(np.sum(widths * (self.node_values[1:] + self.node_values[:-1]) / 2.0))


def _integrand_at(a: Integrand, t: NDArray[np.float64]) -> NDArray[np.float64]:
    if isinstance(a, StepFunction):
        return np.asarray(a.eval(t), dtype=np.float64)
    return np.asarray(a(t), dtype=np.float64)


def stieltjes_integral(a: Integrand, b: StepFunction, s: float) -> float:
    """Jump-process integral ``int_0^s a db = sum a(t) * Delta b(t)``.

    The sum runs over the discontinuities of `b` in ``(0, s]`` and `a` is
    evaluated *at* each jump. To integrate a predictable (left-continuous)
    version, pass e.g. ``f.eval_left`` as `a`.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    bp = b.breakpoints
    mask = (bp > 0) & (bp <= s)
    if not np.any(mask):
        return 0.0
    t = bp[mask]
    return float(np.sum(_integrand_at(a, t) * b.jumps[mask]))


def antiderivative(f: StepFunction, upper: float) -> PiecewiseLinear:
    """``x -> int_0^x f(u) du`` on ``[0, upper]`` as an exact piecewise-linear curve."""
    if upper < 0:
        raise ValueError("upper must be non-negative")
    inner = f.breakpoints[(f.breakpoints > 0) & (f.breakpoints < upper)]
    nodes = np.concatenate(([0.0], inner, [upper])) if upper > 0 else np.array([0.0])
    seg_values = np.asarray(f.eval(nodes[:-1]), dtype=np.float64)
    areas = seg_values * np.diff(nodes)
    return PiecewiseLinear(nodes, np.concatenate(([0.0], np.cumsum(areas))))


def lebesgue_integral(f: StepFunction, lo: float, hi: float) -> float:
    """Exact area ``int_lo^hi f(u) du`` of a step function."""
    if lo > hi:
        raise ValueError("lo must not exceed hi")
    if lo < 0:
        raise ValueError("integration limits must be non-negative")
    if lo == hi:
        return 0.0
    inner = f.breakpoints[(f.breakpoints > lo) & (f.breakpoints < hi)]
    nodes = np.concatenate(([lo], inner, [hi]))
    return float(np.sum(np.asarray(f.eval(nodes[:-1])) * np.diff(nodes)))


def generalized_inverse(F: StepFunction, p: ArrayLike) -> float | NDArray[np.float64]:
    """Left-continuous inverse ``inf{u >= 0 : F(u) >= p}`` of a non-decreasing step CDF."""
    p_arr = np.asarray(p, dtype=np.float64)
    if np.any(p_arr <= 0):
        raise ValueError("p must be positive")
    top = max(F.initial_value, F.final_value)
    if np.any(p_arr > top):
        raise ValueError(f"mass deficit: distribution only reaches {top!r}")
    idx = np.searchsorted(F.values, p_arr, side="left")
    bp = F.breakpoints
    out = np.where(
        p_arr <= F.initial_value, 0.0, bp[np.minimum(idx, max(bp.size - 1, 0))] if bp.size else 0.0
    )
    return _scalar_or_array(np.asarray(out, dtype=np.float64), p)
