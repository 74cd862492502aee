"""Kaplan-Meier, Nelson-Aalen and censoring Kaplan-Meier fits from right-censored data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .stepfn import StepFunction

__all__ = [
    "ObservedSample",
    "SurvivalFit",
    "km_fit",
    "resolve_ties",
    "largest_time",
    "has_ties",
]


@dataclass(frozen=True, eq=False)
class ObservedSample:
    """Right-censored observations ``(X_i, delta_i)``.

    Parameters
    ----------
    time : array_like
        Observed times ``min(T_i, C_i)``; strictly positive.
    event : array_like of bool
        True where the event was observed, False where censored.
    """

    time: NDArray[np.float64]
    event: NDArray[np.bool_]

    def __post_init__(self) -> None:
        time = np.asarray(self.time, dtype=np.float64).ravel()
        event = np.asarray(self.event).ravel()
        if event.dtype != np.bool_:
            if not np.all(np.isin(event, (0, 1))):
                raise ValueError("event indicators must be 0/1 or boolean")
            event = event.astype(bool)
        if time.size == 0:
            raise ValueError("empty sample")
        if time.shape != event.shape:
            raise ValueError("time and event must have the same length")
        if not np.all(np.isfinite(time)):
            raise ValueError("times must be finite")
        if np.any(time <= 0):
            raise ValueError("times must be strictly positive")
        time.setflags(write=False)
        event.setflags(write=False)
        object.__setattr__(self, "time", time)
        object.__setattr__(self, "event", event)

    @classmethod
    def from_records(cls, records) -> ObservedSample:
        """Build from ``(time, status)`` pairs; status is truthy for an event."""
        records = list(records)
        if not records:
            raise ValueError("empty sample")
        t, s = zip(*records)
        return cls(np.array(t, dtype=np.float64), np.array([bool(x) for x in s]))

    @property
    def n(self) -> int:
        return int(self.time.size)

    def __len__(self) -> int:
        return self.n

    @property
    def records(self) -> list[tuple[float, bool]]:
        return list(zip(self.time.tolist(), self.event.tolist()))

    def take(self, indices: ArrayLike) -> ObservedSample:
        idx = np.asarray(indices, dtype=np.intp)
        return ObservedSample(self.time[idx], self.event[idx])

    def scaled(self, c: float) -> ObservedSample:
        return ObservedSample(self.time * c, self.event)


@dataclass(frozen=True, eq=False)
class SurvivalFit:
    """Jointly fitted step functions from one sample.

    Attributes
    ----------
    km : StepFunction
        Kaplan-Meier survival estimate, jumps at event times.
    na : StepFunction
        Nelson-Aalen cumulative hazard.
    censor_km : StepFunction
        Product-limit estimate of the censoring survival function.
    emp_surv : StepFunction
        Empirical survival function of the observed times, ``#{X_i > t} / n``.
    at_risk : StepFunction
        ``#{X_i > t}``; the at-risk count ``Y(u) = #{X_i >= u}`` is its left limit,
        see :meth:`risk_set`.
    largest_time : float
        Largest observed time, event or censored.
    n : int
    """

    km: StepFunction
    na: StepFunction
    censor_km: StepFunction
    emp_surv: StepFunction
    at_risk: StepFunction
    largest_time: float
    n: int
    # per distinct observed time, used by downstream plug-ins
    times: NDArray[np.float64]
    n_events: NDArray[np.int64]
    n_censored: NDArray[np.int64]
    n_at_risk: NDArray[np.int64]

    def risk_set(self, u: ArrayLike) -> float | NDArray[np.float64]:
        """``Y(u) = #{i : X_i >= u}``."""
        return self.at_risk.eval_left(u)

    @property
    def event_times(self) -> NDArray[np.float64]:
        return self.km.breakpoints


def has_ties(sample: ObservedSample) -> bool:
    return bool(np.unique(sample.time).size < sample.n)


def resolve_ties(sample: ObservedSample) -> ObservedSample:
    """Stable sort by time, events before censorings at equal times."""
    order = np.lexsort((~sample.event, sample.time))
    return sample.take(order)


def km_fit(sample: ObservedSample) -> SurvivalFit:
    """Fit all product-limit quantities in one sorted pass.

    Tied events at a time ``u`` enter as a single factor ``1 - d/Y(u)``.
    Censorings tied with events are treated as occurring just after them, so the
    censoring estimate uses the at-risk count ``Y(u) - d`` at such times.
    """
    ordered = resolve_ties(sample)
    n = ordered.n
    times, inverse = np.unique(ordered.time, return_inverse=True)
    d = np.bincount(inverse, weights=ordered.event, minlength=times.size).astype(np.int64)
    total = np.bincount(inverse, minlength=times.size).astype(np.int64)
    c = total - d
    y = n - np.concatenate(([0], np.cumsum(total)[:-1]))

    km_factors = 1.0 - d / y
    km_vals = np.cumprod(km_factors)
    na_vals = np.cumsum(d / y)
    y_cens = y - d
    with np.errstate(divide="ignore", invalid="ignore"):
        g_factors = np.where(c > 0, 1.0 - c / np.where(y_cens > 0, y_cens, 1), 1.0)
    g_vals = np.cumprod(g_factors)
    beyond = y - total  # #{X > u}

    has_event = d > 0
    has_cens = c > 0
    km = StepFunction(times[has_event], km_vals[has_event], 1.0)
    na = StepFunction(times[has_event], na_vals[has_event], 0.0)
    censor_km = StepFunction(times[has_cens], g_vals[has_cens], 1.0)
    emp_surv = StepFunction(times, beyond / n, 1.0)
    at_risk = StepFunction(times, beyond.astype(np.float64), float(n))
    return SurvivalFit(
        km=km,
        na=na,
        censor_km=censor_km,
        emp_surv=emp_surv,
        at_risk=at_risk,
        largest_time=float(times[-1]),
        n=n,
        times=times,
        n_events=d,
        n_censored=c,
        n_at_risk=y,
    )


def largest_time(fit: SurvivalFit) -> float:
    return fit.largest_time
