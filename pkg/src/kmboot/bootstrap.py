"""Efron's bootstrap for right-censored data.

Each replicate draws ``n`` indices uniformly with replacement from the original
``(time, status)`` pairs and refits every estimator on the resample. Replicate
``b`` uses its own random stream derived from ``(seed, stream_id, b)``, so
results do not depend on execution order or on the number of worker threads
(``KMBOOT_THREADS``).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .covariance import CovarianceSurface, SupportError
from .estimators import ObservedSample, SurvivalFit, km_fit
from .functionals import mrl_curve

__all__ = [
    "ResamplePlan",
    "BootstrapDistribution",
    "resample",
    "resample_indices",
    "bootstrap_fit",
    "gamma_star",
    "sup_statistic_mrl",
    "quantile",
    "run_replicates",
    "thread_count",
]

StatisticKind = Literal["mrl_sup", "lorenz_sup", "gini_abs", "custom"]


@dataclass(frozen=True)
class ResamplePlan:
    """Seed and size of a bootstrap run.

    Parameters
    ----------
    seed : int
        Non-negative 64-bit seed.
    B : int
        Number of replicates.
    stream_id : int
        Separates independent runs sharing a seed.
    """

    seed: int
    B: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be a non-negative 64-bit integer")
        if int(self.B) < 1:
            raise ValueError("B must be positive")
        if int(self.stream_id) < 0:
            raise ValueError("stream_id must be non-negative")

    def rng(self, replicate_index: int) -> np.random.Generator:
        if not 0 <= replicate_index < self.B:
            raise IndexError(f"replicate_index {replicate_index} outside [0, {self.B})")
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id), int(replicate_index)))
        return np.random.Generator(np.random.PCG64(ss))


def resample_indices(n: int, plan: ResamplePlan, replicate_index: int) -> NDArray[np.intp]:
    return plan.rng(replicate_index).integers(0, n, size=n)


def resample(sample: ObservedSample, plan: ResamplePlan, replicate_index: int) -> ObservedSample:
    """Draw ``n`` records with replacement; deterministic in ``(plan, replicate_index)``."""
    return sample.take(resample_indices(sample.n, plan, replicate_index))


def bootstrap_fit(sample: ObservedSample, plan: ResamplePlan, replicate_index: int) -> SurvivalFit:
    """Refit every estimator on replicate ``replicate_index``."""
    return km_fit(resample(sample, plan, replicate_index))


def gamma_star(
    sample: ObservedSample, plan: ResamplePlan, replicate_index: int, u: ArrayLike, v: ArrayLike
) -> float | NDArray[np.float64]:
    """Covariance-surface estimate computed on a bootstrap refit."""
    return CovarianceSurface.from_fit(bootstrap_fit(sample, plan, replicate_index))(u, v)


def sup_statistic_mrl(original: SurvivalFit, boot: SurvivalFit, t1: float, t2: float) -> float:
    """``sqrt(n) * sup_{t in [t1, t2]} |g*_n(t) - g_n(t)|``, computed exactly.

    Both curves are piecewise linear between the union of their breakpoints, so
    the supremum is attained at a segment start or at the left limit of a
    segment end.
    """
    if not 0 <= t1 <= t2:
        raise ValueError("need 0 <= t1 <= t2")
    if original.km.eval(t2) <= 0 or boot.km.eval(t2) <= 0:
        raise SupportError("band undefined: estimator support exceeded")
    g_hat, g_star = mrl_curve(original), mrl_curve(boot)
    cands = np.concatenate(
        (
            original.km.breakpoints,
            boot.km.breakpoints,
            [original.largest_time, boot.largest_time, t2],
        )
    )
    pts = np.unique(np.concatenate(([t1], cands[(cands > t1) & (cands <= t2)])))
    diff = np.abs(np.asarray(g_star(pts)) - np.asarray(g_hat(pts)))
    sup = float(np.max(diff))
    if pts.size > 1:
        right_ends = pts[1:]
        diff_left = np.abs(np.asarray(g_star.left(right_ends)) - np.asarray(g_hat.left(right_ends)))
        sup = max(sup, float(np.max(diff_left)))
    return math.sqrt(original.n) * sup


@dataclass(frozen=True, eq=False)
class BootstrapDistribution:
    """Replicate statistics of one bootstrap run.

    ``statistics`` holds the values of the replicates that produced a defined
    statistic; ``dropped`` lists the indices of those that did not.
    """

    statistics: NDArray[np.float64]
    kind: StatisticKind
    plan: ResamplePlan
    dropped: tuple[int, ...] = field(default=())

    @property
    def B_used(self) -> int:
        return int(self.statistics.size)

    @property
    def B_dropped(self) -> int:
        return len(self.dropped)

    def quantile(self, alpha: float) -> float:
        return quantile(self, alpha)


def quantile(dist: BootstrapDistribution | ArrayLike, alpha: float) -> float:
    """Upper empirical ``(1 - alpha)``-quantile: the ``ceil(B (1 - alpha))``-th order statistic."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    values = dist.statistics if isinstance(dist, BootstrapDistribution) else np.asarray(dist, dtype=np.float64)
    values = np.sort(np.asarray(values, dtype=np.float64).ravel())
    B = values.size
    if B == 0:
        raise ValueError("no replicate statistics")
    # 1e-9 absorbs representation error in B * (1 - alpha), e.g. 500 * 0.95
    k = min(max(math.ceil(B * (1.0 - alpha) - 1e-9), 1), B)
    return float(values[k - 1])


def thread_count() -> int:
    """Worker threads for replicate execution, from ``KMBOOT_THREADS`` (default 1)."""
    raw = os.environ.get("KMBOOT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"KMBOOT_THREADS must be an integer, got {raw!r}") from None
    return max(value, 1)


def run_replicates(
    sample: ObservedSample,
    plan: ResamplePlan,
    statistic: Callable[[SurvivalFit], float],
    kind: StatisticKind = "custom",
    threads: int | None = None,
) -> BootstrapDistribution:
    """Evaluate ``statistic(bootstrap_fit(...))`` for every replicate.

    A replicate whose statistic raises :class:`SupportError` is dropped and
    recorded. Output order follows the replicate index regardless of threading.
    """
    threads = thread_count() if threads is None else max(int(threads), 1)

    def one(b: int) -> float | None:
        try:
            return float(statistic(bootstrap_fit(sample, plan, b)))
        except SupportError:
            return None

    if threads == 1:
        results = [one(b) for b in range(plan.B)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(plan.B)))
    dropped = tuple(b for b, r in enumerate(results) if r is None)
    stats = np.array([r for r in results if r is not None], dtype=np.float64)
    return BootstrapDistribution(stats, kind, plan, dropped)
