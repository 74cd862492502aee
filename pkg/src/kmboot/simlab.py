"""Monte Carlo laboratory: censored-data models with known truth and reproducible experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Literal, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate, stats

from .bands import gini_interval, lorenz_band, lorenz_sup_distance, mrl_band
from .bootstrap import ResamplePlan, bootstrap_fit
from .covariance import CovarianceSurface
from .estimators import ObservedSample, SurvivalFit, km_fit
from .functionals import lorenz
from .stepfn import StepFunction, stieltjes_integral

__all__ = [
    "Law",
    "DataModel",
    "ExperimentReport",
    "generate",
    "coverage_experiment",
    "gamma_consistency_sweep",
    "gill_bound_check",
    "jump_inequality_check",
    "integration_by_parts_check",
    "derive_seed",
]

LawName = Literal["uniform", "exponential", "weibull", "point_mass"]
QUAD_TOL = 1e-8


@dataclass(frozen=True)
class Law:
    """A lifetime distribution on ``(0, inf)``.

    ``uniform`` takes ``(a, b)``, ``exponential`` takes ``(rate,)``, ``weibull``
    takes ``(shape, scale)`` and ``point_mass`` takes ``(c,)``.
    """

    name: LawName
    params: tuple[float, ...]

    def __post_init__(self) -> None:
        p = tuple(float(x) for x in self.params)
        object.__setattr__(self, "params", p)
        if self.name == "uniform":
            if len(p) != 2 or not 0 <= p[0] < p[1]:
                raise ValueError("uniform(a, b) needs 0 <= a < b")
        elif self.name == "exponential":
            if len(p) != 1 or not p[0] > 0:
                raise ValueError("exponential(rate) needs rate > 0")
        elif self.name == "weibull":
            if len(p) != 2 or not (p[0] > 0 and p[1] > 0):
                raise ValueError("weibull(shape, scale) needs positive parameters")
        elif self.name == "point_mass":
            if len(p) != 1 or not p[0] > 0:
                raise ValueError("point_mass(c) needs c > 0")
        else:
            raise ValueError(f"unknown law {self.name!r}")

    @classmethod
    def uniform(cls, a: float, b: float) -> Law:
        return cls("uniform", (a, b))

    @classmethod
    def exponential(cls, rate: float) -> Law:
        return cls("exponential", (rate,))

    @classmethod
    def weibull(cls, shape: float, scale: float = 1.0) -> Law:
        return cls("weibull", (shape, scale))

    @classmethod
    def point_mass(cls, c: float) -> Law:
        return cls("point_mass", (c,))

    @property
    def continuous(self) -> bool:
        return self.name != "point_mass"

    @property
    def dist(self):
        """Frozen scipy distribution (continuous laws only)."""
        p = self.params
        if self.name == "uniform":
            return stats.uniform(loc=p[0], scale=p[1] - p[0])
        if self.name == "exponential":
            return stats.expon(scale=1.0 / p[0])
        if self.name == "weibull":
            return stats.weibull_min(p[0], scale=p[1])
        raise ValueError("point_mass has no density")

    @property
    def support_end(self) -> float:
        if self.name == "uniform":
            return self.params[1]
        if self.name == "point_mass":
            return self.params[0]
        return math.inf

    def sample(self, rng: np.random.Generator, n: int) -> NDArray[np.float64]:
        p = self.params
        if self.name == "uniform":
            return rng.uniform(p[0], p[1], size=n)
        if self.name == "exponential":
            return rng.exponential(1.0 / p[0], size=n)
        if self.name == "weibull":
            return p[1] * rng.weibull(p[0], size=n)
        return np.full(n, p[0])

    def sf(self, t: ArrayLike) -> NDArray[np.float64]:
        t = np.asarray(t, dtype=np.float64)
        if self.name == "point_mass":
            return (t < self.params[0]).astype(np.float64)
        return np.asarray(self.dist.sf(t))

    def sf_left(self, t: ArrayLike) -> NDArray[np.float64]:
        """``P(X >= t)``."""
        t = np.asarray(t, dtype=np.float64)
        if self.name == "point_mass":
            return (t <= self.params[0]).astype(np.float64)
        return self.sf(t)

    def pdf(self, t: ArrayLike) -> NDArray[np.float64]:
        return np.asarray(self.dist.pdf(t))

    def ppf(self, p: ArrayLike) -> NDArray[np.float64]:
        if self.name == "point_mass":
            return np.full_like(np.asarray(p, dtype=np.float64), self.params[0])
        return np.asarray(self.dist.ppf(p))

    @property
    def mean(self) -> float:
        if self.name == "point_mass":
            return self.params[0]
        return float(self.dist.mean())

    def to_dict(self) -> dict:
        return {"name": self.name, "params": list(self.params)}


@dataclass(frozen=True)
class DataModel:
    """Independent survival and censoring laws with closed-form or quadrature truth.

    ``censoring=None`` means no censoring.
    """

    survival: Law
    censoring: Law | None = None

    def _g_left(self, t: ArrayLike) -> NDArray[np.float64]:
        if self.censoring is None:
            return np.ones_like(np.asarray(t, dtype=np.float64))
        return self.censoring.sf_left(t)

    # --- truth -------------------------------------------------------------
    def S(self, t: ArrayLike) -> NDArray[np.float64]:
        return self.survival.sf(t)

    def G(self, t: ArrayLike) -> NDArray[np.float64]:
        if self.censoring is None:
            return np.ones_like(np.asarray(t, dtype=np.float64))
        return self.censoring.sf(t)

    def event_probability(self) -> float:
        """``P(T <= C)``."""
        if not self.survival.continuous:
            return float(self._g_left(self.survival.params[0]))
        if self.censoring is None:
            return 1.0
        lo, hi = self._survival_range()
        val, _ = integrate.quad(
            lambda t: float(self.survival.pdf(t) * self._g_left(t)), lo, hi,
            epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200,
        )
        return float(val)

    def _survival_range(self) -> tuple[float, float]:
        if self.survival.name == "uniform":
            return self.survival.params
        return 0.0, math.inf

    def mrl(self, t: ArrayLike) -> NDArray[np.float64]:
        """True mean residual lifetime ``int_t^inf S / S(t)``."""
        t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
        law = self.survival
        out = np.empty_like(t_arr)
        for i, x in enumerate(t_arr):
            if law.name == "uniform":
                a, b = law.params
                out[i] = (a + b) / 2 - x if x < a else (b - x) / 2
            elif law.name == "exponential":
                out[i] = 1.0 / law.params[0]
            elif law.name == "point_mass":
                out[i] = law.params[0] - x if x < law.params[0] else np.nan
            else:
                num, _ = integrate.quad(lambda u: float(law.sf(u)), x, math.inf, epsabs=QUAD_TOL, epsrel=QUAD_TOL)
                out[i] = num / float(law.sf(x))
        return out if np.ndim(t) else out[0]

    def lorenz(self, p: ArrayLike) -> NDArray[np.float64]:
        """True Lorenz curve ``(1/mu) int_0^p F^{-1}``."""
        p_arr = np.atleast_1d(np.asarray(p, dtype=np.float64))
        law = self.survival
        if law.name == "point_mass":
            out = p_arr.copy()
        elif law.name == "uniform":
            a, b = law.params
            out = (a * p_arr + (b - a) * p_arr**2 / 2) / ((a + b) / 2)
        elif law.name == "exponential":
            # int_0^p -log(1-t)/rate dt = ((1-p) log(1-p) + p)/rate
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(p_arr < 1, (1 - p_arr) * np.log1p(-p_arr) + p_arr, 1.0)
        else:
            mu = law.mean
            out = np.array(
                [integrate.quad(lambda s: float(law.ppf(s)), 0, x, epsabs=QUAD_TOL, epsrel=QUAD_TOL)[0] / mu
                 for x in p_arr]
            )
        return out if np.ndim(p) else out[0]

    def gini(self) -> float:
        law = self.survival
        if law.name == "point_mass":
            return 0.0
        if law.name == "uniform":
            a, b = law.params
            return (b - a) / (3 * (a + b))
        if law.name == "exponential":
            return 0.5
        return 1.0 - 2.0 ** (-1.0 / law.params[0])

    def hazard_over_h(self, u: float) -> float:
        """``alpha(u) / H(u-)`` for a continuous survival law."""
        s = float(self.survival.sf(u))
        g = float(self._g_left(u))
        if s <= 0 or g <= 0:
            return math.inf
        return float(self.survival.pdf(u)) / (s * s * g)

    def sigma2(self, t: ArrayLike) -> NDArray[np.float64]:
        """``int_0^t dA / H_-`` by adaptive quadrature, accumulated over sorted ``t``."""
        t_arr = np.atleast_1d(np.asarray(t, dtype=np.float64))
        if not self.survival.continuous:
            out = np.where(t_arr < self.survival.params[0], 0.0, np.inf)
            return out if np.ndim(t) else out[0]
        order = np.argsort(t_arr)
        out = np.empty_like(t_arr)
        acc, prev = 0.0, 0.0
        for i in order:
            x = t_arr[i]
            if not math.isfinite(acc) or float(self.survival.sf(x)) <= 0:
                acc = math.inf
            elif x > prev:
                val, _ = integrate.quad(self.hazard_over_h, prev, x, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
                acc += val
            prev = x
            out[i] = acc
        return out if np.ndim(t) else out[0]

    def gamma(self, grid: ArrayLike) -> NDArray[np.float64]:
        """True covariance ``S(u) sigma2(u ^ v) S(v)`` on ``grid x grid``; zero where ``S = 0``."""
        grid = np.asarray(grid, dtype=np.float64).ravel()
        s = self.S(grid)
        sig = self.sigma2(grid)
        with np.errstate(invalid="ignore"):
            sig_min = np.where(grid[:, None] <= grid[None, :], sig[:, None], sig[None, :])
            out = np.outer(s, s) * sig_min
        return np.where(np.outer(s, s) > 0, out, 0.0)

    def condition_integral(self, power: int = 1) -> float:
        """``-int dS / G_-**power``; infinite when the censoring condition fails."""
        if not self.survival.continuous:
            g = float(self._g_left(self.survival.params[0]))
            return math.inf if g <= 0 else 1.0 / g**power
        lo, hi = self._survival_range()

        def f(u: float) -> float:
            g = float(self._g_left(u))
            return math.inf if g <= 0 else float(self.survival.pdf(u)) / g**power

        val, _ = integrate.quad(f, lo, hi, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
        return float(val)

    def to_dict(self) -> dict:
        return {
            "survival": self.survival.to_dict(),
            "censoring": None if self.censoring is None else self.censoring.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> DataModel:
        def law(x):
            return None if x is None else Law(x["name"], tuple(x["params"]))

        return cls(law(d["survival"]), law(d.get("censoring")))


def derive_seed(seed: int, *keys: int) -> int:
    """A 64-bit seed derived from ``seed`` and a path of integer keys."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(lo) | (int(hi) << 32)


def generate(model: DataModel, n: int, seed: int | np.random.Generator) -> ObservedSample:
    """Draw ``n`` censored observations ``(min(T, C), T <= C)``."""
    if n < 1:
        raise ValueError("n must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    t = model.survival.sample(rng, n)
    if model.censoring is None:
        return ObservedSample(t, np.ones(n, dtype=bool))
    c = model.censoring.sample(rng, n)
    # a zero draw has probability zero but would violate positivity
    x = np.maximum(np.minimum(t, c), np.finfo(np.float64).tiny)
    return ObservedSample(x, t <= c)


@dataclass
class ExperimentReport:
    """Outcome record of a Monte Carlo experiment.

    ``summary`` is recomputable from ``outcomes``; ``thresholds`` documents any
    pass/fail rule that was applied.
    """

    scenario: dict[str, Any]
    replications: int
    outcomes: list[dict[str, Any]]
    summary: dict[str, Any]
    seed: int
    thresholds: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "replications": self.replications,
            "seed": self.seed,
            "summary": self.summary,
            "thresholds": self.thresholds,
            "outcomes": self.outcomes,
        }


def _binomial_se(p: float, m: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / m) if m else math.nan


def coverage_experiment(
    model: DataModel,
    n: int,
    B: int,
    alpha: float,
    band_kind: Literal["mrl", "lorenz", "gini"],
    reps: int,
    seed: int,
    t1: float = 0.0,
    t2: float | None = None,
    p_grid_resolution: int = 101,
) -> ExperimentReport:
    """Fraction of repetitions whose band/interval contains the true functional.

    Repetition ``r`` draws its data with seed ``derive_seed(seed, 0, r)`` and
    bootstraps with ``derive_seed(seed, 1, r)``.
    """
    if band_kind == "mrl":
        if t2 is None:
            raise ValueError("mrl coverage needs t2")
        if not model.survival.continuous:
            raise ValueError("true MRL unavailable for this model")
    elif band_kind not in ("lorenz", "gini"):
        raise ValueError(f"unknown band kind {band_kind!r}")
    if model.censoring is not None and band_kind in ("lorenz", "gini") and math.isinf(model.condition_integral(1)):
        raise ValueError("truth unavailable: censoring condition fails")

    outcomes = []
    for r in range(reps):
        sample = generate(model, n, derive_seed(seed, 0, r))
        plan = ResamplePlan(derive_seed(seed, 1, r), B)
        fit = km_fit(sample)
        row: dict[str, Any] = {"rep": r}
        try:
            if band_kind == "mrl":
                band = mrl_band(sample, t1, t2, alpha, plan, fit=fit)
                row.update(covered=band.contains(model.mrl), half_width=band.half_width,
                           dropped=band.replicates_dropped)
            elif band_kind == "lorenz":
                band = lorenz_band(sample, alpha, plan, p_grid_resolution, fit=fit)
                row.update(covered=band.contains(model.lorenz), half_width=band.half_width,
                           dropped=band.replicates_dropped)
            else:
                ci = gini_interval(sample, alpha, plan, fit=fit)
                row.update(covered=ci.contains(model.gini()), half_width=ci.quantile_used,
                           estimate=ci.estimate, dropped=ci.replicates_dropped)
        except (ValueError, RuntimeError) as exc:
            row.update(covered=False, failed=str(exc))
        outcomes.append(row)

    covered = sum(bool(o["covered"]) for o in outcomes)
    cov = covered / reps if reps else math.nan
    return ExperimentReport(
        scenario={"model": model.to_dict(), "n": n, "B": B, "alpha": alpha, "band_kind": band_kind,
                  "t1": t1, "t2": t2},
        replications=reps,
        outcomes=outcomes,
        summary={
            "coverage": cov,
            "coverage_se": _binomial_se(cov, reps),
            "nominal": 1 - alpha,
            "failed": sum("failed" in o for o in outcomes),
            "mean_half_width": float(np.mean([o["half_width"] for o in outcomes if "half_width" in o]))
            if any("half_width" in o for o in outcomes) else math.nan,
        },
        seed=seed,
    )


def _default_grid(model: DataModel, size: int = 201) -> NDArray[np.float64]:
    end = model.survival.support_end
    if math.isinf(end):
        end = float(model.survival.ppf(0.999))
    return np.linspace(0.0, end, size)


def gamma_consistency_sweep(
    model: DataModel,
    n_list: Sequence[int],
    B: int,
    seed: int,
    reps: int = 20,
    grid: ArrayLike | None = None,
) -> ExperimentReport:
    """Grid-sup distances ``|Gamma_n - Gamma|`` and ``|Gamma*_n - Gamma_n|`` as ``n`` grows.

    For each ``n`` and each of ``reps`` data sets, records the grid-sup distance
    of the plug-in surface to the truth, and the median over ``B`` bootstrap
    replicates of the grid-sup distance of the bootstrap surface to the plug-in.
    Summary values are medians over data sets.
    """
    grid = _default_grid(model) if grid is None else np.asarray(grid, dtype=np.float64)
    truth = model.gamma(grid)
    outcomes = []
    per_n = {}
    for i, n in enumerate(n_list):
        hat_d, star_d = [], []
        for r in range(reps):
            sample = generate(model, n, derive_seed(seed, 0, i, r))
            fit = km_fit(sample)
            gh = CovarianceSurface.from_fit(fit).on_grid(grid)
            plan = ResamplePlan(derive_seed(seed, 1, i, r), B)
            boot = [np.max(np.abs(CovarianceSurface.from_fit(bootstrap_fit(sample, plan, b)).on_grid(grid) - gh))
                    for b in range(B)]
            hd, sd = float(np.max(np.abs(gh - truth))), float(np.median(boot))
            hat_d.append(hd)
            star_d.append(sd)
            outcomes.append({"n": int(n), "rep": r, "sup_hat_vs_true": hd, "median_sup_star_vs_hat": sd})
        per_n[int(n)] = {"median_sup_hat_vs_true": float(np.median(hat_d)),
                         "median_sup_star_vs_hat": float(np.median(star_d))}
    ns = [int(n) for n in n_list]
    hat_seq = [per_n[n]["median_sup_hat_vs_true"] for n in ns]
    star_seq = [per_n[n]["median_sup_star_vs_hat"] for n in ns]
    return ExperimentReport(
        scenario={"model": model.to_dict(), "n_list": ns, "B": B, "reps": reps, "grid_size": int(grid.size)},
        replications=reps * len(ns),
        outcomes=outcomes,
        summary={
            "per_n": per_n,
            "hat_vs_true_decreasing": bool(all(b < a for a, b in zip(hat_seq, hat_seq[1:]))),
            "star_vs_hat_decreasing": bool(all(b < a for a, b in zip(star_seq, star_seq[1:]))),
        },
        seed=seed,
    )


def gill_bound_check(sample: ObservedSample, plan: ResamplePlan, beta_list: Sequence[float]) -> ExperimentReport:
    """Monte Carlo check of the bootstrap versions of Gill's two probability bounds.

    For each ``beta`` counts replicates with ``S*_n(t) > S_n(t) / beta`` for some
    ``t <= T*_n`` (bound ``beta``) and with ``H*_n(t-) < beta H_n(t-)`` for some
    ``t <= T*_n`` (bound ``(e / beta) exp(-1 / beta)``). A bound passes when the
    frequency does not exceed it by more than three binomial standard errors.
    """
    betas = [float(b) for b in beta_list]
    if any(not 0 < b < 1 for b in betas):
        raise ValueError("beta values must lie in (0, 1)")
    fit = km_fit(sample)
    n = fit.n
    # exceedance ratios per replicate; each event is monotone in beta
    ratio_s = np.empty(plan.B)
    ratio_h = np.empty(plan.B)
    outcomes = []
    for b in range(plan.B):
        boot = bootstrap_fit(sample, plan, b)
        pts = fit.times[fit.times <= boot.largest_time]
        s_star = np.asarray(boot.km.eval(pts))
        s_hat = np.asarray(fit.km.eval(pts))
        # max_t S*/S_hat over points where S_hat > 0; S_hat = 0 forces S* = 0 here
        pos = s_hat > 0
        if np.any(~pos & (s_star > 0)):
            ratio_s[b] = math.inf
        else:
            ratio_s[b] = max(float(np.max(s_star[pos] / s_hat[pos])) if np.any(pos) else 0.0, 1.0)
        y_star = np.asarray(boot.risk_set(pts))
        y_hat = np.asarray(fit.risk_set(pts))
        ratio_h[b] = float(np.min(y_star / y_hat))
        outcomes.append({"replicate": b, "max_ratio_S": ratio_s[b], "min_ratio_H": ratio_h[b]})
    rel = 1e-12
    per_beta = []
    for beta in betas:
        f1 = float(np.mean(ratio_s > (1.0 + rel) / beta))
        f2 = float(np.mean(ratio_h < beta * (1.0 - rel)))
        b1 = beta
        b2 = min(math.e / beta * math.exp(-1.0 / beta), 1.0)
        tol1 = 3 * _binomial_se(b1, plan.B)
        tol2 = 3 * _binomial_se(b2, plan.B)
        per_beta.append({
            "beta": beta,
            "freq_S": f1, "bound_S": b1, "pass_S": f1 <= b1 + tol1,
            "freq_H": f2, "bound_H": b2, "pass_H": f2 <= b2 + tol2,
        })
    return ExperimentReport(
        scenario={"n": n, "B": plan.B, "seed": plan.seed, "betas": betas},
        replications=plan.B,
        outcomes=outcomes,
        summary={"per_beta": per_beta, "all_pass": all(p["pass_S"] and p["pass_H"] for p in per_beta)},
        seed=plan.seed,
        thresholds={"rule": "frequency <= bound + 3 * sqrt(bound (1 - bound) / B)"},
    )


def _random_jump_pair(rng: np.random.Generator, max_jumps: int = 20) -> tuple[StepFunction, StepFunction]:
    """``h``: non-increasing, non-negative, ``h(0) = 1``; ``Z``: signed jumps, ``Z(0) = 0``."""
    k_h = int(rng.integers(0, max_jumps + 1))
    k_z = int(rng.integers(0, max_jumps + 1))
    t_h = np.unique(rng.uniform(0, 1, k_h))
    t_z = np.unique(rng.uniform(0, 1, k_z))
    if t_h.size and t_z.size and rng.random() < 0.5:
        # share some jump times to exercise simultaneous jumps
        m = int(rng.integers(1, min(t_h.size, t_z.size) + 1))
        t_z = np.unique(np.concatenate((t_z[m:], t_h[:m])))
    h = StepFunction(t_h, np.cumprod(rng.uniform(0, 1, t_h.size)), 1.0)
    z = StepFunction(t_z, np.cumsum(rng.uniform(-1, 1, t_z.size)), 0.0)
    return h, z


def jump_inequality_check(trials: int, seed: int, max_jumps: int = 20) -> ExperimentReport:
    """Check ``sup_{[0,t]} h |Z| <= 2 sup_{[0,t]} |int_0^s h dZ|`` at every jump time ``t``."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    violations = 0
    worst = 0.0
    outcomes = []
    for i in range(trials):
        h, z = _random_jump_pair(rng, max_jumps)
        pts = np.union1d(np.union1d(h.breakpoints, z.breakpoints), [0.0])
        lhs = np.maximum.accumulate(np.asarray(h.eval(pts)) * np.abs(np.asarray(z.eval(pts))))
        u = np.array([stieltjes_integral(h, z, s) for s in pts])
        rhs = 2.0 * np.maximum.accumulate(np.abs(u))
        excess = float(np.max(lhs - rhs))
        bad = bool(np.any(lhs > rhs + 1e-12))
        violations += bad
        worst = max(worst, excess)
        if bad:
            outcomes.append({"trial": i, "excess": excess})
    return ExperimentReport(
        scenario={"trials": trials, "max_jumps": max_jumps},
        replications=trials,
        outcomes=outcomes,
        summary={"violations": violations, "max_excess": worst},
        seed=seed,
        thresholds={"absolute_tolerance": 1e-12},
    )


def integration_by_parts_check(trials: int, seed: int, max_jumps: int = 20) -> ExperimentReport:
    """Check ``int_0^s a db = a(s)b(s) - a(0)b(0) - int_0^s b_- da`` on random jump processes."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        ka, kb = rng.integers(0, max_jumps + 1, size=2)
        ta = np.unique(rng.uniform(0, 1, ka))
        tb = np.unique(rng.uniform(0, 1, kb))
        if ta.size and tb.size and rng.random() < 0.5:
            tb = np.union1d(tb, ta[: rng.integers(1, ta.size + 1)])
        a = StepFunction(ta, rng.normal(size=ta.size), rng.normal())
        b = StepFunction(tb, rng.normal(size=tb.size), rng.normal())
        s = float(rng.uniform(0, 1.2))
        lhs = stieltjes_integral(a, b, s)
        rhs = a.eval(s) * b.eval(s) - a.initial_value * b.initial_value - stieltjes_integral(b.eval_left, a, s)
        worst = max(worst, abs(lhs - rhs))
    return ExperimentReport(
        scenario={"trials": trials, "max_jumps": max_jumps},
        replications=trials,
        outcomes=[],
        summary={"max_abs_error": worst},
        seed=seed,
        thresholds={"absolute_tolerance": 1e-10},
    )
