"""Data models with known truth, generators and Monte Carlo experiments."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy import integrate

from kmboot.bootstrap import ResamplePlan
from kmboot.simlab import (
    DataModel,
    Law,
    coverage_experiment,
    derive_seed,
    gamma_consistency_sweep,
    generate,
    gill_bound_check,
    integration_by_parts_check,
    jump_inequality_check,
)
from kmboot.stepfn import StepFunction, stieltjes_integral

HEADLINE = DataModel(Law.uniform(0, 1), Law.uniform(0, 2))


# ---------------------------------------------------------------------
# laws and truth
# ---------------------------------------------------------------------
def test_law_validation() -> None:
    with pytest.raises(ValueError):
        Law.uniform(1, 0)
    with pytest.raises(ValueError):
        Law.exponential(-1)
    with pytest.raises(ValueError):
        Law("cauchy", (0.0,))


def test_condition_integrals_closed_forms() -> None:
    assert HEADLINE.condition_integral(1) == pytest.approx(2 * math.log(2), abs=1e-7)
    assert HEADLINE.condition_integral(3) == pytest.approx(3.0, abs=1e-7)
    assert DataModel(Law.uniform(0, 1)).condition_integral(1) == pytest.approx(1.0, abs=1e-9)


def test_event_probabilities() -> None:
    assert HEADLINE.event_probability() == pytest.approx(0.75, abs=1e-9)
    assert DataModel(Law.point_mass(1.0), Law.uniform(0, 2)).event_probability() == pytest.approx(0.5)
    assert DataModel(Law.exponential(1.0), Law.exponential(0.5)).event_probability() == pytest.approx(2 / 3, abs=1e-8)


@pytest.mark.parametrize("law", [Law.uniform(0, 1), Law.uniform(0.5, 2.0), Law.exponential(2.0)])
def test_closed_forms_match_quadrature(law) -> None:
    m = DataModel(law)
    mu = law.mean
    for t in (0.0, 0.3):
        num = integrate.quad(lambda u: float(law.sf(u)), t, np.inf)[0]
        assert m.mrl(t) == pytest.approx(num / float(law.sf(t)), abs=1e-7)
    for p in (0.25, 0.5, 0.9):
        val = integrate.quad(lambda s: float(law.ppf(s)), 0, p)[0] / mu
        assert m.lorenz(p) == pytest.approx(val, abs=1e-7)
    g = 1 - 2 * integrate.quad(lambda s: float(m.lorenz(s)), 0, 1)[0]
    assert m.gini() == pytest.approx(g, abs=1e-7)


def test_weibull_gini_closed_form_matches_quadrature() -> None:
    # G = 1 - (1/mu) int_0^inf S(x)^2 dx for a non-negative law
    law = Law.weibull(2.0, 1.5)
    val = integrate.quad(lambda x: float(law.sf(x)) ** 2, 0, np.inf)[0]
    assert DataModel(law).gini() == pytest.approx(1 - val / law.mean, abs=1e-8)


def test_uncensored_sigma2_oracle() -> None:
    # without censoring sigma2(t) = int_0^t dA / S_- = int_0^t f / S^2 = 1/S(t) - 1
    m = DataModel(Law.exponential(1.0))
    t = np.array([0.2, 0.7, 1.5])
    np.testing.assert_allclose(m.sigma2(t), np.exp(t) - 1, atol=1e-7)
    grid = np.array([0.0, 0.5, 1.0])
    gam = m.gamma(grid)
    expected = np.exp(-grid[:, None]) * np.exp(-grid[None, :]) * (np.exp(np.minimum.outer(grid, grid)) - 1)
    np.testing.assert_allclose(gam, expected, atol=1e-7)


def test_point_mass_gamma_zero_off_atom() -> None:
    m = DataModel(Law.point_mass(1.0))
    np.testing.assert_array_equal(m.gamma(np.array([0.0, 0.5, 0.99, 1.5])), 0.0)


def test_model_round_trip() -> None:
    assert DataModel.from_dict(HEADLINE.to_dict()).to_dict() == HEADLINE.to_dict()


# ---------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------
def test_generate_uncensored_and_deterministic() -> None:
    s = generate(DataModel(Law.exponential(1.0)), 50, 3)
    assert s.event.all()
    np.testing.assert_array_equal(s.time, generate(DataModel(Law.exponential(1.0)), 50, 3).time)


def test_event_fractions() -> None:
    s = generate(DataModel(Law.point_mass(1.0), Law.uniform(0, 2)), 20_000, 1)
    assert s.event.mean() == pytest.approx(0.5, abs=0.015)
    np.testing.assert_array_equal(s.event, s.time == 1.0)
    s = generate(HEADLINE, 20_000, 2)
    assert s.event.mean() == pytest.approx(0.75, abs=0.015)


def test_derive_seed() -> None:
    assert derive_seed(5, 0, 1) == derive_seed(5, 0, 1)
    assert len({derive_seed(5, 0, r) for r in range(100)}) == 100
    assert 0 <= derive_seed(5, 1) < 2**64


# ---------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------
def test_coverage_near_zero_for_extreme_alpha() -> None:
    rep = coverage_experiment(HEADLINE, 60, 50, 1 - 1e-9, "mrl", 10, 4, t1=0.0, t2=0.4)
    assert rep.summary["coverage"] <= 0.2


def test_coverage_low_with_single_replicate() -> None:
    rep = coverage_experiment(HEADLINE, 60, 1, 0.05, "mrl", 20, 5, t1=0.0, t2=0.4)
    assert rep.summary["coverage"] < 0.8


def test_coverage_report_is_reproducible() -> None:
    a = coverage_experiment(DataModel(Law.uniform(0, 1)), 40, 30, 0.1, "gini", 5, 9)
    b = coverage_experiment(DataModel(Law.uniform(0, 1)), 40, 30, 0.1, "gini", 5, 9)
    assert a.to_dict() == b.to_dict()
    assert a.replications == 5 and len(a.outcomes) == 5


def test_coverage_lorenz_kind_runs() -> None:
    rep = coverage_experiment(DataModel(Law.uniform(0, 1)), 80, 40, 0.05, "lorenz", 4, 2, p_grid_resolution=21)
    assert 0.0 <= rep.summary["coverage"] <= 1.0 and rep.summary["failed"] == 0


def test_gamma_sweep_shrinks() -> None:
    rep = gamma_consistency_sweep(HEADLINE, [50, 800], 20, 3, reps=5)
    per_n = rep.summary["per_n"]
    assert per_n[800]["median_sup_hat_vs_true"] < per_n[50]["median_sup_hat_vs_true"]
    assert per_n[800]["median_sup_star_vs_hat"] < per_n[50]["median_sup_star_vs_hat"]


def test_gamma_sweep_point_mass_near_zero() -> None:
    rep = gamma_consistency_sweep(DataModel(Law.point_mass(1.0)), [30], 10, 1, reps=2,
                                  grid=np.linspace(0, 0.99, 20))
    assert rep.summary["per_n"][30]["median_sup_hat_vs_true"] == 0.0
    assert rep.summary["per_n"][30]["median_sup_star_vs_hat"] == 0.0


def test_gill_bounds_uniform_sample() -> None:
    sample = generate(DataModel(Law.uniform(0, 1), Law.uniform(0, 1)), 50, 12)
    rep = gill_bound_check(sample, ResamplePlan(12, 2000), [0.2, 0.5, 0.99])
    per_beta = {p["beta"]: p for p in rep.summary["per_beta"]}
    assert per_beta[0.2]["bound_H"] == pytest.approx(math.e / 0.2 * math.exp(-5), abs=1e-12)
    assert per_beta[0.2]["bound_H"] == pytest.approx(0.0916, abs=1e-4)
    assert per_beta[0.99]["bound_S"] == 0.99
    assert rep.summary["all_pass"]


def test_gill_rejects_bad_beta() -> None:
    with pytest.raises(ValueError):
        gill_bound_check(generate(HEADLINE, 10, 1), ResamplePlan(1, 10), [1.0])


def test_jump_inequality_small_run() -> None:
    rep = jump_inequality_check(500, 8)
    assert rep.summary["violations"] == 0


def test_jump_inequality_degenerate_cases() -> None:
    pts = np.array([0.0, 0.3, 0.6, 0.9])
    h = StepFunction(np.array([0.5]), np.array([0.4]), 1.0)
    zero = StepFunction.constant(0.0)
    assert all(stieltjes_integral(h, zero, s) == 0.0 for s in pts)
    # with h == 1 the integral is Z itself, so the bound reads sup|Z| <= 2 sup|Z|
    z = StepFunction(np.array([0.3, 0.6]), np.array([0.5, -0.2]), 0.0)
    u = np.array([stieltjes_integral(StepFunction.constant(1.0), z, s) for s in pts])
    np.testing.assert_allclose(u, z.eval(pts), atol=1e-15)


def test_integration_by_parts_small_run() -> None:
    assert integration_by_parts_check(500, 4).summary["max_abs_error"] < 1e-10
