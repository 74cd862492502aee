"""Variance function, covariance surface, censoring diagnostic and MRL covariance."""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmboot.covariance import (
    CovarianceSurface,
    SupportError,
    censoring_diagnostic,
    gamma_hat,
    mrl_asymptotic_covariance,
    sigma2_hat,
)
from kmboot.estimators import ObservedSample, km_fit
from kmboot.stepfn import StepFunction

from .oracles import area_midpoint, km_value, random_tied_sample, sigma2_counting


@pytest.fixture
def sample3():
    return ObservedSample([1.0, 2.0, 3.0], [1, 0, 1])


@pytest.fixture
def fit3(sample3):
    return km_fit(sample3)


# ---------------------------------------------------------------------
# sigma^2
# ---------------------------------------------------------------------
def test_sigma2_hand_values(fit3) -> None:
    sig = sigma2_hat(fit3)
    assert sig.eval(1.5) == pytest.approx(1 / 3, abs=1e-15)
    assert sig.eval(3.0) == pytest.approx(10 / 3, abs=1e-14)
    assert sig.eval(0.0) == 0.0


def test_sigma2_without_events_is_zero() -> None:
    sig = sigma2_hat(km_fit(ObservedSample([1.0, 2.0], [0, 0])))
    assert sig.eval(5.0) == 0.0 and sig.breakpoints.size == 0


def test_sigma2_single_event() -> None:
    sig = sigma2_hat(km_fit(ObservedSample([5.0], [1])))
    assert sig.eval(4.9) == 0.0 and sig.eval(5.0) == 1.0


@given(st.integers(0, 2**32 - 1))
def test_sigma2_matches_counting_oracle(seed) -> None:
    s = random_tied_sample(np.random.default_rng(seed))
    sig = sigma2_hat(km_fit(s))
    for t in np.unique(np.concatenate((s.time, [0.1, 10.0]))):
        assert sig.eval(t) == pytest.approx(sigma2_counting(s, t), abs=1e-12)


# ---------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------
def test_gamma_hand_value(fit3) -> None:
    assert gamma_hat(fit3, 1.5, 2.5) == pytest.approx(4 / 27, abs=1e-15)
    assert gamma_hat(fit3, 0.0, 2.5) == 0.0
    assert gamma_hat(fit3, 3.5, 4.0) == 0.0


def test_gamma_grid_matches_pointwise(fit3) -> None:
    grid = np.array([0.0, 0.5, 1.0, 1.5, 2.5, 3.0])
    surf = CovarianceSurface.from_fit(fit3).on_grid(grid)
    for i, u in enumerate(grid):
        for j, v in enumerate(grid):
            assert surf[i, j] == gamma_hat(fit3, u, v)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_gamma_symmetry_and_cauchy_schwarz(seed) -> None:
    fit = km_fit(random_tied_sample(np.random.default_rng(seed)))
    grid = np.concatenate(([0.0], fit.km.breakpoints, fit.km.breakpoints + 0.1))
    g = CovarianceSurface.from_fit(fit).on_grid(grid)
    np.testing.assert_array_equal(g, g.T)
    d = np.diag(g)
    assert np.all(g**2 <= np.outer(d, d) * (1 + 1e-12) + 1e-15)


# ---------------------------------------------------------------------
# censoring diagnostic
# ---------------------------------------------------------------------
def test_diagnostic_hand_value(fit3) -> None:
    diag = censoring_diagnostic(fit3, 0.0, 1)
    assert diag.value == pytest.approx(5 / 3, abs=1e-15)
    assert diag.zero_denominator_jumps == 0
    assert not diag.condition_likely_violated


def test_diagnostic_power3_hand_value(fit3) -> None:
    assert censoring_diagnostic(fit3, 0.0, 3).value == pytest.approx(1 / 3 + (2 / 3) * 8, abs=1e-14)


def test_diagnostic_without_censoring_is_mass_below_one() -> None:
    fit = km_fit(ObservedSample([0.5, 1.0, 2.0, 4.0], [1, 1, 1, 1]))
    for t in (0.0, 0.7, 2.0):
        # F_n(T_n) - F_n(t) = 1 - F_n(t) = S_n(t) when G_n is identically one
        value = censoring_diagnostic(fit, t, 1).value
        assert value == pytest.approx(fit.km.eval(t), abs=1e-15)
        assert value <= 1.0


def test_censor_km_left_limit_positive_at_event_times() -> None:
    # events-first ties keep every event in the risk set, so G_n(u-) > 0 there
    for seed in range(200):
        fit = km_fit(random_tied_sample(np.random.default_rng(seed)))
        assert np.all(np.asarray(fit.censor_km.eval_left(fit.km.breakpoints)) > 0)


def test_diagnostic_flags_zero_denominator() -> None:
    # unreachable from km_fit (see above), so plant an exhausted G_n by hand
    fit = km_fit(ObservedSample([1.0, 3.0], [0, 1]))
    fit = dataclasses.replace(fit, censor_km=StepFunction(np.array([1.0]), np.array([0.0]), 1.0))
    diag = censoring_diagnostic(fit)
    assert diag.zero_denominator_jumps == 1 and math.isinf(diag.value)
    assert diag.condition_likely_violated


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1))
def test_diagnostic_non_increasing_in_t(seed) -> None:
    fit = km_fit(random_tied_sample(np.random.default_rng(seed)))
    ts = np.linspace(0, 3, 31)
    vals = [censoring_diagnostic(fit, t, 1).value for t in ts]
    finite = [v for v in vals if math.isfinite(v)]
    assert all(b <= a + 1e-15 for a, b in zip(finite, finite[1:]))


def test_diagnostic_rejects_bad_power(fit3) -> None:
    with pytest.raises(ValueError):
        censoring_diagnostic(fit3, 0.0, 0)
    with pytest.raises(ValueError):
        censoring_diagnostic(fit3, 0.0, 1.5)


# ---------------------------------------------------------------------
# MRL covariance
# ---------------------------------------------------------------------
def _mrl_cov_oracle(sample: ObservedSample, r: float, s: float, refine: int = 4) -> float:
    """Cell-midpoint double sum over the rectangle grid of breakpoints.

    Within one cell both ``u`` and ``v`` stay between consecutive breakpoints,
    so the integrand is constant there and the sum is exact; ``refine``
    subdivides cells anyway as an extra guard.
    """
    upper = float(np.max(sample.time))
    m = max(r, s)
    s_r, s_s = km_value(sample, r), km_value(sample, s)
    g_r = area_midpoint(sample, r, upper) / s_r
    g_s = area_midpoint(sample, s, upper) / s_s
    if m >= upper:
        return -sigma2_counting(sample, m) * g_r * g_s
    cuts = np.unique(np.concatenate(([m, upper], sample.time[(sample.time > m) & (sample.time < upper)])))
    fine = np.unique(np.concatenate([np.linspace(a, b, refine + 1) for a, b in zip(cuts[:-1], cuts[1:])]))
    mids, widths = (fine[:-1] + fine[1:]) / 2, np.diff(fine)
    S = np.array([km_value(sample, u) for u in mids])
    total = 0.0
    for i, u in enumerate(mids):
        for j, v in enumerate(mids):
            total += S[i] * S[j] * sigma2_counting(sample, min(u, v)) * widths[i] * widths[j]
    return total / (s_r * s_s) - sigma2_counting(sample, m) * g_r * g_s


def test_mrl_covariance_at_censored_largest_time() -> None:
    fit = km_fit(ObservedSample([1.0, 2.0, 3.0], [1, 1, 0]))
    assert mrl_asymptotic_covariance(fit, 3.0, 3.0) == 0.0


def test_mrl_covariance_single_event() -> None:
    assert mrl_asymptotic_covariance(km_fit(ObservedSample([5.0], [1])), 0.0, 0.0) == 0.0


def test_mrl_covariance_outside_support(fit3) -> None:
    with pytest.raises(SupportError, match="estimate undefined beyond support of fit"):
        mrl_asymptotic_covariance(fit3, 0.5, 3.0)


@pytest.mark.parametrize("seed", range(8))
def test_mrl_covariance_matches_double_sum_oracle(seed) -> None:
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 7))
    sample = ObservedSample(rng.exponential(1.0, n) + 0.01, rng.random(n) < 0.7)
    fit = km_fit(sample)
    support = np.concatenate(([0.0], np.sort(sample.time)))
    support = support[np.asarray(fit.km.eval(support)) > 0]
    r, s = rng.choice(support, 2)
    r, s = r + 0.3 * rng.random() * (r < support[-1]), float(s)
    if fit.km.eval(r) <= 0:
        r = 0.0
    value = mrl_asymptotic_covariance(fit, float(r), s)
    assert value == pytest.approx(_mrl_cov_oracle(sample, float(r), s), abs=1e-6)


def test_mrl_covariance_is_symmetric(fit3) -> None:
    a = mrl_asymptotic_covariance(fit3, 0.5, 2.0)
    b = mrl_asymptotic_covariance(fit3, 2.0, 0.5)
    assert a == b
