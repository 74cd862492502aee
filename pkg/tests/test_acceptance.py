"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <k> PASS|FAIL: ...`` line (also shown in
the terminal summary) and then asserts the criterion at its stated tolerance.
Criteria 4 to 6 run full Monte Carlo studies and take a few minutes in total;
they carry the ``slow`` marker so ``-m "not slow"`` skips them.
"""

from __future__ import annotations

import json
import math
import time

import numpy as np
import pytest

from kmboot.bootstrap import ResamplePlan
from kmboot.cli import main
from kmboot.covariance import censoring_diagnostic
from kmboot.estimators import ObservedSample, km_fit
from kmboot.functionals import gini, mrl
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

from .conftest import record_acceptance
from .oracles import censor_km_literal, km_literal, na_counting, random_tied_sample

HEADLINE = DataModel(Law.uniform(0, 1), Law.uniform(0, 2))
SEED = 20240601


def _report(k: int, ok: bool, detail: str) -> None:
    record_acceptance(f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_1_oracle_equivalence() -> None:
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    tied = 0
    for _ in range(1000):
        s = random_tied_sample(rng, max_n=8)
        tied += np.unique(s.time).size < s.n
        fit = km_fit(s)
        grid = np.unique(np.concatenate(([0.0], s.time, s.time + 0.25)))
        worst = max(
            worst,
            float(np.max(np.abs(np.asarray(fit.km.eval(grid)) - km_literal(s, grid)))),
            float(np.max(np.abs(np.asarray(fit.na.eval(grid)) - na_counting(s, grid)))),
            float(np.max(np.abs(np.asarray(fit.censor_km.eval(grid)) - censor_km_literal(s, grid)))),
        )
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 10 and tied > 0
    _report(1, ok, f"max |diff| = {worst:.2e} over 1000 samples ({tied} with ties) in {elapsed:.1f} s")
    assert ok


def test_criterion_2_no_censoring_reductions() -> None:
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 2)
    ecdf_err = 0.0
    for _ in range(200):
        x = rng.exponential(1.0, int(rng.integers(1, 40))) + 1e-6
        grid = np.concatenate(([0.0], np.sort(x), x + 1e-3))
        ecdf = (x[None, :] <= grid[:, None]).mean(axis=1)
        fit = km_fit(ObservedSample(x, np.ones(x.size, dtype=bool)))
        ecdf_err = max(ecdf_err, float(np.max(np.abs(np.asarray(fit.km.eval(grid)) - (1 - ecdf)))))
    u = generate(DataModel(Law.uniform(0, 1)), 2000, derive_seed(SEED, 2, 0))
    e = generate(DataModel(Law.exponential(1.0)), 2000, derive_seed(SEED, 2, 1))
    fu, fe = km_fit(u), km_fit(e)
    g_u, g_e = gini(fu), gini(fe)
    ts = np.array([0.0, 0.25, 0.5])
    mrl_err = float(np.max(np.abs(np.asarray(mrl(fu, ts)) - (1 - ts) / 2)))
    elapsed = time.perf_counter() - start
    ok = (ecdf_err <= 1e-12 and abs(g_u - 1 / 3) < 0.03 and abs(g_e - 0.5) < 0.03
          and mrl_err < 0.05 and elapsed < 10)
    _report(2, ok, f"km vs 1-ECDF {ecdf_err:.1e}; Gini U(0,1) {g_u:.4f}, Exp {g_e:.4f}; "
                   f"MRL max err {mrl_err:.4f}; {elapsed:.1f} s")
    assert ok


def test_criterion_3_censoring_diagnostic() -> None:
    start = time.perf_counter()
    target = 2 * math.log(2)
    values = np.array([
        censoring_diagnostic(km_fit(generate(HEADLINE, 2000, derive_seed(SEED, 3, r))), 0.0, 1).value
        for r in range(200)
    ])
    frac = float(np.mean(np.abs(values - target) <= 0.1))
    elapsed = time.perf_counter() - start
    ok = frac >= 0.95 and elapsed < 60
    _report(3, ok, f"{frac:.3f} of 200 within 0.1 of 2 ln 2 (median {np.median(values):.4f}); {elapsed:.1f} s")
    assert ok


@pytest.mark.slow
def test_criterion_4_mrl_band_coverage() -> None:
    start = time.perf_counter()
    rep = coverage_experiment(HEADLINE, 200, 500, 0.05, "mrl", 300, SEED + 4, t1=0.0, t2=0.5)
    cov = rep.summary["coverage"]
    ok = 0.91 <= cov <= 0.98 and rep.summary["failed"] == 0
    _report(4, ok, f"MRL band coverage {cov:.3f} (se {rep.summary['coverage_se']:.3f}), "
                   f"{rep.summary['failed']} failed reps; {time.perf_counter() - start:.0f} s")
    assert ok


@pytest.mark.slow
def test_criterion_5_gini_interval_coverage() -> None:
    start = time.perf_counter()
    rep = coverage_experiment(DataModel(Law.uniform(0, 1)), 500, 1000, 0.05, "gini", 300, SEED + 5)
    cov = rep.summary["coverage"]
    ok = 0.91 <= cov <= 0.98 and rep.summary["failed"] == 0
    _report(5, ok, f"Gini interval coverage {cov:.3f} (se {rep.summary['coverage_se']:.3f}); "
                   f"{time.perf_counter() - start:.0f} s")
    assert ok


@pytest.mark.slow
def test_criterion_6_covariance_consistency() -> None:
    start = time.perf_counter()
    rep = gamma_consistency_sweep(HEADLINE, [100, 400, 1600], 100, SEED + 6)
    per_n = rep.summary["per_n"]
    star = [per_n[n]["median_sup_star_vs_hat"] for n in (100, 400, 1600)]
    hat = [per_n[n]["median_sup_hat_vs_true"] for n in (100, 400, 1600)]
    ok = rep.summary["star_vs_hat_decreasing"] and rep.summary["hat_vs_true_decreasing"] and star[-1] < 0.1
    _report(6, ok, "median sup|G*-G_n| " + ", ".join(f"{v:.4f}" for v in star)
            + "; median sup|G_n-G| " + ", ".join(f"{v:.4f}" for v in hat)
            + f"; {time.perf_counter() - start:.0f} s")
    assert ok


def test_criterion_7_appendix_bounds() -> None:
    start = time.perf_counter()
    sample = generate(HEADLINE, 50, derive_seed(SEED, 7))
    gill = gill_bound_check(sample, ResamplePlan(derive_seed(SEED, 7, 1), 2000), [0.2, 0.5, 0.8])
    jumps = jump_inequality_check(10_000, SEED + 7)
    ibp = integration_by_parts_check(10_000, SEED + 7)
    elapsed = time.perf_counter() - start
    freqs = "; ".join(f"beta {p['beta']}: S {p['freq_S']:.3f}<={p['bound_S']:.3f}, "
                      f"H {p['freq_H']:.3f}<={p['bound_H']:.3f}" for p in gill.summary["per_beta"])
    ok = (gill.summary["all_pass"] and jumps.summary["violations"] == 0
          and ibp.summary["max_abs_error"] <= 1e-10 and elapsed < 60)
    _report(7, ok, f"Gill [{freqs}]; jump violations {jumps.summary['violations']}; "
                   f"IBP max err {ibp.summary['max_abs_error']:.1e}; {elapsed:.1f} s")
    assert ok


def test_criterion_8_determinism(tmp_path, monkeypatch) -> None:
    s = generate(HEADLINE, 150, derive_seed(SEED, 8))
    data = tmp_path / "data.csv"
    data.write_text("time,status\n" + "".join(f"{float(t)!r},{int(e)}\n" for t, e in zip(s.time, s.event)))
    scenario = tmp_path / "scenario.ini"
    scenario.write_text("[scenario]\nexperiment = coverage\nsurvival = uniform(0, 1)\n"
                        "censoring = uniform(0, 2)\nn = 80\nB = 40\nalpha = 0.05\nreps = 3\n"
                        "band_kind = mrl\nseed = 5\nt2 = 0.5\n")
    commands = {
        "band mrl": ["band", str(data), "--alpha", "0.05", "--B", "500", "--t1", "0", "--t2", "0.5", "--seed", "7"],
        "band mrl auto t2": ["band", str(data), "--B", "200", "--seed", "7"],
        "band lorenz": ["band", str(data), "--kind", "lorenz", "--B", "200", "--seed", "7"],
        "gini": ["gini", str(data), "--B", "300", "--seed", "7"],
        "gini csv": ["gini", str(data), "--B", "300", "--seed", "7", "--format", "csv"],
        "simulate": ["simulate", str(scenario)],
    }
    mismatched = []
    for name, argv in commands.items():
        outputs = []
        for i, threads in enumerate(("1", "1", "3", "8")):
            monkeypatch.setenv("KMBOOT_THREADS", threads)
            out = tmp_path / f"out_{len(outputs)}_{i}.txt"
            assert main([*argv, "-o", str(out)]) == 0
            outputs.append(out.read_bytes())
        if len(set(outputs)) != 1:
            mismatched.append(name)
        if "--format" not in argv:
            assert json.loads(outputs[0])["seed"] is not None
    ok = not mismatched
    _report(8, ok, f"{len(commands)} randomized commands x KMBOOT_THREADS in (1, 1, 3, 8): "
                   + ("all byte-identical" if ok else f"mismatch in {mismatched}"))
    assert ok
