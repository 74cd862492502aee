"""A tour of the Monte Carlo laboratory at reduced scale.

Runs a short coverage study, a covariance consistency sweep, the bootstrap
probability bounds and the deterministic jump inequality. The full-size
versions of these studies live in ``tests/test_acceptance.py``.

Run with ``python demos/simulation_lab.py``; it takes about half a minute.
"""

from __future__ import annotations

import math

from kmboot import ResamplePlan
from kmboot.simlab import (
    DataModel,
    Law,
    coverage_experiment,
    gamma_consistency_sweep,
    generate,
    gill_bound_check,
    integration_by_parts_check,
    jump_inequality_check,
)


def main() -> None:
    model = DataModel(Law.uniform(0, 1), Law.uniform(0, 2))
    print(f"P(event) = {model.event_probability():.4f}")
    print(f"-int dS/G_- = {model.condition_integral(1):.4f} (2 ln 2 = {2 * math.log(2):.4f}); "
          f"cubed version {model.condition_integral(3):.4f}")

    rep = coverage_experiment(model, n=100, B=200, alpha=0.05, band_kind="mrl", reps=40, seed=1, t1=0.0, t2=0.5)
    s = rep.summary
    print(f"\nMRL band coverage over {rep.replications} data sets: {s['coverage']:.3f} "
          f"+/- {s['coverage_se']:.3f} (nominal {s['nominal']})")

    sweep = gamma_consistency_sweep(model, [50, 200, 800], B=20, seed=2, reps=5)
    print("\ncovariance sweep (median grid sup distances)")
    for n, row in sweep.summary["per_n"].items():
        print(f"  n={n:<4} |Gamma_n - Gamma| {row['median_sup_hat_vs_true']:.4f}   "
              f"|Gamma*_n - Gamma_n| {row['median_sup_star_vs_hat']:.4f}")

    gill = gill_bound_check(generate(model, 50, 3), ResamplePlan(3, 1000), [0.2, 0.5, 0.8])
    print("\nbootstrap probability bounds")
    for row in gill.summary["per_beta"]:
        print(f"  beta={row['beta']}: freq {row['freq_S']:.3f} <= {row['bound_S']:.3f}, "
              f"freq {row['freq_H']:.3f} <= {row['bound_H']:.3f}")

    jumps = jump_inequality_check(2000, seed=4)
    ibp = integration_by_parts_check(2000, seed=4)
    print(f"\njump inequality violations in 2000 random pairs: {jumps.summary['violations']}")
    print(f"integration by parts, largest error: {ibp.summary['max_abs_error']:.1e}")


if __name__ == "__main__":
    main()
