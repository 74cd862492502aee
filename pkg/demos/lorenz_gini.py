"""Lorenz curves and Gini indices from censored data.

For an exponential law the Gini index is 1/2 whatever the rate. We estimate it
with and without censoring, build a simultaneous band for the Lorenz curve,
and show what happens when the largest observation is censored.

Run with ``python demos/lorenz_gini.py``.
"""

from __future__ import annotations

import warnings

import numpy as np

from kmboot import ResamplePlan, TailMassWarning, gini, gini_interval, km_fit, lorenz, lorenz_band
from kmboot.simlab import DataModel, Law, generate


def main() -> None:
    plan = ResamplePlan(seed=11, B=1000)

    full = generate(DataModel(Law.exponential(1.0)), 500, seed=1)
    ci = gini_interval(full, alpha=0.05, plan=plan)
    print(f"uncensored exponential: Gini {ci.estimate:.4f}, 95% interval [{ci.lower:.4f}, {ci.upper:.4f}]")

    # light censoring; the residual Kaplan-Meier mass is moved to the largest time
    model = DataModel(Law.exponential(1.0), Law.exponential(0.2))
    cens = generate(model, 500, seed=2)
    fit = km_fit(cens)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TailMassWarning)
        g = gini(fit)
    print(f"censored exponential:   Gini {g:.4f}, censoring share {1 - cens.event.mean():.2f}")
    for w in caught:
        print(f"  note: {w.message}")

    # when the largest time is censored S_n stops above zero; that mass becomes an atom
    tail_fit = km_fit(generate(DataModel(Law.exponential(1.0), Law.uniform(0, 1.5)), 300, seed=5))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TailMassWarning)
        g = gini(tail_fit)
    print(f"heavily censored:       Gini {g:.4f}, residual mass {tail_fit.km.final_value:.4f}")
    for w in caught:
        print(f"  note: {w.message}")

    band = lorenz_band(full, alpha=0.05, plan=plan, p_grid_resolution=11)
    truth = DataModel(Law.exponential(1.0)).lorenz(band.grid)
    print("\n   p   lower    L_n    upper   truth")
    for p, lo, c, hi, tr in zip(band.grid, band.lower, band.center, band.upper, truth):
        print(f"{p:5.1f} {lo:7.4f} {c:7.4f} {hi:7.4f} {tr:7.4f}")
    print(f"band covers the true curve: {band.contains(DataModel(Law.exponential(1.0)).lorenz)}")

    # perfect equality: every observation the same
    same = km_fit(generate(DataModel(Law.point_mass(3.0)), 20, seed=0))
    print(f"\nall values equal: Gini {gini(same):.3g}, L(0.5) = {lorenz(same)(0.5):.3g}")
    print(f"max |L_n(p) - p^2| for uniform data: "
          f"{np.max(np.abs(lorenz(km_fit(generate(DataModel(Law.uniform(0, 1)), 2000, 3)))(band.grid) - band.grid**2)):.4f}")


if __name__ == "__main__":
    main()
