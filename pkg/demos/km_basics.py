"""Kaplan-Meier basics on a three-record sample.

Walks through the product-limit estimate, the Nelson-Aalen cumulative hazard,
the censoring-time estimate and the plug-in variance function, then shows how
tied times are handled.

Run with ``python demos/km_basics.py``.
"""

from __future__ import annotations

from kmboot import ObservedSample, censoring_diagnostic, gamma_hat, km_fit, sigma2_hat


def show(name, f) -> None:
    print(f"{name} (value at 0: {f.initial_value:g})")
    for row in f.to_records():
        print(f"  t={row['t']:<5g} value={row['value']:<10.6g} left limit={row['value_left']:.6g}")


def main() -> None:
    # one event at 1, a censoring at 2, one event at 3
    sample = ObservedSample([1.0, 2.0, 3.0], [1, 0, 1])
    fit = km_fit(sample)

    show("Kaplan-Meier S_n", fit.km)
    show("Nelson-Aalen A_n", fit.na)
    show("censoring survival G_n", fit.censor_km)
    show("variance function sigma2_n", sigma2_hat(fit))

    print(f"\nGamma_n(1.5, 2.5) = {gamma_hat(fit, 1.5, 2.5):.6f}  (4/27 = {4 / 27:.6f})")
    diag = censoring_diagnostic(fit, t=0.0, power=1)
    print(f"censoring diagnostic at t=0: {diag.value:.6f}  (5/3 = {5 / 3:.6f})")

    # ties: events are placed before censorings at the same time
    tied = km_fit(ObservedSample([2.0, 2.0], [0, 1]))
    print(f"\ncensoring and event tied at 2: S_n(2) = {tied.km.eval(2.0)}")
    both = km_fit(ObservedSample([2.0, 2.0], [1, 1]))
    print(f"two events tied at 2:          S_n(2) = {both.km.eval(2.0)}")


if __name__ == "__main__":
    main()
