"""Deployment gain and its asymptotic limit.

The deployment gain G(p_t) is the horizontal threshold ratio between a
network's success curve and the Poisson baseline at target probability
p_t; as p_t -> 1 it converges to the asymptotic deployment gain (ADG),
computable from the outage coefficient ratio (kappa_ppp / kappa)^(1/m)
without ever estimating deep-tail probabilities directly.
"""

import numpy as np

import adglab as a

window = a.Window(100.0, 100.0)
path = a.PathLoss("nonsingular", 4.0)
grid = np.arange(-45.0, 11.0, 1.0)
n = 60_000

ppp = a.Scenario(a.Poisson(0.1), path, a.RAYLEIGH, 0.0, window, seed=7)
mhp = a.Scenario(a.MaternHardCore(0.263, 1.7), path, a.RAYLEIGH, 0.0, window, seed=8)

ref = a.estimate_success_curve(ppp, grid, n, probes_per_pattern=4)
cur = a.estimate_success_curve(mhp, grid, n, probes_per_pattern=16)

print("deployment gain of the hard-core network vs the Poisson baseline:")
for p_t in (0.6, 0.9, 0.99):
    g = a.deployment_gain(cur, ref, p_t)
    print(f"  G({p_t}) = {g:.3f}  ({10 * np.log10(g):+.2f} dB)")

est = a.adg_from_kappa(mhp, n=40_000, probes_per_pattern=16)
print(f"\nADG from the kappa ratio: {est.g_hat:.3f} +- {est.stderr:.3f}")
print(f"  (kappa = {est.kappa:.3f}, kappa_ppp = {est.kappa_ppp:.3f}, m = {est.m:g})")
print("Published simulations report ~1.58 for this network at alpha = 4.")

shift = a.adg_horizontal_shift(cur, ref, p_window=(0.95, 0.995))
print(f"Horizontal-shift estimate over a high-reliability window: "
      f"{shift.g_hat:.3f} +- {shift.stderr:.3f}")
