"""Success probability P(SINR > theta) for the three stochastic models.

Estimates Monte Carlo success curves under Rayleigh fading (non-singular
path loss, alpha = 4, no noise) and prints them next to the analytic
Poisson baseline. The hard-core network dominates the Poisson network,
which dominates the cluster network, at every threshold.
"""

import numpy as np

import adglab as a

window = a.Window(100.0, 100.0)
path = a.PathLoss("nonsingular", 4.0)
grid = np.arange(-20.0, 11.0, 5.0)
n = 20_000

curves = {}
for name, model, probes in (
    ("ppp", a.Poisson(0.1), 4),
    ("mcp", a.MaternCluster(0.01, 10.0, 5.0), 8),
    ("mhp", a.MaternHardCore(0.263, 1.7), 16),
):
    s = a.Scenario(model, path, a.RAYLEIGH, 0.0, window, seed=42)
    curves[name] = a.estimate_success_curve(s, grid, n, probes_per_pattern=probes)

analytic = a.ppp_success_rayleigh(10 ** (grid / 10.0), 4.0)

print(f"{'theta (dB)':>10} {'analytic ppp*':>14} {'ppp':>8} {'mcp':>8} {'mhp':>8}")
for i, t in enumerate(grid):
    row = " ".join(f"{curves[k].p_hat[i]:>8.4f}" for k in ("ppp", "mcp", "mhp"))
    print(f"{t:>10.0f} {analytic[i]:>14.4f} {row}")
print("* singular-model closed form; the non-singular simulation sits close")
print("  at moderate thresholds and below it in the far upper tail.")

print()
print("Ordering check (within Monte Carlo noise): mhp >= ppp >= mcp pointwise:",
      bool(np.all(curves["mhp"].p_hat + 0.01 >= curves["ppp"].p_hat)
           and np.all(curves["ppp"].p_hat + 0.01 >= curves["mcp"].p_hat)))
