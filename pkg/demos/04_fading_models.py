"""Fading laws and the small-argument CDF coefficient.

For Nakagami-m and composite (Nakagami x log-normal) fading the CDF
behaves like a * t^m near zero; the pair (a, m) fixes the asymptotic
outage slope (10m dB/decade) and enters every kappa estimate. Pure
log-normal shadowing decays faster than any power and has no such pair.
"""

import numpy as np

import adglab as a

models = {
    "Rayleigh": a.Nakagami(1.0),
    "Nakagami(2)": a.Nakagami(2.0),
    "Nakagami(0.5)": a.Nakagami(0.5),
    "Composite(1, 2)": a.Composite(1.0, 2.0),
    "Composite(2, 4)": a.Composite(2.0, 4.0),
}

print(f"{'model':<16} {'a':>10} {'m':>5} {'F(1e-3)/(a t^m)':>16} {'mean':>8} {'sampled mean':>13}")
rng = np.random.default_rng(0)
for name, model in models.items():
    coef = a.small_t_coefficient(model)
    ratio = float(a.fading_cdf(model, 1e-3)) / (coef.a * 1e-3**coef.m)
    h = a.sample_fading(model, rng, 200_000)
    print(
        f"{name:<16} {coef.a:>10.5f} {coef.m:>5.1f} {ratio:>16.5f} "
        f"{a.fading_mean(model):>8.4f} {h.mean():>13.4f}"
    )

print()
try:
    a.small_t_coefficient(a.LogNormal(2.0))
except a.NoPolynomialDecay as exc:
    print(f"LogNormal(2): NoPolynomialDecay - {exc}")
