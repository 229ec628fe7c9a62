"""Sampling the four base-station models and checking their intensities.

Draws one realisation of each model on the standard 100 x 100 torus
window, prints the closed-form intensity next to an empirical estimate,
and demonstrates the hard-core / cluster structure with simple summary
statistics.
"""

import numpy as np

import adglab as a

window = a.Window(100.0, 100.0)
models = {
    "Poisson(0.1)": a.Poisson(0.1),
    "MaternCluster(0.01, 10, 5)": a.MaternCluster(0.01, 10.0, 5.0),
    "MaternHardCore(0.263, 1.7)": a.MaternHardCore(0.263, 1.7),
    "TriangularLattice(0.1)": a.TriangularLattice(0.1),
}

print(f"{'model':<30} {'intensity':>9} {'mean count (100 reps)':>22} {'min pair dist':>14}")
for name, model in models.items():
    lam = a.intensity_of(model)
    counts = [len(a.sample(model, window, seed)) for seed in range(100)]
    pat = a.sample(model, window, 0)
    dmin = a.point_process.min_distance(pat.points, window)
    print(f"{name:<30} {lam:>9.5f} {np.mean(counts):>22.1f} {dmin:>14.3f}")

print()
print("The hard-core pattern never has a pair closer than its radius 1.7;")
print("the cluster process packs points much closer together.")

print()
print("Contact-distance CCDF (probability the nearest station is farther than x):")
radii = np.array([0.5, 1.0, 2.0, 4.0])
header = "x".rjust(28) + "".join(f"{x:>8.1f}" for x in radii)
print(header)
for name, model in models.items():
    ccdf = a.empirical_contact_ccdf(model, window, radii, reps=2000, seed=1)
    print(name.rjust(28) + "".join(f"{c:>8.3f}" for c in ccdf))
print("Poisson reference exp(-lam pi x^2):".rjust(28)
      + "".join(f"{c:>8.3f}" for c in a.ppp_contact_ccdf(0.1, radii)))
