import math

import numpy as np

from casimir_shells import Geometry, dilute_free_energy, dilute_overlap_series, static_coupling, static_free_energy

# Zero-frequency term between a dielectric ball and a concentric cavity wall.
g = Geometry(0.5, 1.0)
l = np.arange(1, 8)
print("couplings eps=4:", static_coupling(4.0, l))
print("sigma_l:", g.sigma(l))

for eps in (1.5, 4.0, 80.0, math.inf):
    res = static_free_energy(g, eps, 1e-12)
    print(f"eps={eps:>6}  beta F = {res.value:.10f}  l terms {res.l_terms}")

# thin media: first order in (eps - 1)^2
for eps in (1.1, 1.01, 1.001):
    exact = static_free_energy(g, eps, 1e-14).value
    print(eps, exact / dilute_free_energy(g, eps) - 1)

# the pair-overlap series behind the dilute form
for r in (0.2, 0.5, 0.8):
    print(r, dilute_overlap_series(Geometry(r, 1.0), 4000))
