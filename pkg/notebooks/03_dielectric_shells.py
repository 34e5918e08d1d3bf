import numpy as np

from casimir_shells import (
    Geometry,
    PermittivityModel,
    ThermalState,
    casimir_force,
    mode_eigenvalues,
    mutual_free_energy,
)

g = Geometry.from_gap_ratio(0.3)
zeta = np.array([0.1, 1.0, 5.0])

tm, te = mode_eigenvalues(g, 6.0, zeta, 5)
print("TM (rows l=1..5, columns zeta):\n", tm)
print("TE:\n", te)

# Constant permittivity and a single-oscillator model, same static value
th = ThermalState(2.0)
for pm in (PermittivityModel.constant(5.0), PermittivityModel.oscillator(5.0, 2.0), PermittivityModel.conductor()):
    res = mutual_free_energy(g, pm, th, 1e-8, n0_convention="conductor" if pm.is_conductor else "static")
    print(pm, res.value, res.n_terms, res.l_terms)

# pressure on the outer wall (per unit area), from a derivative in b
print("force per area:", casimir_force(g, PermittivityModel.constant(5.0), th))

# the n = 0 TE contribution is absent for any finite permittivity;
# "conductor" adds the perfect-conductor zero-frequency term back in
pm = PermittivityModel.constant(1e6)
for conv in ("static", "conductor"):
    print(conv, mutual_free_energy(g, pm, th, 1e-8, n0_convention=conv).value)
