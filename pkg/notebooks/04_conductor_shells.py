import math

from casimir_shells import (
    Geometry,
    ThermalState,
    conductor_energy_T0,
    conductor_force,
    conductor_free_energy,
    high_T_slit_closed_form,
    n0_term,
    plate_energy_T0,
    static_free_energy,
)

g = Geometry.from_gap_ratio(0.05)
res = conductor_free_energy(g, ThermalState(200.0))
print("beta F at t=200, d/a=0.05:", res.value, "  terms n,l:", res.n_terms, res.l_terms)
print("narrow-slit high-T form:", high_T_slit_closed_form(g))

# the classical term is twice the static perfect-conductor result
for r in (0.1, 0.5, 0.9):
    gg = Geometry(r, 1.0)
    print(r, n0_term(gg), 2 * static_free_energy(gg, math.inf, 1e-15).value)

# zero temperature, per area, against flat plates
for da in (0.01, 0.02, 0.05, 0.2):
    gg = Geometry.from_gap_ratio(da)
    print(da, conductor_energy_T0(gg).value / gg.area / plate_energy_T0(gg.d))

# lg(-beta F t) hardly moves for t <= 1
g = Geometry.from_gap_ratio(0.1)
print("t=0:", math.log10(-2 * math.pi * conductor_energy_T0(g).value))
for t in (0.1, 0.5, 1.0):
    print(f"t={t}:", math.log10(-conductor_free_energy(g, ThermalState(t)).value * t))

f = conductor_force(g, ThermalState(1.0))
print("force per area on the outer wall:", f.f_int)
