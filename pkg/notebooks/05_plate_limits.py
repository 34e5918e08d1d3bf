from casimir_shells import (
    Geometry,
    PermittivityModel,
    ThermalState,
    high_T_plate_closed_form,
    lifshitz_plate_free_energy,
    narrow_slit_energy_closed_form,
    narrow_slit_energy_T0,
    narrow_slit_free_energy,
    plate_energy_T0,
    plate_force_conductor,
    plate_free_energy_conductor,
)

# narrow slit at T = 0 approaches the flat-plate energy times the area
for xi in (0.05, 0.01, 0.003):
    g = Geometry.from_gap_ratio(xi)
    print(xi, narrow_slit_energy_T0(g) / narrow_slit_energy_closed_form(g))

d = 0.05
for t in (0.5, 5.0, 50.0, 5000.0):
    th = ThermalState(t)
    f = plate_free_energy_conductor(d, th)
    print(f"t={t:7g}  beta F/A={f:.6e}  low-T {th.beta * plate_energy_T0(d):.6e}  high-T {high_T_plate_closed_form(d):.6e}")
    print("          force/A", plate_force_conductor(d, th))

g = Geometry.from_gap_ratio(0.05)
print(narrow_slit_free_energy(g, ThermalState(200.0)).value)

# Lifshitz plates with finite permittivity; the vacuum case is exactly zero
th = ThermalState(3.0)
for eps in (1.0, 2.0, 10.0, 1e4, float("inf")):
    print(eps, lifshitz_plate_free_energy(0.1, PermittivityModel.constant(eps), th))
