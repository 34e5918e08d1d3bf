"""Casimir free energy between concentric spherical walls.

Dielectric and perfectly conducting walls at any temperature, with
narrow-gap and parallel-plate limits for cross-checking.
"""
from .asymptotics import (
    high_T_plate_closed_form,
    high_T_slit_closed_form,
    lifshitz_plate_free_energy,
    narrow_slit_energy_closed_form,
    narrow_slit_energy_T0,
    narrow_slit_free_energy,
    plate_energy_T0,
    plate_force_conductor,
    plate_free_energy_conductor,
)
from .conductor import (
    conductor_energy_T0,
    conductor_force,
    conductor_free_energy,
    mode_ratios,
    n0_term,
)
from .dynamic import casimir_force, mode_eigenvalues, mutual_free_energy, te_eigenvalue, tm_eigenvalue
from .model import Geometry, NonConvergence, PermittivityModel, SeriesResult, ThermalState
from .special_functions import riccati_e, riccati_s, riccati_table, wronskian_defect
from .static import dilute_free_energy, dilute_overlap_series, static_coupling, static_free_energy

__version__ = "0.1.0"

__all__ = [
    "Geometry",
    "ThermalState",
    "PermittivityModel",
    "SeriesResult",
    "NonConvergence",
    "riccati_s",
    "riccati_e",
    "riccati_table",
    "wronskian_defect",
    "static_coupling",
    "static_free_energy",
    "dilute_free_energy",
    "dilute_overlap_series",
    "mode_eigenvalues",
    "tm_eigenvalue",
    "te_eigenvalue",
    "mutual_free_energy",
    "casimir_force",
    "mode_ratios",
    "n0_term",
    "conductor_free_energy",
    "conductor_energy_T0",
    "conductor_force",
    "narrow_slit_energy_T0",
    "narrow_slit_energy_closed_form",
    "narrow_slit_free_energy",
    "high_T_slit_closed_form",
    "high_T_plate_closed_form",
    "plate_energy_T0",
    "plate_free_energy_conductor",
    "plate_force_conductor",
    "lifshitz_plate_free_energy",
]
