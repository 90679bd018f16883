"""Superradiant gamma-ray switching by a vibrating nuclear array.

Coupled-mode dynamics of an incident and a Bragg-deflected gamma-ray wave
interacting collectively with a (possibly vibrating) lattice of two-level
nuclei, with closed-form solutions, design formulas and a scenario runner.
"""
from .analytic import (bessel_j, combination_resonance_frequency, omega_pm_static, optimal_kappa,
                       rwa_vibrating_solution, static_solution, transfer_time_static,
                       transfer_time_vibrating)
from .dynamics import (DriveParams, FirstOrderSystem, FrequencyShift, Geometry, ModeState,
                       SecondOrderState, SecondOrderSystem, conserved_energy,
                       integral_of_motion_residual, modulation_amplitudes, rhs_first_order,
                       rhs_second_order)
from .integrator import IntegrationControls, IntegrationError, Trajectory, integrate, step_size_for
from .materials import IsotopeRecord, MaterialParams, builtin_isotopes, collective_frequency, wavelength_from_energy

__version__ = "0.1.0"
