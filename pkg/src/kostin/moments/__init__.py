"""Reduced Gaussian dynamics: damped Newton center and damped Pinney width."""

from __future__ import annotations

from .closed_form import (
    acceleration_ratio,
    asymptotic_width,
    conservative_harmonic_width_exact,
    conservative_width_exact,
    damped_oscillator_center,
    fit_power_law,
    free_particle_center,
    lyapunov_energy,
    pinney_equilibrium_width,
    width_acceleration,
    width_energy,
)
from .integrator import (
    MomentTrajectory,
    StepStats,
    integrate_moments,
    lyapunov_decay_coefficient,
    write_trajectory_csv,
)

__all__ = [
    "MomentTrajectory",
    "StepStats",
    "acceleration_ratio",
    "asymptotic_width",
    "conservative_harmonic_width_exact",
    "conservative_width_exact",
    "damped_oscillator_center",
    "fit_power_law",
    "free_particle_center",
    "integrate_moments",
    "lyapunov_decay_coefficient",
    "lyapunov_energy",
    "pinney_equilibrium_width",
    "width_acceleration",
    "width_energy",
    "write_trajectory_csv",
]
