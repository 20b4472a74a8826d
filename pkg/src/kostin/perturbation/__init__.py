"""Friction-dominated perturbation theory for the free width."""

from __future__ import annotations

from .compare import (
    PerturbationComparison,
    compare_with_numeric,
    numeric_width,
    perturbative_width_physical,
    solve_constants_physical,
    write_comparison_csv,
)
from .constants import (
    c2_from_c1,
    constants_consistency,
    constants_residual,
    solve_constants,
)
from .scaling import DIMENSIONLESS, ScaledWidth, rescale, unrescale
from .series import (
    ORDER,
    PerturbationConstants,
    PerturbativeTrajectory,
    alpha0,
    alpha0_ddot,
    alpha0_dot,
    alpha1,
    alpha1_dot,
    first_order_residual,
    initial_conditions,
    perturbative_trajectory,
    perturbative_width,
    perturbative_width_dot,
    zeroth_order_residual,
)

__all__ = [
    "DIMENSIONLESS",
    "ORDER",
    "PerturbationComparison",
    "PerturbationConstants",
    "PerturbativeTrajectory",
    "ScaledWidth",
    "alpha0",
    "alpha0_ddot",
    "alpha0_dot",
    "alpha1",
    "alpha1_dot",
    "c2_from_c1",
    "compare_with_numeric",
    "constants_consistency",
    "constants_residual",
    "first_order_residual",
    "initial_conditions",
    "numeric_width",
    "perturbative_trajectory",
    "perturbative_width",
    "perturbative_width_dot",
    "perturbative_width_physical",
    "rescale",
    "solve_constants",
    "solve_constants_physical",
    "unrescale",
    "write_comparison_csv",
    "zeroth_order_residual",
]
