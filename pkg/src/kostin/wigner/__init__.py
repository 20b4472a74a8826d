"""Wigner phase-space diagnostics."""

from __future__ import annotations

from .gaussian import (
    ellipse_area,
    quadratic_form,
    uncertainties,
    wigner_gaussian_analytic,
    wigner_gaussian_grid,
)
from .grid import WignerFormat, WignerGrid, level_set_area, write_wigner_csv
from .transform import default_p_axis, momentum_density, wigner_numeric

__all__ = [
    "WignerFormat",
    "WignerGrid",
    "default_p_axis",
    "ellipse_area",
    "level_set_area",
    "momentum_density",
    "quadratic_form",
    "uncertainties",
    "wigner_gaussian_analytic",
    "wigner_gaussian_grid",
    "wigner_numeric",
    "write_wigner_csv",
]
