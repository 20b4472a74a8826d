"""Closed-form phase-space picture of Gaussian packets."""

from __future__ import annotations

import math

import numpy as np

from kostin.errors import ParameterError
from kostin.types import PacketState, PhysicalParams

from .grid import WignerGrid


def wigner_gaussian_analytic(params: PhysicalParams, state: PacketState, x, p):
    """Wigner function of the Gaussian packet ``state``; broadcasts over ``x, p``."""
    hbar, m = params.hbar, params.mass
    xi = np.asarray(x, dtype=float) - state.q
    shear = np.asarray(p, dtype=float) - m * state.qdot - m * state.adot / state.a * xi
    exponent = -(xi**2) / (2.0 * state.a**2) - 2.0 * state.a**2 / hbar**2 * shear**2
    value = np.exp(exponent) / (np.pi * hbar)
    return float(value) if np.ndim(value) == 0 else value


def wigner_gaussian_grid(
    params: PhysicalParams, state: PacketState, x_axis, p_axis
) -> WignerGrid:
    x_axis = np.asarray(x_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    f = wigner_gaussian_analytic(params, state, x_axis[:, None], p_axis[None, :])
    return WignerGrid(x_axis, p_axis, f, state.t)


def uncertainties(params: PhysicalParams, state: PacketState) -> tuple[float, float, float]:
    """``(dx, dp, dx * dp)`` with ``dp^2 = m^2 adot^2 + hbar^2 / (4 a^2)``."""
    dx = state.a
    dp = math.hypot(params.mass * state.adot, params.hbar / (2.0 * state.a))
    return dx, dp, dx * dp


def quadratic_form(params: PhysicalParams, state: PacketState) -> np.ndarray:
    """Matrix ``M`` with ``f = f_max exp(-z^T M z)``, ``z = (x - q, p - m qdot)``."""
    a, hbar = state.a, params.hbar
    squeeze = 2.0 * a * a / hbar**2
    slope = params.mass * state.adot / a
    return np.array(
        [
            [1.0 / (2.0 * a * a) + squeeze * slope**2, -squeeze * slope],
            [-squeeze * slope, squeeze],
        ]
    )


def ellipse_area(params: PhysicalParams, state: PacketState, level: float) -> float:
    """Area inside the level curve ``f = level * f_max``.

    ``det M = 1 / hbar^2`` for every Gaussian, so the area is
    ``pi hbar ln(1 / level)`` along any trajectory.
    """
    if not 0 < level < 1:
        raise ParameterError(f"must be in (0, 1), got {level}", "level")
    det = float(np.linalg.det(quadratic_form(params, state)))
    return math.pi * math.log(1.0 / level) / math.sqrt(det)
