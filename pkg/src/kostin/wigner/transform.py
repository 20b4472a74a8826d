"""Numeric Wigner transform of a gridded wavefunction.

With the lag ``y = 2 s dx`` both ``psi(x_j + y/2)`` and ``psi(x_j - y/2)``
fall on grid points, so

    f(x_j, p) = (dx / pi hbar) sum_s conj(psi[j+s]) psi[j-s] exp(2 i p s dx / hbar)

needs no interpolation. The odd lags ``y = (2s + 1) dx`` give the same
sum at the half-grid abscissae ``x_j + dx/2``. The sum is evaluated as a
matrix product, pointwise in ``p``, so any momentum axis is accepted.
"""

from __future__ import annotations

import logging

import numpy as np
from scipy import fft

from kostin.errors import QuadratureError
from kostin.pde import GridWavefunction
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PhysicalParams

from .grid import WignerGrid

logger = logging.getLogger(__name__)

# Accepted deviation of the phase-space normalization from one
NORMALIZATION_TOL = 1e-4
# Largest imaginary residue tolerated before the transform is rejected
IMAG_RESIDUE_TOL = 1e-9


def default_p_axis(params: PhysicalParams, grid: GridSpec) -> np.ndarray:
    """``n_points`` momenta spaced ``pi hbar / (n dx)``, centered on zero."""
    return params.hbar * 2.0 * np.pi * fft.fftshift(fft.fftfreq(grid.n_points, 2.0 * grid.dx))


def _lag_products(psi: np.ndarray, rows: np.ndarray, lags: np.ndarray, shift: int) -> np.ndarray:
    """``conj(psi[j + shift + s]) * psi[j - s]``, zero where an index leaves the grid."""
    n = len(psi)
    plus = rows[:, None] + shift + lags[None, :]
    minus = rows[:, None] - lags[None, :]
    inside = (plus >= 0) & (plus < n) & (minus >= 0) & (minus < n)
    products = np.conj(psi[np.clip(plus, 0, n - 1)]) * psi[np.clip(minus, 0, n - 1)]
    return np.where(inside, products, 0.0)


def wigner_numeric(
    params: PhysicalParams,
    wf: GridWavefunction,
    p_axis: np.ndarray | None = None,
    *,
    half_grid: bool = False,
    check_normalization: bool = True,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> WignerGrid:
    """Wigner function of ``wf`` on its grid (or grid and half grid).

    Amplitudes below ``tolerances.wigner_cut`` are dropped. Raises
    :class:`QuadratureError` when the imaginary residue exceeds ``1e-9``
    or, with ``check_normalization``, when the total weight is off by
    more than ``1e-4``.
    """
    grid = wf.grid
    hbar, dx = params.hbar, grid.dx
    p = default_p_axis(params, grid) if p_axis is None else np.asarray(p_axis, dtype=float)

    psi = np.where(np.abs(wf.psi) >= tolerances.wigner_cut, wf.psi, 0.0)
    support = np.flatnonzero(psi)
    if support.size == 0:
        raise QuadratureError("wavefunction vanishes below the Wigner cut", 0.0)
    lo, hi = int(support[0]), int(support[-1])
    rows = np.arange(lo, hi + 1)
    reach = (hi - lo) // 2 + 1
    lags = np.arange(-reach, reach + 1)

    scale = dx / (np.pi * hbar)
    values = np.zeros((grid.n_points, len(p)), dtype=complex)
    values[rows] = scale * (
        _lag_products(psi, rows, lags, 0) @ np.exp(2j * np.outer(lags, p) * dx / hbar)
    )
    x_axis = grid.x
    if half_grid:
        odd = np.zeros_like(values)
        odd[rows] = scale * (
            _lag_products(psi, rows, lags, 1)
            @ np.exp(1j * np.outer(2 * lags + 1, p) * dx / hbar)
        )
        interleaved = np.empty((2 * grid.n_points, len(p)), dtype=complex)
        interleaved[0::2] = values
        interleaved[1::2] = odd
        values = interleaved
        x_axis = grid.x_min + 0.5 * dx * np.arange(2 * grid.n_points)

    residue = float(np.max(np.abs(values.imag)))
    if residue > IMAG_RESIDUE_TOL:
        raise QuadratureError(f"imaginary residue {residue:.3e} of the Wigner sum", residue)

    result = WignerGrid(x_axis, p, values.real.copy(), wf.t, residue)
    if check_normalization:
        norm = result.normalization()
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise QuadratureError(f"Wigner normalization {norm:.8f} not within 1e-4 of 1", norm)
    logger.debug(
        "wigner grid %dx%d at t=%g, residue %.2e", len(x_axis), len(p), wf.t, residue
    )
    return result


def momentum_density(
    params: PhysicalParams, wf: GridWavefunction, p_axis: np.ndarray
) -> np.ndarray:
    """``|psi~(p)|^2`` with ``psi~ = (2 pi hbar)^(-1/2) integral psi exp(-i p x / hbar) dx``."""
    p = np.asarray(p_axis, dtype=float)
    kernel = np.exp(-1j * np.outer(p, wf.x) / params.hbar)
    amplitude = kernel @ wf.psi * wf.grid.dx / np.sqrt(2.0 * np.pi * params.hbar)
    return np.abs(amplitude) ** 2
