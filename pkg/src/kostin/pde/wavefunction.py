"""Gridded wavefunctions, Gaussian states and their observables."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft

from kostin.errors import GridError, PacketEscapedError
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PacketState, PhysicalParams

# Half-width of the packet, in units of a, that must fit on each side of q
GRID_MARGIN = 8.0
# Largest tolerated deviation of the normalization factor from one
NORM_CORRECTION_TOL = 1e-9


@dataclass(frozen=True)
class GridWavefunction:
    """Complex wavefunction sampled on ``grid`` at time ``t``."""

    grid: GridSpec
    t: float
    psi: np.ndarray

    def __post_init__(self) -> None:
        if self.psi.shape != (self.grid.n_points,):
            raise GridError(
                f"psi has shape {self.psi.shape}, grid has {self.grid.n_points} points",
                "pde",
            )

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.psi) ** 2

    def norm(self) -> float:
        return float(np.sum(self.density) * self.grid.dx)

    def boundary_density(self) -> float:
        """Probability mass on the two outermost grid points."""
        rho = self.density
        return float((rho[0] + rho[-1]) * self.grid.dx)

    def momentum_amplitudes(self) -> np.ndarray:
        """Discrete Fourier amplitudes in FFT order (see ``grid.k``)."""
        return fft.fft(self.psi)


def gaussian_wavefunction(
    params: PhysicalParams, state: PacketState, grid: GridSpec
) -> GridWavefunction:
    """Sample the Gaussian packet of ``state`` on ``grid``, normalized.

    The packet must fit ``GRID_MARGIN`` widths on each side of its center,
    and the grid must resolve it well enough that the discrete
    normalization correction stays within ``1e-9`` of one.
    """
    q, qdot, a, adot = state.q, state.qdot, state.a, state.adot
    x_last = grid.x_min + (grid.n_points - 1) * grid.dx
    if q - GRID_MARGIN * a < grid.x_min or q + GRID_MARGIN * a > x_last:
        raise GridError(
            f"grid [{grid.x_min:g}, {x_last:g}] narrower than q +/- {GRID_MARGIN:g}a"
            f" = [{q - GRID_MARGIN * a:g}, {q + GRID_MARGIN * a:g}]",
            "pde",
            state.t,
        )

    xi = grid.x - q
    envelope = (2.0 * np.pi * a * a) ** -0.25 * np.exp(-(xi**2) / (4.0 * a * a))
    phase = (params.mass / params.hbar) * (adot / (2.0 * a) * xi**2 + qdot * xi)
    psi = envelope * np.exp(1j * phase)

    norm = float(np.sum(np.abs(psi) ** 2) * grid.dx)
    correction = 1.0 / math.sqrt(norm)
    if abs(correction - 1.0) > NORM_CORRECTION_TOL:
        raise GridError(
            f"normalization correction {correction:.12f} too far from 1"
            " (grid too coarse for the packet width)",
            "pde",
            state.t,
        )
    return GridWavefunction(grid, state.t, psi * correction)


def ground_state(params: PhysicalParams, omega0: float, grid: GridSpec) -> GridWavefunction:
    """Harmonic-oscillator ground state, the Gaussian with ``a^2 = hbar / (2 m omega0)``."""
    a = math.sqrt(params.hbar / (2.0 * params.mass * omega0))
    return gaussian_wavefunction(params, PacketState(a=a), grid)


def default_grid(
    params: PhysicalParams,
    state: PacketState,
    t_end: float,
    n_points: int = 1024,
) -> GridSpec:
    """Grid for free or confined runs of a Gaussian packet.

    The domain spans ``q0 +/- 20 a0`` extended by the classical drift
    ``qdot0 / nu`` (``qdot0 t_end`` without friction); ``dt`` keeps
    ``hbar k_max^2 dt / (2m) < 0.5`` and ``nu dt < 0.01`` and divides the
    run into an integer number of steps.
    """
    drift = state.qdot / params.nu if params.nu > 0 else state.qdot * (t_end - state.t)
    x_min = state.q - 20.0 * state.a + min(drift, 0.0)
    x_max = state.q + 20.0 * state.a + max(drift, 0.0)
    dt = stable_time_step(params, x_max - x_min, n_points, t_end - state.t)
    return GridSpec(x_min=x_min, x_max=x_max, n_points=n_points, dt=dt, t_end=t_end)


def stable_time_step(
    params: PhysicalParams, length: float, n_points: int, duration: float
) -> float:
    """Largest step with ``hbar k_max^2 dt / (2m) < 0.5`` and ``nu dt < 0.01``.

    When ``duration > 0`` the step is shortened to divide it evenly.
    """
    k_max = np.pi * n_points / length
    dt = 0.99 * params.mass / (params.hbar * k_max**2)
    if params.nu > 0:
        dt = min(dt, 0.99 * 0.01 / params.nu)
    if duration > 0:
        dt = duration / math.ceil(duration / dt)
    return dt


def check_boundary(wf: GridWavefunction, tolerances: Tolerances = DEFAULT_TOLERANCES) -> None:
    """Raise if the packet touches the edge of the grid."""
    boundary = wf.boundary_density()
    if boundary >= tolerances.boundary_density:
        raise PacketEscapedError(boundary, wf.t)
