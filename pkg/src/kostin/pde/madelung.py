"""Hydrodynamic (Madelung) form of a gridded wavefunction.

The phase is unwrapped outward from the density maximum. Neighbor phase
differences are wrapped into ``(-pi, pi]``; where either neighbor has
density at or below ``rho_cut`` the difference is taken as zero, so the
phase continues as a constant through near-nodes and tails.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft

from kostin.errors import GridError, UnwrapError
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import PhysicalParams

from .wavefunction import GridWavefunction

# Distance from pi under which a wrapped phase jump is ambiguous
PI_JUMP_TOL = 1e-12


@dataclass(frozen=True)
class HydroFields:
    """Density, action phase and velocity on the grid.

    ``velocity`` is meaningful only where ``velocity_mask`` holds, i.e. at
    unmasked points whose two neighbors are unmasked too; it is zero
    elsewhere.
    """

    rho: np.ndarray
    phase: np.ndarray
    velocity: np.ndarray
    mask: np.ndarray
    velocity_mask: np.ndarray

    def mean_phase(self, dx: float) -> float:
        """Density-weighted phase ``<S>`` (normalized by the norm)."""
        weight = np.sum(self.rho) * dx
        return float(np.sum(self.rho * self.phase) * dx / weight)

    @property
    def current(self) -> np.ndarray:
        return self.rho * self.velocity


def unwrap_phase(
    psi: np.ndarray, mask: np.ndarray, t: float | None = None
) -> np.ndarray:
    """Continuous phase of ``psi`` (radians), anchored at the density maximum."""
    theta = np.angle(psi)
    jumps = np.diff(theta)
    # Wrap into (-pi, pi].
    wrapped = np.pi - np.mod(np.pi - jumps, 2.0 * np.pi)
    pairs = mask[:-1] & mask[1:]

    ambiguous = np.flatnonzero(pairs & (np.abs(np.abs(wrapped) - np.pi) <= PI_JUMP_TOL))
    if ambiguous.size:
        raise UnwrapError(int(ambiguous[0]), t)
    steps = np.where(pairs, wrapped, 0.0)

    anchor = int(np.argmax(np.abs(psi)))
    phase = np.empty_like(theta)
    phase[anchor] = theta[anchor]
    phase[anchor + 1 :] = theta[anchor] + np.cumsum(steps[anchor:])
    phase[:anchor] = theta[anchor] - np.cumsum(steps[:anchor][::-1])[::-1]
    return phase


def madelung_decompose(
    params: PhysicalParams,
    wf: GridWavefunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> HydroFields:
    """Split ``wf`` into density ``rho``, phase ``S`` and velocity ``S' / m``."""
    rho = wf.density
    mask = rho > tolerances.rho_cut
    if not mask.any():
        raise GridError(
            f"density nowhere above rho_cut={tolerances.rho_cut:g}", "pde", wf.t
        )

    phase = params.hbar * unwrap_phase(wf.psi, mask, wf.t)

    velocity_mask = mask.copy()
    velocity_mask[1:] &= mask[:-1]
    velocity_mask[:-1] &= mask[1:]
    velocity_mask[0] = velocity_mask[-1] = False
    velocity = np.gradient(phase, wf.grid.dx) / params.mass
    velocity = np.where(velocity_mask, velocity, 0.0)

    return HydroFields(
        rho=rho,
        phase=phase,
        velocity=velocity,
        mask=mask,
        velocity_mask=velocity_mask,
    )


def bohm_potential(
    params: PhysicalParams,
    wf: GridWavefunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Quantum potential ``-(hbar^2 / 2m) (sqrt rho)'' / sqrt rho``.

    The second derivative is spectral; masked points are set to zero.
    """
    amplitude = np.abs(wf.psi)
    k = wf.grid.k
    curvature = fft.ifft(-(k**2) * fft.fft(amplitude)).real
    mask = amplitude**2 > tolerances.rho_cut
    safe = np.where(mask, amplitude, 1.0)
    return np.where(
        mask, -(params.hbar**2) / (2.0 * params.mass) * curvature / safe, 0.0
    )


def probability_current(params: PhysicalParams, wf: GridWavefunction) -> np.ndarray:
    """``j = (hbar / m) Im(psi* psi')`` with a spectral derivative."""
    dpsi = fft.ifft(1j * wf.grid.k * fft.fft(wf.psi))
    return params.hbar / params.mass * np.imag(np.conj(wf.psi) * dpsi)


def continuity_residual(
    params: PhysicalParams,
    before: GridWavefunction,
    after: GridWavefunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Relative L2 residual of ``d rho / dt + d(rho v) / dx = 0`` over one step.

    The time derivative is the forward difference between the two
    snapshots; the flux ``rho v`` from the Madelung velocity is averaged
    over both and differentiated by central differences.
    """
    dt = after.t - before.t
    if dt <= 0:
        raise GridError(f"snapshots not ordered in time ({before.t} -> {after.t})", "pde")
    dx = before.grid.dx

    drho_dt = (after.density - before.density) / dt
    flux = 0.5 * (
        madelung_decompose(params, before, tolerances).current
        + madelung_decompose(params, after, tolerances).current
    )
    residual = drho_dt + np.gradient(flux, dx)
    scale = np.linalg.norm(drho_dt)
    if scale == 0.0:
        return float(np.linalg.norm(residual))
    return float(np.linalg.norm(residual) / scale)
