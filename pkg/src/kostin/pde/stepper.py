"""Strang-split time step of the Kostin equation.

One step of size ``dt`` is a local half-step, a full kinetic step in
Fourier space and a second local half-step. The local part

    dS/dt = -V - nu (S - <S>)

keeps the density fixed and is solved exactly: ``<S>`` advances with
``-<V>`` while ``S - <S>`` relaxes as ``exp(-nu t)`` towards
``-(V - <V>) / nu``. The first half-step uses ``V`` at ``t``, the second
at ``t + dt``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import fft

from kostin.errors import NormDriftError, ParameterError
from kostin.potentials import Potential
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PhysicalParams

from .madelung import unwrap_phase
from .wavefunction import GridWavefunction

# Slack allowed when comparing a step against grid.dt
DT_SLACK = 1e-12


@lru_cache(maxsize=16)
def _kinetic_propagator(params: PhysicalParams, grid: GridSpec, dt: float) -> np.ndarray:
    k = grid.k
    return np.exp(-0.5j * params.hbar * k * k * dt / params.mass)


def _local_half_step(
    params: PhysicalParams,
    pot: Potential,
    psi: np.ndarray,
    grid: GridSpec,
    t: float,
    h: float,
    *,
    include_mean_phase: bool,
    tolerances: Tolerances,
) -> np.ndarray:
    potential = np.asarray(pot.value(grid.x, t), dtype=float)
    if params.nu == 0.0:
        return psi * np.exp(-1j * potential * h / params.hbar)

    rho = np.abs(psi) ** 2
    mask = rho > tolerances.rho_cut
    phase = params.hbar * unwrap_phase(psi, mask, t)
    if include_mean_phase:
        weights = rho / np.sum(rho)
        mean_phase = float(np.sum(weights * phase))
        mean_potential = float(np.sum(weights * potential))
    else:
        mean_phase = mean_potential = 0.0

    relax = -math.expm1(-params.nu * h)
    increment = (
        -mean_potential * h
        - (phase - mean_phase) * relax
        - (potential - mean_potential) * relax / params.nu
    )
    return psi * np.exp(1j * increment / params.hbar)


def kostin_step(
    params: PhysicalParams,
    pot: Potential,
    wf: GridWavefunction,
    dt: float | None = None,
    *,
    include_mean_phase: bool = True,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> GridWavefunction:
    """Advance ``wf`` by one step ``dt`` (default ``grid.dt``).

    ``include_mean_phase=False`` drops the ``<S>`` term; this changes only
    the global phase of the result.
    """
    grid = wf.grid
    dt = grid.dt if dt is None else dt
    if not 0 < dt <= grid.dt * (1 + DT_SLACK):
        raise ParameterError(f"step {dt} must be in (0, grid.dt={grid.dt}]", "dt")

    h = 0.5 * dt
    options = {"include_mean_phase": include_mean_phase, "tolerances": tolerances}
    psi = _local_half_step(params, pot, wf.psi, grid, wf.t, h, **options)
    psi = fft.ifft(fft.fft(psi) * _kinetic_propagator(params, grid, dt))
    psi = _local_half_step(params, pot, psi, grid, wf.t + dt, h, **options)

    result = GridWavefunction(grid, wf.t + dt, psi)
    drift = abs(result.norm() - wf.norm())
    if drift > tolerances.norm_step_bound:
        raise NormDriftError(drift, result.t)
    return result
