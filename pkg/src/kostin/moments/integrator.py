"""Adaptive integration of the center-of-mass and width equations.

The coupled first-order system for ``y = (q, qdot, a, adot)`` is

    q'' + nu q' = -V'(q, t) / m
    a'' + nu a' + (V''(q, t) / m) a = hbar^2 / (4 m^2 a^3)

integrated with the Dormand-Prince 5(4) pair (``scipy.integrate.RK45``),
driven step by step so that every accepted step can be guarded and sampled
through its dense output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import RK45, trapezoid

from kostin.errors import ParameterError, SingularityError, StiffnessError
from kostin.export import write_csv
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PacketState, PhysicalParams

from .closed_form import width_energy

if TYPE_CHECKING:
    from collections.abc import Callable
    from pathlib import Path

    from kostin.potentials import Potential

logger = logging.getLogger(__name__)

# RK45 spends two evaluations on start-up and six per attempted step.
_STARTUP_EVALS = 2
_EVALS_PER_ATTEMPT = 6


@dataclass(frozen=True, slots=True)
class StepStats:
    """Bookkeeping of the adaptive integration."""

    accepted: int = 0
    rejected: int = 0
    max_error: float = 0.0
    """Largest scaled local error estimate (RMS norm, <= 1 when accepted)."""

    def __add__(self, other: StepStats) -> StepStats:
        return StepStats(
            self.accepted + other.accepted,
            self.rejected + other.rejected,
            max(self.max_error, other.max_error),
        )


@dataclass(frozen=True)
class MomentTrajectory:
    """Sampled solution of the reduced Gaussian dynamics.

    ``y`` has rows ``(q, qdot, a, adot)`` sampled at ``times``. The accepted
    step nodes of the width integration are kept in ``step_times`` /
    ``step_width`` (rows ``a, adot``) for step-level checks.
    """

    params: PhysicalParams
    potential: Potential
    times: np.ndarray
    y: np.ndarray
    step_stats: StepStats
    step_times: np.ndarray
    step_width: np.ndarray

    @property
    def q(self) -> np.ndarray:
        return self.y[0]

    @property
    def qdot(self) -> np.ndarray:
        return self.y[1]

    @property
    def a(self) -> np.ndarray:
        return self.y[2]

    @property
    def adot(self) -> np.ndarray:
        return self.y[3]

    @cached_property
    def states(self) -> tuple[PacketState, ...]:
        return tuple(
            PacketState.from_array(t, self.y[:, i]) for i, t in enumerate(self.times)
        )

    @property
    def final(self) -> PacketState:
        return PacketState.from_array(self.times[-1], self.y[:, -1])

    def width_energy(self) -> np.ndarray:
        """Width energy at the samples."""
        return width_energy(self.params, self.a, self.adot)

    def step_width_energy(self) -> np.ndarray:
        """Width energy at every accepted step."""
        return width_energy(self.params, self.step_width[0], self.step_width[1])

    def columns(self) -> dict[str, np.ndarray]:
        return {
            "t": self.times,
            "q": self.q,
            "qdot": self.qdot,
            "a": self.a,
            "adot": self.adot,
            "E_w": self.width_energy(),
        }


def _center_width_rhs(params: PhysicalParams, pot: Potential) -> Callable:
    m = params.mass
    nu = params.nu
    pinney = params.hbar**2 / (4.0 * m * m)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        q, qdot, a, adot = y
        _, v1, _ = pot.evaluate(q, t)
        return np.array([
            qdot,
            -nu * qdot - v1 / m,
            adot,
            -nu * adot - params.omega_sq(pot, q, t) * a + pinney / a**3,
        ])

    return rhs


def _center_rhs(params: PhysicalParams, pot: Potential) -> Callable:
    m = params.mass
    nu = params.nu

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        _, v1, _ = pot.evaluate(y[0], t)
        return np.array([y[1], -nu * y[1] - v1 / m])

    return rhs


def _width_rhs(params: PhysicalParams) -> Callable:
    nu = params.nu
    pinney = params.hbar**2 / (4.0 * params.mass**2)

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.array([y[1], -nu * y[1] + pinney / y[0] ** 3])

    return rhs


def _local_error(solver: RK45) -> float:
    """Scaled RMS error estimate of the step just accepted.

    Reads the private ``h_previous``, ``K``, ``E`` and ``y_old`` attributes of
    scipy's ``RungeKutta``; scipy is pinned below 2 for this.
    """
    err = solver.h_previous * (solver.K.T @ solver.E)
    scale = solver.atol + np.maximum(np.abs(solver.y_old), np.abs(solver.y)) * solver.rtol
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def _integrate(
    rhs: Callable,
    t0: float,
    y0: np.ndarray,
    samples: np.ndarray,
    rtol: float,
    atol: float,
    a_index: int | None,
    a_floor: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, StepStats]:
    t_end = samples[-1]
    out = np.empty((len(y0), len(samples)))
    step_t = [t0]
    step_y = [y0.copy()]

    idx = 0
    while idx < len(samples) and samples[idx] <= t0:
        out[:, idx] = y0
        idx += 1
    if t_end <= t0:
        return out, np.array(step_t), np.array(step_y).T, StepStats()

    solver = RK45(rhs, t0, y0, t_end, rtol=rtol, atol=atol)
    max_error = 0.0
    while solver.status == "running":
        message = solver.step()
        if solver.status == "failed":
            raise StiffnessError(message or "step size underflow", "moments", solver.t)
        if a_index is not None and not solver.y[a_index] > a_floor:
            raise SingularityError(float(solver.y[a_index]), a_floor, solver.t)
        max_error = max(max_error, _local_error(solver))
        if idx < len(samples) and samples[idx] <= solver.t:
            dense = solver.dense_output()
            while idx < len(samples) and samples[idx] <= solver.t:
                out[:, idx] = dense(samples[idx])
                idx += 1
        step_t.append(solver.t)
        step_y.append(solver.y.copy())

    accepted = len(step_t) - 1
    rejected = max((solver.nfev - _STARTUP_EVALS) // _EVALS_PER_ATTEMPT - accepted, 0)
    stats = StepStats(accepted, rejected, max_error)
    return out, np.array(step_t), np.array(step_y).T, stats


def _sample_times(init: PacketState, grid: GridSpec, sample_times) -> np.ndarray:
    if sample_times is None:
        samples = grid.sample_times(init.t)
    else:
        samples = np.asarray(sample_times, dtype=float)
        if np.any(np.diff(samples) <= 0):
            raise ParameterError("sample times must be strictly increasing", "sample_times")
    samples = samples[(samples >= init.t) & (samples <= grid.t_end)]
    if samples.size == 0 or samples[0] > init.t:
        samples = np.concatenate(([init.t], samples))
    if samples[-1] < grid.t_end:
        samples = np.concatenate((samples, [grid.t_end]))
    return samples


def integrate_moments(
    params: PhysicalParams,
    pot: Potential,
    init: PacketState,
    grid: GridSpec,
    rtol: float | None = None,
    atol: float | None = None,
    *,
    sample_times=None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> MomentTrajectory:
    """Integrate center and width from ``init.t`` to ``grid.t_end``.

    Samples are taken every ``grid.dt`` unless ``sample_times`` is given;
    ``init.t`` and ``grid.t_end`` are always included. When the potential
    has no curvature the width does not feel the center, and the two pairs
    are integrated as independent systems.
    """
    rtol = tolerances.rtol if rtol is None else rtol
    atol = tolerances.atol if atol is None else atol
    if rtol <= 0 or atol <= 0:
        raise ParameterError("tolerances must be > 0", "rtol" if rtol <= 0 else "atol")

    samples = _sample_times(init, grid, sample_times)
    y0 = init.as_array()

    if pot.is_curvature_free:
        center, _, _, center_stats = _integrate(
            _center_rhs(params, pot), init.t, y0[:2], samples, rtol, atol, None, 0.0
        )
        width, step_t, step_w, width_stats = _integrate(
            _width_rhs(params), init.t, y0[2:], samples, rtol, atol, 0, tolerances.a_floor
        )
        y = np.vstack((center, width))
        stats = center_stats + width_stats
    else:
        y, step_t, step_y, stats = _integrate(
            _center_width_rhs(params, pot),
            init.t,
            y0,
            samples,
            rtol,
            atol,
            2,
            tolerances.a_floor,
        )
        step_w = step_y[2:]

    logger.debug(
        "integrated moments to t=%g: %d accepted, %d rejected, max error %.3g",
        samples[-1],
        stats.accepted,
        stats.rejected,
        stats.max_error,
    )
    return MomentTrajectory(params, pot, samples, y, stats, step_t, step_w)


def lyapunov_decay_coefficient(traj: MomentTrajectory) -> float:
    """Measured ``kappa`` in ``dE_w/dt = -kappa adot^2`` over the whole run.

    Only meaningful for curvature-free potentials; direct differentiation
    of the width equation gives ``kappa = nu``.
    """
    energy = traj.step_width_energy()
    dissipation = trapezoid(traj.step_width[1] ** 2, traj.step_times)
    if dissipation == 0:
        return 0.0
    return float((energy[0] - energy[-1]) / dissipation)


def write_trajectory_csv(traj: MomentTrajectory, path: Path) -> Path:
    """Write ``t, q, qdot, a, adot, E_w`` at the samples."""
    return write_csv(path, traj.columns())
