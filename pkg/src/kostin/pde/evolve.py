"""Fixed-step evolution of a gridded wavefunction with observers."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from kostin.errors import NumericalError
from kostin.export import write_csv
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances

from .madelung import bohm_potential, madelung_decompose
from .observables import Observables, ObservableSeries, observables
from .stepper import kostin_step
from .wavefunction import GridWavefunction, check_boundary

if TYPE_CHECKING:
    from pathlib import Path

    from kostin.potentials import Potential
    from kostin.types import PhysicalParams

logger = logging.getLogger(__name__)

Observer = Callable[[GridWavefunction, Observables], None]

# Target number of recorded observations when no stride is given
DEFAULT_OBSERVATIONS = 500


@dataclass(frozen=True)
class EvolutionResult:
    """Observable series and final state of a PDE run.

    A run stopped by a numerical failure keeps everything recorded up to
    the last good step; ``truncated`` is set and ``error`` holds the
    failure.
    """

    series: ObservableSeries
    final: GridWavefunction
    snapshots: tuple[GridWavefunction, ...] = ()
    truncated: bool = False
    error: NumericalError | None = field(default=None, compare=False)

    def raise_if_truncated(self) -> None:
        if self.error is not None:
            raise self.error


def evolve(
    params: PhysicalParams,
    pot: Potential,
    initial: GridWavefunction,
    observers: Sequence[Observer] = (),
    *,
    observe_every: int | None = None,
    snapshot_times: Sequence[float] = (),
    include_mean_phase: bool = True,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> EvolutionResult:
    """Step ``initial`` to ``grid.t_end`` and record observables.

    Observables are recorded at the start, every ``observe_every`` steps
    and at the final step; each observer is called with the state and its
    observables. The last step is shortened so the run ends at ``t_end``;
    ``snapshot_times`` are rounded to the nearest step.
    """
    grid = initial.grid
    n_steps = grid.n_steps(initial.t)
    stride = observe_every or max(1, n_steps // DEFAULT_OBSERVATIONS)
    times = grid.sample_times(initial.t)
    snapshot_steps = {int(np.argmin(np.abs(times - t))) for t in snapshot_times}

    records: list[Observables] = []
    snapshots: list[GridWavefunction] = []

    def record(wf: GridWavefunction, step: int) -> None:
        obs = observables(params, wf, tolerances)
        records.append(obs)
        for observer in observers:
            observer(wf, obs)
        if step in snapshot_steps:
            snapshots.append(wf)

    logger.debug(
        "evolving %d steps of dt=%g on %d points", n_steps, grid.dt, grid.n_points
    )
    wf = initial
    error: NumericalError | None = None
    try:
        check_boundary(wf, tolerances)
        record(wf, 0)
        for step in range(1, n_steps + 1):
            step_dt = min(grid.dt, grid.t_end - wf.t) if step == n_steps else None
            wf = kostin_step(
                params,
                pot,
                wf,
                step_dt,
                include_mean_phase=include_mean_phase,
                tolerances=tolerances,
            )
            check_boundary(wf, tolerances)
            if step % stride == 0 or step == n_steps or step in snapshot_steps:
                record(wf, step)
    except NumericalError as exc:
        logger.warning("evolution stopped: %s", exc)
        error = exc

    return EvolutionResult(
        series=ObservableSeries(tuple(records)),
        final=wf,
        snapshots=tuple(snapshots),
        truncated=error is not None,
        error=error,
    )


def write_snapshot_csv(
    params: PhysicalParams,
    wf: GridWavefunction,
    path: Path,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Path:
    """Write ``x, rho, S, v, Q, re_psi, im_psi`` of one snapshot."""
    hydro = madelung_decompose(params, wf, tolerances)
    return write_csv(
        path,
        {
            "x": wf.x,
            "rho": hydro.rho,
            "S": hydro.phase,
            "v": hydro.velocity,
            "Q": bohm_potential(params, wf, tolerances),
            "re_psi": np.real(wf.psi),
            "im_psi": np.imag(wf.psi),
        },
    )
