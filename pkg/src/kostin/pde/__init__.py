"""Split-operator solver for the Kostin equation on a periodic grid."""

from __future__ import annotations

from .evolve import EvolutionResult, Observer, evolve, write_snapshot_csv
from .madelung import (
    HydroFields,
    bohm_potential,
    continuity_residual,
    madelung_decompose,
    probability_current,
    unwrap_phase,
)
from .observables import Observables, ObservableSeries, observables
from .stepper import kostin_step
from .wavefunction import (
    GridWavefunction,
    check_boundary,
    default_grid,
    gaussian_wavefunction,
    ground_state,
    stable_time_step,
)

__all__ = [
    "EvolutionResult",
    "GridWavefunction",
    "HydroFields",
    "ObservableSeries",
    "Observables",
    "Observer",
    "bohm_potential",
    "check_boundary",
    "continuity_residual",
    "default_grid",
    "evolve",
    "gaussian_wavefunction",
    "ground_state",
    "kostin_step",
    "madelung_decompose",
    "observables",
    "probability_current",
    "stable_time_step",
    "unwrap_phase",
    "write_snapshot_csv",
]
