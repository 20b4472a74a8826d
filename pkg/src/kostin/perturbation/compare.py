"""Perturbative width in physical units and against the numeric width."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from kostin.export import write_csv
from kostin.moments import integrate_moments
from kostin.potentials import Free
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PacketState, PhysicalParams

from .constants import solve_constants
from .scaling import DIMENSIONLESS, length_scale, rescale, rescale_time
from .series import PerturbationConstants, perturbative_trajectory, perturbative_width

if TYPE_CHECKING:
    from pathlib import Path

# Oracle tolerances for the numeric width
ORACLE_RTOL = 1e-12
ORACLE_ATOL = 1e-14


def solve_constants_physical(
    params: PhysicalParams,
    a0: float,
    adot0: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> list[PerturbationConstants]:
    """Constants for physical initial width ``a0`` and velocity ``adot0``."""
    scaled = rescale(params, PacketState(a=a0, adot=adot0))
    return solve_constants(scaled.a, scaled.adot, tolerances)


def perturbative_width_physical(
    params: PhysicalParams, consts: PerturbationConstants, t
):
    """Perturbative width in physical units at physical times ``t``."""
    return length_scale(params) * np.asarray(
        perturbative_width(consts, rescale_time(params, t))
    )


def numeric_width(a0: float, adot0: float, taus) -> np.ndarray:
    """High-accuracy dimensionless free width at ``taus`` (``taus[0] >= 0``)."""
    taus = np.asarray(taus, dtype=float)
    grid = GridSpec(dt=max(float(taus[-1]), 1.0), t_end=float(taus[-1]))
    traj = integrate_moments(
        DIMENSIONLESS,
        Free(),
        PacketState(t=0.0, a=a0, adot=adot0),
        grid,
        rtol=ORACLE_RTOL,
        atol=ORACLE_ATOL,
        sample_times=taus,
    )
    # integrate_moments always samples tau = 0; drop it when not requested.
    return traj.a[1:] if taus[0] > 0 else traj.a


@dataclass(frozen=True)
class PerturbationComparison:
    """Perturbative versus numeric dimensionless width."""

    consts: PerturbationConstants
    tau: np.ndarray
    alpha0: np.ndarray
    alpha1: np.ndarray
    numeric: np.ndarray
    tau_min: float

    @property
    def width(self) -> np.ndarray:
        return self.alpha0 + self.alpha1

    @property
    def relative_deviation(self) -> np.ndarray:
        return np.abs(self.width - self.numeric) / self.numeric

    @property
    def valid(self) -> np.ndarray:
        return self.tau >= self.tau_min

    def max_deviation(self, after: float | None = None) -> float:
        """Largest relative deviation for ``tau >= after`` (default ``tau_min``)."""
        after = self.tau_min if after is None else after
        return float(np.max(self.relative_deviation[self.tau >= after]))

    def columns(self) -> dict[str, np.ndarray]:
        return {
            "tau": self.tau,
            "alpha0": self.alpha0,
            "alpha1": self.alpha1,
            "width": self.width,
            "numeric": self.numeric,
            "rel_dev": self.relative_deviation,
        }


def compare_with_numeric(
    consts: PerturbationConstants,
    a0: float,
    adot0: float,
    taus,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PerturbationComparison:
    series = perturbative_trajectory(consts, taus, tolerances.tau_min)
    return PerturbationComparison(
        consts=consts,
        tau=series.tau,
        alpha0=series.alpha0,
        alpha1=series.alpha1,
        numeric=numeric_width(a0, adot0, series.tau),
        tau_min=tolerances.tau_min,
    )


def write_comparison_csv(comparison: PerturbationComparison, path: Path) -> Path:
    return write_csv(path, comparison.columns())
