"""Moments of a gridded wavefunction."""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import PhysicalParams

from .madelung import madelung_decompose
from .wavefunction import GridWavefunction


@dataclass(frozen=True, slots=True)
class Observables:
    """Position and momentum moments at time ``t``.

    ``kurtosis`` is the excess kurtosis of the density (zero for a
    Gaussian); momentum moments use the discrete Fourier transform.
    """

    t: float
    norm: float
    mean_x: float
    delta_x: float
    mean_p: float
    delta_p: float
    mean_p2: float
    kurtosis: float
    mean_phase: float

    @property
    def uncertainty_product(self) -> float:
        return self.delta_x * self.delta_p


def observables(
    params: PhysicalParams,
    wf: GridWavefunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> Observables:
    dx = wf.grid.dx
    x = wf.x
    rho = wf.density
    norm = float(np.sum(rho) * dx)

    weights = rho / np.sum(rho)
    mean_x = float(np.sum(weights * x))
    centered = x - mean_x
    var_x = float(np.sum(weights * centered**2))
    fourth = float(np.sum(weights * centered**4))
    kurtosis = fourth / var_x**2 - 3.0

    p = params.hbar * wf.grid.k
    spectrum = np.abs(wf.momentum_amplitudes()) ** 2
    spectrum /= np.sum(spectrum)
    mean_p = float(np.sum(spectrum * p))
    mean_p2 = float(np.sum(spectrum * p**2))
    var_p = max(mean_p2 - mean_p**2, 0.0)

    hydro = madelung_decompose(params, wf, tolerances)
    return Observables(
        t=wf.t,
        norm=norm,
        mean_x=mean_x,
        delta_x=float(np.sqrt(var_x)),
        mean_p=mean_p,
        delta_p=float(np.sqrt(var_p)),
        mean_p2=mean_p2,
        kurtosis=kurtosis,
        mean_phase=hydro.mean_phase(dx),
    )


OBSERVABLE_FIELDS = tuple(f.name for f in fields(Observables))


@dataclass(frozen=True)
class ObservableSeries:
    """Time series of :class:`Observables` as columns."""

    records: tuple[Observables, ...]

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.records], dtype=float)

    @property
    def t(self) -> np.ndarray:
        return self.column("t")

    @property
    def mean_x(self) -> np.ndarray:
        return self.column("mean_x")

    @property
    def delta_x(self) -> np.ndarray:
        return self.column("delta_x")

    @property
    def mean_p(self) -> np.ndarray:
        return self.column("mean_p")

    @property
    def norm(self) -> np.ndarray:
        return self.column("norm")

    def columns(self) -> dict[str, np.ndarray]:
        return {name: self.column(name) for name in OBSERVABLE_FIELDS}
