"""Shared domain types."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import fft

from kostin.errors import ParameterError

if TYPE_CHECKING:
    from kostin.potentials import Potential

# Relative shortfall below which a remainder step is dropped
STEP_SLACK = 1e-9


def _require_finite(value: float, field: str) -> None:
    if not math.isfinite(value):
        raise ParameterError(f"must be finite, got {value!r}", field)


@dataclass(frozen=True, slots=True)
class PhysicalParams:
    """Reduced Planck constant, mass and damping rate.

    ``nu = 0`` is the conservative limit.
    """

    hbar: float = 1.0
    mass: float = 1.0
    nu: float = 0.0

    def __post_init__(self) -> None:
        for name in ("hbar", "mass", "nu"):
            _require_finite(getattr(self, name), name)
        if self.hbar <= 0:
            raise ParameterError(f"must be > 0, got {self.hbar}", "hbar")
        if self.mass <= 0:
            raise ParameterError(f"must be > 0, got {self.mass}", "mass")
        if self.nu < 0:
            raise ParameterError(f"must be >= 0, got {self.nu}", "nu")

    @property
    def is_conservative(self) -> bool:
        return self.nu == 0.0

    def omega_sq(self, pot: Potential, q: float, t: float = 0.0) -> float:
        """Local squared frequency ``V''(q, t) / m``."""
        return float(pot.curvature(q, t)) / self.mass

    def __str__(self) -> str:
        return f"(hbar={self.hbar:g}, m={self.mass:g}, nu={self.nu:g})"


@dataclass(frozen=True, slots=True)
class PacketState:
    """Reduced Gaussian description of a packet at time ``t``.

    ``q`` is the center of mass, ``a`` the width (standard deviation of the
    density), dotted names are time derivatives.
    """

    t: float = 0.0
    q: float = 0.0
    qdot: float = 0.0
    a: float = 1.0
    adot: float = 0.0

    def __post_init__(self) -> None:
        for name in ("t", "q", "qdot", "a", "adot"):
            _require_finite(getattr(self, name), name)
        if self.a <= 0:
            raise ParameterError(f"width must be > 0, got {self.a}", "a")

    def as_array(self) -> np.ndarray:
        """State vector ``(q, qdot, a, adot)``."""
        return np.array([self.q, self.qdot, self.a, self.adot], dtype=float)

    @classmethod
    def from_array(cls, t: float, y: np.ndarray) -> PacketState:
        return cls(
            t=float(t), q=float(y[0]), qdot=float(y[1]), a=float(y[2]), adot=float(y[3])
        )

    def __str__(self) -> str:
        return (
            f"t={self.t:g}: q={self.q:g}, qdot={self.qdot:g}, "
            f"a={self.a:g}, adot={self.adot:g}"
        )


@dataclass(frozen=True, slots=True)
class GridSpec:
    """Uniform periodic spatial grid plus time stepping.

    The grid holds ``n_points`` abscissae ``x_min + j*dx`` with
    ``dx = (x_max - x_min) / n_points``; ``x_max`` itself is the periodic
    image of ``x_min`` and is not sampled.
    """

    x_min: float = -20.0
    x_max: float = 20.0
    n_points: int = 1024
    dt: float = 1e-3
    t_end: float = 1.0

    def __post_init__(self) -> None:
        for name in ("x_min", "x_max", "dt", "t_end"):
            _require_finite(getattr(self, name), name)
        if not self.x_min < self.x_max:
            raise ParameterError(
                f"x_min={self.x_min} must be < x_max={self.x_max}", "x_min"
            )
        if self.n_points < 16:
            raise ParameterError(f"must be >= 16, got {self.n_points}", "n_points")
        if self.dt <= 0:
            raise ParameterError(f"must be > 0, got {self.dt}", "dt")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    @property
    def k(self) -> np.ndarray:
        """Angular wave numbers in FFT order."""
        return 2.0 * np.pi * fft.fftfreq(self.n_points, d=self.dx)

    @property
    def k_max(self) -> float:
        return np.pi / self.dx

    @property
    def is_power_of_two(self) -> bool:
        return self.n_points & (self.n_points - 1) == 0

    def n_steps(self, t_start: float = 0.0) -> int:
        """Number of steps from ``t_start`` to ``t_end``.

        Every step but the last has size ``dt``; the last is shortened when
        ``dt`` does not divide the span.
        """
        span = (self.t_end - t_start) / self.dt
        return max(math.ceil(span - STEP_SLACK), 0)

    def sample_times(self, t_start: float = 0.0) -> np.ndarray:
        """Times ``t_start + k*dt``, ending exactly at ``t_end``."""
        n_steps = self.n_steps(t_start)
        times = t_start + self.dt * np.arange(n_steps + 1)
        if n_steps:
            times[-1] = self.t_end
        return times
