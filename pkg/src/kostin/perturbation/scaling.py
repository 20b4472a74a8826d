"""Friction-dominated rescaling ``t -> nu t``, ``a -> (m nu / hbar)^(1/2) a``.

In the rescaled variables the free width equation reads
``a'' + a' = 1 / (4 a^3)``, i.e. the physical equation with
``hbar = m = nu = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from kostin.errors import DomainError
from kostin.types import PacketState, PhysicalParams

DIMENSIONLESS = PhysicalParams(hbar=1.0, mass=1.0, nu=1.0)


@dataclass(frozen=True, slots=True)
class ScaledWidth:
    """Dimensionless time, width and width velocity."""

    tau: float
    a: float
    adot: float


def _scales(params: PhysicalParams) -> tuple[float, float]:
    if params.nu <= 0:
        raise DomainError("friction-dominated scaling requires nu > 0")
    time_scale = 1.0 / params.nu
    length_scale = math.sqrt(params.hbar / (params.mass * params.nu))
    return time_scale, length_scale


def rescale(params: PhysicalParams, state: PacketState) -> ScaledWidth:
    """Map physical ``(t, a, adot)`` to dimensionless ``(tau, a, da/dtau)``."""
    time_scale, length_scale = _scales(params)
    return ScaledWidth(
        tau=state.t / time_scale,
        a=state.a / length_scale,
        adot=state.adot * time_scale / length_scale,
    )


def unrescale(params: PhysicalParams, scaled: ScaledWidth) -> tuple[float, float, float]:
    """Inverse of :func:`rescale`; returns physical ``(t, a, adot)``."""
    time_scale, length_scale = _scales(params)
    return (
        scaled.tau * time_scale,
        scaled.a * length_scale,
        scaled.adot * length_scale / time_scale,
    )


def rescale_time(params: PhysicalParams, t):
    time_scale, _ = _scales(params)
    return t / time_scale


def length_scale(params: PhysicalParams) -> float:
    return _scales(params)[1]
