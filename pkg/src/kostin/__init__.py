"""Kostin: dissipative quantum wave packets.

Simulates the Kostin (Schrödinger-Langevin) equation at three levels: the
reduced Gaussian moment equations, the friction-dominated perturbation
series for the free width, and the full nonlinear equation on a grid,
with Wigner phase-space diagnostics to compare them.
"""

from __future__ import annotations

from kostin.cli import main
from kostin.errors import KostinError
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PacketState, PhysicalParams

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "GridSpec",
    "KostinError",
    "PacketState",
    "PhysicalParams",
    "Tolerances",
    "main",
]
