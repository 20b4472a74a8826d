"""Closed-form special cases of the center and width equations.

These are the oracles the adaptive integration is checked against.
"""

from __future__ import annotations

import numpy as np

from kostin.errors import DomainError
from kostin.potentials import Potential
from kostin.types import PacketState, PhysicalParams

# Below this value of nu*t the relaxation factor uses its Taylor form.
SMALL_NU_T = 1e-8


def free_particle_center(params: PhysicalParams, q0: float, qdot0: float, t):
    """Damped free center of mass ``q(t)`` and velocity ``qdot(t)``.

    For ``nu = 0`` this is the ballistic motion ``q0 + qdot0 t``.
    """
    t = np.asarray(t, dtype=float)
    nu = params.nu
    nu_t = nu * t
    relax = np.where(
        nu_t < SMALL_NU_T,
        t * (1.0 - 0.5 * nu_t),
        -np.expm1(-nu_t) / (nu if nu > 0 else 1.0),
    )
    q = q0 + qdot0 * relax
    qdot = qdot0 * np.exp(-nu_t)
    if q.ndim == 0:
        return float(q), float(qdot)
    return q, qdot


def conservative_width_exact(params: PhysicalParams, a0: float, adot0: float, t):
    """Exact undamped free width ``a^2 = (a0 + adot0 t)^2 + hbar^2 t^2 / (4 m^2 a0^2)``."""
    if a0 <= 0:
        raise DomainError(f"initial width must be > 0, got {a0}")
    t = np.asarray(t, dtype=float)
    spread = params.hbar * t / (2.0 * params.mass * a0)
    a = np.hypot(a0 + adot0 * t, spread)
    return float(a) if a.ndim == 0 else a


def conservative_harmonic_width_exact(
    params: PhysicalParams, omega0: float, a0: float, adot0: float, t
):
    """Exact undamped width in a constant harmonic trap.

    Built from the two linear-oscillator solutions ``u`` (``u(0) = a0``,
    ``u'(0) = adot0``) and ``w`` (``w(0) = 0``, ``w'(0) = 1``):
    ``a^2 = u^2 + (hbar / (2 m a0))^2 w^2``. Reduces to the free formula
    for ``omega0 = 0``.
    """
    if a0 <= 0:
        raise DomainError(f"initial width must be > 0, got {a0}")
    t = np.asarray(t, dtype=float)
    w = t * np.sinc(omega0 * t / np.pi)
    u = a0 * np.cos(omega0 * t) + adot0 * w
    a = np.hypot(u, params.hbar / (2.0 * params.mass * a0) * w)
    return float(a) if a.ndim == 0 else a


def asymptotic_width(params: PhysicalParams, t):
    """Damping-dominated width ``(hbar^2 t / (m^2 nu))^(1/4)``.

    Valid once ``nu t >> 1``, where the width acceleration is negligible.
    """
    if params.nu <= 0:
        raise DomainError("asymptotic width requires nu > 0")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("asymptotic width requires t > 0")
    a = (params.hbar**2 * t / (params.mass**2 * params.nu)) ** 0.25
    return float(a) if a.ndim == 0 else a


def width_energy(params: PhysicalParams, a, adot):
    """``adot^2 / 2 + hbar^2 / (8 m^2 a^2)``, vectorised."""
    a = np.asarray(a, dtype=float)
    adot = np.asarray(adot, dtype=float)
    energy = 0.5 * adot**2 + params.hbar**2 / (8.0 * params.mass**2 * a**2)
    return float(energy) if energy.ndim == 0 else energy


def lyapunov_energy(params: PhysicalParams, state: PacketState) -> float:
    """Width energy of ``state``; non-increasing along free damped motion."""
    return width_energy(params, state.a, state.adot)


def damped_oscillator_center(
    params: PhysicalParams, omega0: float, q0: float, qdot0: float, t
):
    """Center of mass in a constant harmonic trap with linear friction.

    Solves ``q'' + nu q' + omega0^2 q = 0`` in the under-, critically and
    over-damped regimes.
    """
    t = np.asarray(t, dtype=float)
    gamma = 0.5 * params.nu
    disc = omega0**2 - gamma**2
    decay = np.exp(-gamma * t)
    drive = qdot0 + gamma * q0
    if disc > 0:
        wd = np.sqrt(disc)
        c, s = np.cos(wd * t), np.sin(wd * t)
        q = decay * (q0 * c + drive / wd * s)
        qdot = decay * (qdot0 * c - (omega0**2 * q0 + gamma * qdot0) / wd * s)
    elif disc < 0:
        sd = np.sqrt(-disc)
        c, s = np.cosh(sd * t), np.sinh(sd * t)
        q = decay * (q0 * c + drive / sd * s)
        qdot = decay * (qdot0 * c - (omega0**2 * q0 + gamma * qdot0) / sd * s)
    else:
        q = decay * (q0 + drive * t)
        qdot = decay * (qdot0 - gamma * drive * t)
    if q.ndim == 0:
        return float(q), float(qdot)
    return q, qdot


def pinney_equilibrium_width(params: PhysicalParams, omega0: float) -> float:
    """Fixed point ``a^4 = hbar^2 / (4 m^2 omega0^2)`` of the width equation."""
    if omega0 <= 0:
        raise DomainError(f"equilibrium width needs omega0 > 0, got {omega0}")
    return float(np.sqrt(params.hbar / (2.0 * params.mass * omega0)))


def width_acceleration(params: PhysicalParams, pot: Potential, state: PacketState) -> float:
    """``a''`` from the damped Pinney equation at ``state``."""
    m = params.mass
    _, _, v2 = pot.evaluate(state.q, state.t)
    return float(
        -params.nu * state.adot
        - (v2 / m) * state.a
        + params.hbar**2 / (4.0 * m**2 * state.a**3)
    )


def acceleration_ratio(params: PhysicalParams, pot: Potential, state: PacketState) -> float:
    """Ratio ``a'' / (nu a')``; tends to ``-3 / (4 nu t)`` for the free width."""
    if params.nu <= 0:
        raise DomainError("acceleration ratio requires nu > 0")
    if state.adot == 0:
        raise DomainError("acceleration ratio undefined for adot = 0")
    return width_acceleration(params, pot, state) / (params.nu * state.adot)


def fit_power_law(t, y) -> tuple[float, float]:
    """Least-squares fit ``y = c t^s``; returns ``(s, c)``."""
    slope, intercept = np.polyfit(np.log(t), np.log(y), 1)
    return float(slope), float(np.exp(intercept))
