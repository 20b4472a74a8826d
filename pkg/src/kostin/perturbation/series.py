"""First-order perturbative width in the friction-dominated regime.

With ``s = tau + c1^4`` the zeroth and first orders are

    alpha0 = s^(1/4)
    alpha1 = (c2 + (3/16) ln s) / s^(3/4)

and the width is ``alpha0 + alpha1`` (perturbation parameter set to one).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kostin.errors import DomainError, ParameterError

ORDER = 1


@dataclass(frozen=True, slots=True)
class PerturbationConstants:
    """Integration constants of one branch of the first-order solution."""

    c1: float
    c2: float
    branch_index: int = 0

    def __post_init__(self) -> None:
        if not self.c1 > 0:
            raise ParameterError(f"must be > 0, got {self.c1}", "c1")

    def __str__(self) -> str:
        return f"branch {self.branch_index}: c1={self.c1:.6f}, c2={self.c2:.6f}"


def _radicand(c1: float, tau):
    s = np.asarray(tau, dtype=float) + c1**4
    if np.any(s <= 0):
        raise DomainError(f"tau + c1^4 must be > 0 (c1={c1})")
    return s


def _out(value: np.ndarray):
    return float(value) if value.ndim == 0 else value


def alpha0(c1: float, tau):
    """Zeroth order ``(tau + c1^4)^(1/4)``."""
    return _out(_radicand(c1, tau) ** 0.25)


def alpha0_dot(c1: float, tau):
    return _out(0.25 * _radicand(c1, tau) ** -0.75)


def alpha0_ddot(c1: float, tau):
    return _out(-3.0 / 16.0 * _radicand(c1, tau) ** -1.75)


def alpha1(c1: float, c2: float, tau):
    """First-order correction ``(c2 + (3/16) ln s) / s^(3/4)``."""
    s = _radicand(c1, tau)
    return _out((c2 + 3.0 / 16.0 * np.log(s)) * s**-0.75)


def alpha1_dot(c1: float, c2: float, tau):
    s = _radicand(c1, tau)
    return _out((3.0 / 16.0 - 0.75 * c2 - 9.0 / 64.0 * np.log(s)) * s**-1.75)


def first_order_residual(c1: float, c2: float, tau):
    """Residual of ``alpha1' + 3 alpha1 / (4 alpha0^4) + alpha0''`` (zero exactly)."""
    s = _radicand(c1, tau)
    return _out(
        np.asarray(alpha1_dot(c1, c2, tau))
        + 0.75 * np.asarray(alpha1(c1, c2, tau)) / s
        + np.asarray(alpha0_ddot(c1, tau))
    )


def zeroth_order_residual(c1: float, tau):
    """Residual of ``alpha0' - 1 / (4 alpha0^3)``."""
    return _out(
        np.asarray(alpha0_dot(c1, tau)) - 0.25 / np.asarray(alpha0(c1, tau)) ** 3
    )


def perturbative_width(consts: PerturbationConstants, tau):
    """Dimensionless width ``alpha0 + alpha1``."""
    return _out(
        np.asarray(alpha0(consts.c1, tau)) + np.asarray(alpha1(consts.c1, consts.c2, tau))
    )


def perturbative_width_dot(consts: PerturbationConstants, tau):
    """Exact ``d(alpha0 + alpha1)/dtau``."""
    return _out(
        np.asarray(alpha0_dot(consts.c1, tau))
        + np.asarray(alpha1_dot(consts.c1, consts.c2, tau))
    )


def initial_conditions(c1: float, c2: float) -> tuple[float, float]:
    """``(a(0), a'(0))`` generated by a pair of constants."""
    log_c1 = np.log(c1)
    a0 = c1 + c2 / c1**3 + 3.0 * log_c1 / (4.0 * c1**3)
    adot0 = (3.0 - 12.0 * c2 + 4.0 * c1**4 - 9.0 * log_c1) / (16.0 * c1**7)
    return float(a0), float(adot0)


@dataclass(frozen=True)
class PerturbativeTrajectory:
    """Width series sampled at ``tau`` with its validity mask.

    Samples before ``tau_min`` fall inside the initial transient, where the
    first-order solution is not expected to track the exact width.
    """

    consts: PerturbationConstants
    tau: np.ndarray
    alpha0: np.ndarray
    alpha1: np.ndarray
    tau_min: float
    order: int = ORDER

    @property
    def width(self) -> np.ndarray:
        return self.alpha0 + self.alpha1

    @property
    def valid(self) -> np.ndarray:
        return self.tau >= self.tau_min


def perturbative_trajectory(
    consts: PerturbationConstants, taus, tau_min: float = 1.0
) -> PerturbativeTrajectory:
    taus = np.asarray(taus, dtype=float)
    return PerturbativeTrajectory(
        consts=consts,
        tau=taus,
        alpha0=np.atleast_1d(alpha0(consts.c1, taus)),
        alpha1=np.atleast_1d(alpha1(consts.c1, consts.c2, taus)),
        tau_min=tau_min,
    )
