"""Integration constants of the perturbative width from initial conditions.

Eliminating ``c2`` from the initial-condition pair leaves the scalar residual

    R(c1) = a'(0) - [1/c1^3 - 3 a(0) / (4 c1^4) + 3 / (16 c1^7)]

whose positive roots are bracketed on a log-spaced scan, refined by Brent's
method and polished with Newton steps. Each root gives ``c2`` by back
substitution.
"""

from __future__ import annotations

import logging
import warnings

import numpy as np
from scipy.optimize import brentq, newton

from kostin.errors import DomainError, NoSolutionError
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances

from .series import PerturbationConstants, initial_conditions

logger = logging.getLogger(__name__)


def constants_residual(a0: float, adot0: float, c1):
    c1 = np.asarray(c1, dtype=float)
    value = adot0 - (c1**-3 - 0.75 * a0 * c1**-4 + 3.0 / 16.0 * c1**-7)
    return float(value) if value.ndim == 0 else value


def constants_residual_prime(a0: float, adot0: float, c1: float) -> float:
    return float(3.0 * c1**-4 - 3.0 * a0 * c1**-5 + 21.0 / 16.0 * c1**-8)


def c2_from_c1(a0: float, c1: float) -> float:
    """Back-substitute ``c1`` into the ``a(0)`` relation."""
    return float((a0 - c1) * c1**3 - 0.75 * np.log(c1))


def _polish(a0: float, adot0: float, lo: float, hi: float) -> float:
    def f(c):
        return constants_residual(a0, adot0, c)

    def fprime(c):
        return constants_residual_prime(a0, adot0, c)

    root = brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    polished = newton(f, root, fprime=fprime, tol=1e-16, maxiter=8, disp=False)
    if lo <= polished <= hi and abs(f(polished)) <= abs(f(root)):
        return float(polished)
    return float(root)


def solve_constants(
    a0: float, adot0: float, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> list[PerturbationConstants]:
    """All constant pairs ``(c1, c2)`` with ``c1 > 0`` reproducing ``(a0, adot0)``.

    Roots are sorted by decreasing ``c1`` and numbered in that order. Roots
    outside the scan range, or touching roots without a sign change, are
    not found.
    """
    if not a0 > 0:
        raise DomainError(f"initial width must be > 0, got {a0}")

    grid_c1 = np.geomspace(
        tolerances.root_scan_min, tolerances.root_scan_max, tolerances.root_scan_points
    )
    residual = constants_residual(a0, adot0, grid_c1)
    last = len(grid_c1) - 1

    roots: list[float] = []
    for i in range(last):
        r_lo, r_hi = residual[i], residual[i + 1]
        if r_lo == 0.0:
            root = float(grid_c1[i])
        elif r_lo * r_hi < 0:
            root = _polish(a0, adot0, grid_c1[i], grid_c1[i + 1])
        else:
            continue
        if i == 0 or i + 1 == last:
            msg = f"constants root c1={root:.6g} at the edge of the scan range"
            logger.warning(msg)
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
        if abs(constants_residual(a0, adot0, root)) > tolerances.root_residual:
            logger.warning(
                "constants root c1=%.6g polished only to |R|=%.3e",
                root,
                abs(constants_residual(a0, adot0, root)),
            )
        roots.append(root)
    if residual[last] == 0.0:
        roots.append(float(grid_c1[last]))

    if not roots:
        raise NoSolutionError(
            f"no sign change of the constants residual in [{grid_c1[0]:g}, {grid_c1[-1]:g}]",
            float(np.min(residual)),
            float(np.max(residual)),
        )

    roots.sort(reverse=True)
    result = [
        PerturbationConstants(c1=c1, c2=c2_from_c1(a0, c1), branch_index=i)
        for i, c1 in enumerate(roots)
    ]
    logger.debug("constants for a0=%g, adot0=%g: %s", a0, adot0, result)
    return result


def constants_consistency(consts: PerturbationConstants, a0: float, adot0: float) -> float:
    """Largest absolute mismatch of the initial conditions generated by ``consts``."""
    a0_fit, adot0_fit = initial_conditions(consts.c1, consts.c2)
    return max(abs(a0_fit - a0), abs(adot0_fit - adot0))
