"""External potentials with exact first and second spatial derivatives.

Every family evaluates ``(V, V', V'')`` at ``(x, t)``; ``x`` may be a float
or a numpy array. Time dependence goes through :class:`TimeFunction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

import numpy as np
from numpy.polynomial import Polynomial

from kostin.errors import DomainError, ParameterError

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

# Finite-difference consistency (relative, with unit floor on the denominator)
DERIVATIVE_RTOL = 1e-6
FD_STEP = 1e-5

DEFAULT_CHECK_POINTS = (-2.0, -0.7, 0.0, 0.3, 1.1, 2.5)


class PotentialFamily(StrEnum):
    FREE = "free"
    HARMONIC = "harmonic"
    UNIFORM_FORCE = "uniform_force"
    POLYNOMIAL = "polynomial"
    CALLABLE = "callable"


@dataclass(frozen=True, slots=True)
class TimeFunction:
    """A scalar function of time: constant, closed form or tabulated.

    Tabulated values are linearly interpolated and held constant outside
    the table.
    """

    constant: float | None = None
    func: Callable[[float], float] | None = None
    times: tuple[float, ...] = ()
    values: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        kinds = (self.constant is not None) + (self.func is not None) + bool(self.times)
        if kinds != 1:
            raise ParameterError("exactly one of constant, func or table is required")
        if self.times:
            if len(self.times) != len(self.values) or len(self.times) < 2:
                raise ParameterError("table needs >= 2 matching (time, value) pairs")
            if np.any(np.diff(self.times) <= 0):
                raise ParameterError("table times must be strictly increasing")

    @classmethod
    def of(cls, value: float | Callable[[float], float] | TimeFunction) -> TimeFunction:
        if isinstance(value, TimeFunction):
            return value
        if callable(value):
            return cls(func=value)
        return cls(constant=float(value))

    @classmethod
    def from_table(cls, times: Sequence[float], values: Sequence[float]) -> TimeFunction:
        return cls(
            times=tuple(float(t) for t in times), values=tuple(float(v) for v in values)
        )

    @property
    def is_constant(self) -> bool:
        return self.constant is not None

    def __call__(self, t: float) -> float:
        if self.constant is not None:
            return self.constant
        if self.func is not None:
            return float(self.func(t))
        return float(np.interp(t, self.times, self.values))


class Potential:
    """Base class for external potentials ``V(x, t)``."""

    family: PotentialFamily

    def evaluate(self, x, t: float = 0.0):
        """Return ``(V, V', V'')`` at ``(x, t)``."""
        raise NotImplementedError

    def value(self, x, t: float = 0.0):
        return self.evaluate(x, t)[0]

    def curvature(self, x, t: float = 0.0):
        return self.evaluate(x, t)[2]

    @property
    def is_curvature_free(self) -> bool:
        """True when ``V''`` vanishes identically."""
        return False

    @property
    def is_quadratic(self) -> bool:
        """True when ``V''`` does not depend on ``x`` (Gaussian closure is exact)."""
        return False


@dataclass(frozen=True, slots=True)
class Free(Potential):
    family: PotentialFamily = field(default=PotentialFamily.FREE, init=False)

    def evaluate(self, x, t: float = 0.0):
        zero = np.zeros_like(x, dtype=float) if np.ndim(x) else 0.0
        return zero, zero, zero

    @property
    def is_curvature_free(self) -> bool:
        return True

    @property
    def is_quadratic(self) -> bool:
        return True


@dataclass(frozen=True, slots=True)
class Harmonic(Potential):
    """``V = k(t) x^2 / 2`` with spring constant ``k = m omega0^2``."""

    k: TimeFunction
    family: PotentialFamily = field(default=PotentialFamily.HARMONIC, init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", TimeFunction.of(self.k))

    @classmethod
    def from_omega(cls, mass: float, omega0: float) -> Harmonic:
        return cls(k=TimeFunction.of(mass * omega0**2))

    def evaluate(self, x, t: float = 0.0):
        k = self.k(t)
        if np.ndim(x):
            x = np.asarray(x, dtype=float)
            return 0.5 * k * x * x, k * x, np.full_like(x, k)
        return 0.5 * k * x * x, k * x, k

    def omega0(self, mass: float, t: float = 0.0) -> float:
        k = self.k(t)
        if k <= 0:
            raise DomainError(f"non-confining spring constant k={k}")
        return float(np.sqrt(k / mass))

    @property
    def is_quadratic(self) -> bool:
        return True


@dataclass(frozen=True, slots=True)
class UniformForce(Potential):
    """``V = -F(t) x``: a purely time-dependent external force."""

    force: TimeFunction
    family: PotentialFamily = field(default=PotentialFamily.UNIFORM_FORCE, init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "force", TimeFunction.of(self.force))

    def evaluate(self, x, t: float = 0.0):
        f = self.force(t)
        if np.ndim(x):
            x = np.asarray(x, dtype=float)
            return -f * x, np.full_like(x, -f), np.zeros_like(x)
        return -f * x, -f, 0.0

    @property
    def is_curvature_free(self) -> bool:
        return True

    @property
    def is_quadratic(self) -> bool:
        return True


@dataclass(frozen=True, slots=True)
class UserPolynomial(Potential):
    """``V = sum_n c_n x^n`` for degree <= 4 (time independent)."""

    coefficients: tuple[float, ...]
    family: PotentialFamily = field(default=PotentialFamily.POLYNOMIAL, init=False)

    def __post_init__(self) -> None:
        coefficients = tuple(float(c) for c in self.coefficients)
        if not coefficients:
            raise ParameterError("at least one coefficient required", "coefficients")
        if len(coefficients) > 5:
            raise ParameterError(
                f"degree must be <= 4, got {len(coefficients) - 1}", "coefficients"
            )
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x, t: float = 0.0):
        poly = Polynomial(self.coefficients)
        return poly(x), poly.deriv(1)(x), poly.deriv(2)(x)

    @property
    def is_curvature_free(self) -> bool:
        return all(c == 0.0 for c in self.coefficients[2:])

    @property
    def is_quadratic(self) -> bool:
        return all(c == 0.0 for c in self.coefficients[3:])


@dataclass(frozen=True, slots=True)
class UserCallable(Potential):
    """User-supplied ``V, V', V''`` callables of ``(x, t)``.

    The derivatives are checked against centered finite differences at
    construction; ``domain`` bounds the admissible ``x``.
    """

    v: Callable
    dv: Callable
    d2v: Callable
    domain: tuple[float, float] | None = None
    check_points: tuple[float, ...] = DEFAULT_CHECK_POINTS
    family: PotentialFamily = field(default=PotentialFamily.CALLABLE, init=False)

    def __post_init__(self) -> None:
        check_points = self.check_points
        if self.domain is not None:
            lo, hi = self.domain
            if not lo < hi:
                raise ParameterError(f"empty domain {self.domain}", "domain")
            # Keep the stencil inside the domain.
            margin = 1e-3 * (hi - lo)
            check_points = tuple(np.linspace(lo + margin, hi - margin, len(check_points)))
        mismatch = check_derivatives(self, check_points)
        if mismatch > DERIVATIVE_RTOL:
            raise ParameterError(
                f"derivatives disagree with finite differences (rel. error {mismatch:.2e})",
                "potential",
            )

    def _check_domain(self, x) -> None:
        if self.domain is None:
            return
        lo, hi = self.domain
        if np.any(np.asarray(x) < lo) or np.any(np.asarray(x) > hi):
            raise DomainError(f"x outside the potential domain [{lo}, {hi}]")

    def evaluate(self, x, t: float = 0.0):
        self._check_domain(x)
        return self.v(x, t), self.dv(x, t), self.d2v(x, t)


def potential_eval(pot: Potential, x: float, t: float = 0.0) -> tuple[float, float, float]:
    """Evaluate ``(V, V', V'')`` of ``pot`` at a single point."""
    v, v1, v2 = pot.evaluate(float(x), t)
    return float(v), float(v1), float(v2)


def check_derivatives(pot: Potential, xs: Sequence[float], t: float = 0.0) -> float:
    """Largest relative mismatch between exact and finite-difference derivatives.

    ``V'`` is compared with the centered difference of ``V`` and ``V''`` with
    the centered difference of ``V'``, step ``h = max(|x|, 1) * 1e-5``. The
    denominator is floored at 1 so that zeros of a derivative do not blow up
    the ratio.
    """
    worst = 0.0
    for x in xs:
        h = max(abs(x), 1.0) * FD_STEP
        _, v1, v2 = pot.evaluate(x, t)
        v_plus, v1_plus, _ = pot.evaluate(x + h, t)
        v_minus, v1_minus, _ = pot.evaluate(x - h, t)
        fd1 = (v_plus - v_minus) / (2 * h)
        fd2 = (v1_plus - v1_minus) / (2 * h)
        worst = max(
            worst,
            abs(fd1 - v1) / max(abs(v1), 1.0),
            abs(fd2 - v2) / max(abs(v2), 1.0),
        )
    return float(worst)
