"""Error definitions for the Kostin equation solvers."""

from __future__ import annotations


class KostinError(Exception):
    """Base class for all kostin errors."""


class ParameterError(KostinError, ValueError):
    """Invalid physical parameters, packet state, grid or potential."""

    def __init__(self, message: str, field: str | None = None) -> None:
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class DomainError(KostinError, ValueError):
    """An operation was evaluated outside its domain of validity."""


class ConfigError(KostinError):
    """Error while parsing or validating a scenario file.

    Attributes:
        path: Dotted field path (e.g. ``initial.a``), if known
        line: 1-based line number in the scenario file, if known
    """

    def __init__(
        self, message: str, path: str | None = None, line: int | None = None
    ) -> None:
        self.path = path
        self.line = line

        location_parts = []
        if path:
            location_parts.append(path)
        if line is not None:
            location_parts.append(f"line {line}")

        if location_parts:
            message = f"{' '.join(location_parts)}: {message}"
        super().__init__(message)


class NumericalError(KostinError):
    """A numerical procedure failed.

    Attributes:
        module: Name of the failing module (``moments``, ``pde``, ...)
        t: Simulation time at which the failure was detected, if applicable
    """

    def __init__(
        self, message: str, module: str | None = None, t: float | None = None
    ) -> None:
        self.module = module
        self.t = t

        prefix = f"[{module}] " if module else ""
        if t is not None:
            prefix += f"at t={t:.6g}: "
        super().__init__(f"{prefix}{message}")


class SingularityError(NumericalError):
    """The packet width fell below the singularity guard."""

    def __init__(self, a: float, a_floor: float, t: float | None = None) -> None:
        self.a = a
        super().__init__(
            f"width a={a:.3e} fell below a_floor={a_floor:.1e}", "moments", t
        )


class StiffnessError(NumericalError):
    """The adaptive step size underflowed."""


class NoSolutionError(NumericalError):
    """No root of the constants residual was found in the scan range."""

    def __init__(self, message: str, residual_min: float, residual_max: float) -> None:
        self.residual_min = residual_min
        self.residual_max = residual_max
        super().__init__(
            f"{message} (residual range [{residual_min:.3e}, {residual_max:.3e}])",
            "perturbation",
        )


class UnwrapError(NumericalError):
    """A phase jump of exactly pi made the unwrapping ambiguous."""

    def __init__(self, index: int, t: float | None = None) -> None:
        self.index = index
        super().__init__(
            f"ambiguous phase jump of pi between points {index} and {index + 1}"
            " (grid too coarse)",
            "pde",
            t,
        )


class NormDriftError(NumericalError):
    """The wavefunction norm drifted beyond the per-step bound."""

    def __init__(self, drift: float, t: float | None = None) -> None:
        self.drift = drift
        super().__init__(f"norm drift {drift:.3e} in one step", "pde", t)


class PacketEscapedError(NumericalError):
    """The packet reached the edge of the spatial grid."""

    def __init__(self, boundary_density: float, t: float | None = None) -> None:
        self.boundary_density = boundary_density
        super().__init__(
            f"boundary density {boundary_density:.3e} exceeds bound", "pde", t
        )


class GridError(NumericalError):
    """The spatial grid cannot represent the requested state."""


class QuadratureError(NumericalError):
    """A phase-space quadrature failed its consistency checks."""

    def __init__(self, message: str, value: float) -> None:
        self.value = value
        super().__init__(message, "wigner")
