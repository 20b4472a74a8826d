"""Numerical tolerances and guards shared by all solvers."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True, slots=True)
class Tolerances:
    """Configurable numerical tolerances.

    The integrator and guard values are used by the solvers; the
    ``*_check`` values are acceptance thresholds used by the scenario
    report and scale with ``--tol-scale``.
    """

    rtol: float = 1e-10
    """Relative local error bound of the adaptive integrator."""

    atol: float = 1e-12
    """Absolute local error bound of the adaptive integrator."""

    a_floor: float = 1e-12
    """Width below which integration aborts with a singularity error."""

    norm_step_bound: float = 1e-9
    """Largest tolerated norm drift in a single PDE step."""

    boundary_density: float = 1e-10
    """Largest tolerated density mass at the two outermost grid points."""

    rho_cut: float = 1e-12
    """Density below which the phase is not unwrapped."""

    wigner_cut: float = 1e-12
    """Amplitude below which the Wigner integrand is truncated."""

    root_scan_min: float = 1e-3
    """Lower end of the log-spaced scan for perturbation constants."""

    root_scan_max: float = 1e3
    """Upper end of the log-spaced scan for perturbation constants."""

    root_scan_points: int = 2000
    """Number of log-spaced points in the constants scan."""

    root_residual: float = 1e-12
    """Residual a polished constants root must reach."""

    tau_min: float = 1.0
    """Dimensionless time after which the perturbative width is trusted."""

    oracle_check: float = 1e-8
    """Moment integration versus closed forms."""

    pde_check: float = 1e-3
    """Full PDE versus moment dynamics."""

    norm_check: float = 1e-6
    """Largest norm drift of a whole PDE run."""

    wigner_check: float = 1e-6
    """Numeric Wigner transform versus analytic form, marginals and normalization."""

    perturbation_check: float = 2e-2
    """Perturbative width versus numeric width after the transient.

    The first-order width of the better branch peaks at about 1.8% for a
    packet released at rest with a0 = 2, near tau = 11.
    """

    exponent_check: float = 1e-2
    """Fitted late-time width exponent versus 1/4."""

    uncertainty_check: float = 1e-12
    """Slack on the uncertainty bound."""

    lyapunov_check: float = 1e-12
    """Slack on the monotone width energy."""

    def scaled(self, factor: float) -> Tolerances:
        """Copy with every acceptance threshold multiplied by ``factor``."""
        return replace(
            self,
            oracle_check=self.oracle_check * factor,
            pde_check=self.pde_check * factor,
            norm_check=self.norm_check * factor,
            wigner_check=self.wigner_check * factor,
            perturbation_check=self.perturbation_check * factor,
            exponent_check=self.exponent_check * factor,
            uncertainty_check=self.uncertainty_check * factor,
            lyapunov_check=self.lyapunov_check * factor,
        )


DEFAULT_TOLERANCES = Tolerances()
