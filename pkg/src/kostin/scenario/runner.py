"""Run a scenario pipeline, check it against its oracles and write artifacts."""

from __future__ import annotations

import logging
import math
import platform
from dataclasses import dataclass, field, replace
from datetime import UTC, datetime
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import scipy

from kostin.errors import KostinError, NoSolutionError, NumericalError
from kostin.export import write_csv, write_json
from kostin.moments import (
    MomentTrajectory,
    conservative_harmonic_width_exact,
    conservative_width_exact,
    damped_oscillator_center,
    fit_power_law,
    free_particle_center,
    integrate_moments,
    lyapunov_decay_coefficient,
)
from kostin.pde import (
    EvolutionResult,
    evolve,
    gaussian_wavefunction,
    write_snapshot_csv,
)
from kostin.perturbation import (
    compare_with_numeric,
    constants_consistency,
    rescale,
    solve_constants,
)
from kostin.potentials import Free, Harmonic
from kostin.types import GridSpec
from kostin.wigner import (
    ellipse_area,
    level_set_area,
    momentum_density,
    uncertainties,
    wigner_gaussian_grid,
    wigner_numeric,
    write_wigner_csv,
)

from .config import Pipeline, ScenarioConfig

if TYPE_CHECKING:
    from collections.abc import Callable, Mapping

logger = logging.getLogger(__name__)

REPORT_NAME = "report.json"

# Exit statuses
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True, slots=True)
class Check:
    """One acceptance check: a measured value compared with its oracle."""

    name: str
    oracle: str
    tolerance: float
    measured: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "oracle": self.oracle,
            "tolerance": self.tolerance,
            "measured": self.measured,
            "passed": self.passed,
        }


def at_most(name: str, oracle: str, measured: float, tolerance: float) -> Check:
    return Check(name, oracle, tolerance, float(measured), bool(measured <= tolerance))


@dataclass
class Report:
    """Outcome of one scenario run, serialised as ``report.json``."""

    config: dict[str, str]
    pipeline: str
    checks: list[Check] = field(default_factory=list)
    measurements: dict[str, Any] = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)
    error: dict[str, Any] | None = None
    timestamp: str = ""

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "passed" if self.passed else "failed"

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_NUMERICAL
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config,
            "pipeline": self.pipeline,
            "versions": versions(),
            "checks": [c.to_dict() for c in self.checks],
            "measurements": self.measurements,
            "artifacts": sorted(self.artifacts),
            "error": self.error,
            "timestamp": self.timestamp,
            "status": self.status,
        }


def versions() -> dict[str, str]:
    from kostin import __version__  # noqa: PLC0415

    return {
        "kostin": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }


def max_relative_deviation(measured, reference, floor: float = 0.0) -> float:
    """``max |measured - reference|`` over ``max(max |reference|, floor)``."""
    measured = np.asarray(measured, dtype=float)
    reference = np.asarray(reference, dtype=float)
    scale = max(float(np.max(np.abs(reference))), floor)
    return float(np.max(np.abs(measured - reference)) / scale)


def pointwise_relative_deviation(measured, reference) -> float:
    measured = np.asarray(measured, dtype=float)
    reference = np.asarray(reference, dtype=float)
    return float(np.max(np.abs(measured - reference) / np.abs(reference)))


class _Run:
    """Mutable state of one scenario run."""

    def __init__(self, config: ScenarioConfig) -> None:
        self.config = config
        self.tol = config.tolerances
        self.report = Report(config=config.echo(), pipeline=config.pipeline.value)
        self.out: Path = config.output_dir

    def check(self, check: Check) -> None:
        logger.debug(
            "check %s: measured %.3e, tolerance %.3e, %s",
            check.name,
            check.measured,
            check.tolerance,
            "pass" if check.passed else "FAIL",
        )
        self.report.checks.append(check)

    def series(self, name: str, columns: Mapping[str, np.ndarray]) -> None:
        if self.config.output_format == "json":
            path = write_json(
                self.out / f"{name}.json",
                {key: np.asarray(value, dtype=float) for key, value in columns.items()},
            )
        else:
            path = write_csv(self.out / f"{name}.csv", columns)
        self.artifact(path)

    def artifact(self, path: Path) -> None:
        self.report.artifacts.append(path.relative_to(self.out).as_posix())

    # -- moments ---------------------------------------------------------

    def moments(self) -> MomentTrajectory:
        config = self.config
        params, pot, init = config.params, config.potential, config.initial
        times = np.linspace(init.t, config.t_end, config.samples)
        traj = integrate_moments(
            params,
            pot,
            init,
            GridSpec(dt=times[1] - times[0], t_end=config.t_end),
            sample_times=times,
            tolerances=self.tol,
        )
        self.series("moments", traj.columns())
        self.report.measurements["step_stats"] = {
            "accepted": traj.step_stats.accepted,
            "rejected": traj.step_stats.rejected,
            "max_error": traj.step_stats.max_error,
        }

        elapsed = traj.times - init.t
        if params.nu == 0.0 and pot.is_curvature_free:
            exact = conservative_width_exact(params, init.a, init.adot, elapsed)
            self.check(
                at_most(
                    "conservative_oracle",
                    "free conservative width a(t)^2 = (a0 + adot0 t)^2 + (hbar t / 2 m a0)^2",
                    pointwise_relative_deviation(traj.a, exact),
                    self.tol.oracle_check,
                )
            )
        if isinstance(pot, Harmonic) and pot.k.is_constant and pot.k(0.0) > 0:
            omega0 = pot.omega0(params.mass)
            if params.nu == 0.0:
                exact = conservative_harmonic_width_exact(
                    params, omega0, init.a, init.adot, elapsed
                )
                self.check(
                    at_most(
                        "harmonic_width_oracle",
                        "conservative Pinney solution by linear superposition",
                        pointwise_relative_deviation(traj.a, exact),
                        self.tol.oracle_check,
                    )
                )
            q_exact, _ = damped_oscillator_center(params, omega0, init.q, init.qdot, elapsed)
            self.check(
                at_most(
                    "center_oracle",
                    "damped harmonic oscillator closed form",
                    max_relative_deviation(traj.q, q_exact, init.a),
                    self.tol.oracle_check,
                )
            )
        if isinstance(pot, Free):
            q_exact, _ = free_particle_center(params, init.q, init.qdot, elapsed)
            self.check(
                at_most(
                    "center_oracle",
                    "free damped center q0 + qdot0 (1 - exp(-nu t)) / nu",
                    max_relative_deviation(traj.q, q_exact, init.a),
                    self.tol.oracle_check,
                )
            )

        products = np.array([uncertainties(params, s)[2] for s in traj.states])
        self.check(
            at_most(
                "uncertainty_bound",
                "delta_x delta_p >= hbar / 2",
                params.hbar / 2.0 - float(products.min()),
                self.tol.uncertainty_check,
            )
        )

        if params.nu > 0 and pot.is_curvature_free:
            energy = traj.step_width_energy()
            self.check(
                at_most(
                    "lyapunov_monotone",
                    "width energy non-increasing at every accepted step",
                    max(float(np.max(np.diff(energy))), 0.0),
                    self.tol.lyapunov_check,
                )
            )
            self.report.measurements["lyapunov_decay_coefficient"] = (
                lyapunov_decay_coefficient(traj)
            )
            self._asymptotic_exponent(traj)
        return traj

    def _asymptotic_exponent(self, traj: MomentTrajectory) -> None:
        """Fit the late-time power law when the run reaches ``nu t >= 100``."""
        nu = self.config.params.nu
        span = nu * (traj.times - self.config.initial.t)
        if span[-1] < 100.0:
            return
        late = span >= span[-1] / 10.0
        slope, prefactor = fit_power_law(traj.times[late], traj.a[late])
        self.report.measurements["asymptotic_prefactor"] = prefactor
        self.check(
            Check(
                "asymptotic_exponent",
                "a ~ t^(1/4) in the friction-dominated regime",
                self.tol.exponent_check,
                slope,
                abs(slope - 0.25) <= self.tol.exponent_check,
            )
        )

    # -- perturbation ----------------------------------------------------

    def perturbation(self) -> None:
        config = self.config
        params, init = config.params, config.initial
        scaled = rescale(params, init)
        roots = solve_constants(scaled.a, scaled.adot, self.tol)
        self.report.measurements["constants"] = [
            {"branch": c.branch_index, "c1": c.c1, "c2": c.c2} for c in roots
        ]
        self.check(
            at_most(
                "constants_consistency",
                "constants reproduce the initial width and its velocity",
                max(constants_consistency(c, scaled.a, scaled.adot) for c in roots),
                self.tol.oracle_check,
            )
        )

        tau_end = params.nu * config.t_end
        if tau_end <= self.tol.tau_min:
            logger.warning(
                "run ends at tau=%g before tau_min=%g; no perturbative comparison",
                tau_end,
                self.tol.tau_min,
            )
            return
        taus = np.linspace(0.0, tau_end, config.samples)
        deviations = []
        for consts in roots:
            comparison = compare_with_numeric(consts, scaled.a, scaled.adot, taus, self.tol)
            self.series(f"perturbation_branch{consts.branch_index}", comparison.columns())
            deviations.append(comparison.max_deviation())
        self.report.measurements["branch_max_deviation"] = deviations
        self.check(
            at_most(
                "perturbative_width",
                "numeric dimensionless width after the transient (best branch)",
                min(deviations),
                self.tol.perturbation_check,
            )
        )

    # -- pde -------------------------------------------------------------

    def pde(self) -> EvolutionResult:
        config = self.config
        params = config.params
        grid = config.pde_grid()
        self.report.measurements["grid"] = {
            "x_min": grid.x_min,
            "x_max": grid.x_max,
            "n_points": grid.n_points,
            "dt": grid.dt,
        }
        wf0 = gaussian_wavefunction(params, config.initial, grid)
        result = evolve(
            params,
            config.potential,
            wf0,
            observe_every=config.observe_every,
            snapshot_times=config.snapshot_times,
            include_mean_phase=config.include_mean_phase,
            tolerances=self.tol,
        )
        series = result.series
        self.series("pde", series.columns())
        for snapshot in result.snapshots:
            path = self.out / f"snapshot_t{snapshot.t:.6g}.csv"
            self.artifact(write_snapshot_csv(params, snapshot, path, self.tol))
        result.raise_if_truncated()

        self.check(
            at_most(
                "norm_drift",
                "norm conserved by the unitary splitting",
                float(np.max(np.abs(series.norm - 1.0))),
                self.tol.norm_check,
            )
        )
        if config.potential.is_quadratic:
            self.check(
                at_most(
                    "gaussian_closure",
                    "excess kurtosis of the density stays zero",
                    float(np.max(np.abs(series.column("kurtosis")))),
                    self.tol.pde_check,
                )
            )
        products = series.delta_x * series.column("delta_p")
        self.check(
            at_most(
                "pde_uncertainty_bound",
                "delta_x delta_p >= hbar / 2",
                params.hbar / 2.0 - float(products.min()),
                self.tol.uncertainty_check,
            )
        )
        return result

    # -- wigner ----------------------------------------------------------

    def wigner(self) -> None:
        config = self.config
        params, init = config.params, config.initial
        wf = gaussian_wavefunction(params, init, config.pde_grid())
        grid = wigner_numeric(params, wf, half_grid=config.wigner_half_grid, tolerances=self.tol)
        suffix = "dat" if config.wigner_format == "gnuplot" else "csv"
        self.artifact(write_wigner_csv(grid, self.out / f"wigner.{suffix}", config.wigner_format))

        peak = 1.0 / (np.pi * params.hbar)
        analytic = wigner_gaussian_grid(params, init, grid.x_axis, grid.p_axis)
        self.check(
            at_most(
                "wigner_analytic",
                "closed-form Gaussian Wigner function (relative to 1 / pi hbar)",
                float(np.max(np.abs(grid.f - analytic.f))) / peak,
                self.tol.wigner_check,
            )
        )
        self.check(
            at_most(
                "wigner_normalization",
                "phase-space integral equals one",
                abs(grid.normalization() - 1.0),
                self.tol.wigner_check,
            )
        )
        if not config.wigner_half_grid:
            self.check(
                at_most(
                    "wigner_position_marginal",
                    "momentum integral equals |psi(x)|^2",
                    float(np.max(np.abs(grid.position_marginal() - wf.density))),
                    self.tol.wigner_check,
                )
            )
        self.check(
            at_most(
                "wigner_momentum_marginal",
                "position integral equals |psi~(p)|^2",
                float(
                    np.max(
                        np.abs(
                            grid.momentum_marginal()
                            - momentum_density(params, wf, grid.p_axis)
                        )
                    )
                ),
                self.tol.wigner_check,
            )
        )

        level = config.wigner_level
        area = ellipse_area(params, init, level)
        self.report.measurements["ellipse_area"] = area
        self.report.measurements["level_set_area"] = level_set_area(grid, level)
        self.report.measurements["ellipse_area_expected"] = (
            math.pi * params.hbar * math.log(1.0 / level)
        )

        traj = self.sampled_trajectory()
        areas = np.array([ellipse_area(params, s, level) for s in traj.states])
        self.check(
            at_most(
                "ellipse_area_invariance",
                "level-set area constant along the trajectory",
                float(areas.max() - areas.min()),
                self.tol.uncertainty_check,
            )
        )

    def sampled_trajectory(self) -> MomentTrajectory:
        config = self.config
        times = np.linspace(config.initial.t, config.t_end, min(config.samples, 100))
        return integrate_moments(
            config.params,
            config.potential,
            config.initial,
            GridSpec(dt=times[1] - times[0], t_end=config.t_end),
            sample_times=times,
            tolerances=self.tol,
        )

    # -- cross-validation ------------------------------------------------

    def cross_validate(self) -> None:
        config = self.config
        params, init = config.params, config.initial
        result = self.pde()
        series = result.series
        traj = integrate_moments(
            params,
            config.potential,
            init,
            GridSpec(dt=config.pde_grid().dt, t_end=config.t_end),
            sample_times=series.t,
            tolerances=self.tol,
        )
        self.series("moments", traj.columns())
        width = traj.a[: len(series)]
        center = traj.q[: len(series)]

        self.check(
            at_most(
                "pde_width",
                "moment dynamics width a(t) against delta_x",
                pointwise_relative_deviation(series.delta_x, width),
                self.tol.pde_check,
            )
        )
        self.check(
            at_most(
                "pde_center",
                "moment dynamics center q(t) against <x>",
                max_relative_deviation(series.mean_x, center, init.a),
                self.tol.pde_check,
            )
        )
        pot = config.potential
        if isinstance(pot, Harmonic) and pot.k.is_constant and params.nu > 0:
            q_exact, _ = damped_oscillator_center(
                params, pot.omega0(params.mass), init.q, init.qdot, series.t - init.t
            )
            self.check(
                at_most(
                    "ehrenfest_center",
                    "damped harmonic oscillator closed form against <x>",
                    max_relative_deviation(series.mean_x, q_exact, init.a),
                    0.1 * self.tol.pde_check,
                )
            )
        products = np.array([uncertainties(params, s)[2] for s in traj.states])
        self.check(
            at_most(
                "uncertainty_bound",
                "delta_x delta_p >= hbar / 2",
                params.hbar / 2.0 - float(products.min()),
                self.tol.uncertainty_check,
            )
        )
        if params.nu > 0 and pot.is_curvature_free and params.nu * config.t_end > self.tol.tau_min:
            try:
                self.perturbation()
            except NoSolutionError as exc:
                logger.warning("skipping perturbative comparison: %s", exc)
                self.report.measurements["constants"] = []


_PIPELINES: dict[Pipeline, Callable[[_Run], Any]] = {
    Pipeline.MOMENTS: _Run.moments,
    Pipeline.PERTURBATION: _Run.perturbation,
    Pipeline.PDE: _Run.pde,
    Pipeline.WIGNER: _Run.wigner,
    Pipeline.CROSS_VALIDATE: _Run.cross_validate,
}


def run_scenario(config: ScenarioConfig) -> Report:
    """Run ``config`` and write its artifacts and ``report.json``.

    Numerical failures are recorded in the report rather than raised.
    """
    run = _Run(config)
    logger.debug("running %s pipeline into %s", config.pipeline, run.out)
    run.out.mkdir(parents=True, exist_ok=True)
    try:
        _PIPELINES[config.pipeline](run)
    except NumericalError as exc:
        logger.warning("%s pipeline failed: %s", config.pipeline, exc)
        run.report.error = {
            "type": type(exc).__name__,
            "module": exc.module,
            "t": exc.t,
            "message": str(exc),
        }
    except KostinError as exc:
        logger.warning("%s pipeline failed: %s", config.pipeline, exc)
        run.report.error = {"type": type(exc).__name__, "message": str(exc)}

    run.report.timestamp = datetime.now(UTC).isoformat(timespec="seconds")
    write_json(run.out / REPORT_NAME, run.report.to_dict())
    return run.report


def cross_validate(config: ScenarioConfig) -> Report:
    """Run the moments, PDE and (when applicable) perturbation levels side by side."""
    if config.pipeline != Pipeline.CROSS_VALIDATE:
        config = replace(config, pipeline=Pipeline.CROSS_VALIDATE)
    return run_scenario(config)


def parse_vary(text: str) -> tuple[str, np.ndarray]:
    """Parse ``key=a:b:n`` into the key and ``n`` linearly spaced values."""
    key, sep, span = text.partition("=")
    parts = span.split(":")
    if not sep or len(parts) != 3:
        msg = f"expected key=a:b:n, got {text!r}"
        raise ValueError(msg)
    start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1:
        msg = f"need at least one value, got n={count}"
        raise ValueError(msg)
    return key.strip(), np.linspace(start, stop, count)


def run_sweep(config: ScenarioConfig, key: str, values) -> tuple[list[Report], Path]:
    """Run ``config`` once per value of ``key``; writes ``sweep.json``.

    Each run goes to ``<output_dir>/<key>=<value>/``.
    """
    runs = []
    reports = []
    for value in values:
        text = f"{value:.12g}"
        variant = config.with_override(key, text)
        if key.startswith("tolerances."):
            variant = variant.with_tolerance_scale(config.tolerance_scale)
        else:
            variant = replace(
                variant,
                tolerances=config.tolerances,
                tolerance_scale=config.tolerance_scale,
            )
        variant = variant.with_output(config.output_dir / f"{key}={text}", config.output_format)
        report = run_scenario(variant)
        reports.append(report)
        runs.append({
            "value": float(value),
            "status": report.status,
            "directory": f"{key}={text}",
            "checks_passed": sum(c.passed for c in report.checks),
            "checks_total": len(report.checks),
        })
    path = write_json(config.output_dir / "sweep.json", {"key": key, "runs": runs})
    return reports, path
