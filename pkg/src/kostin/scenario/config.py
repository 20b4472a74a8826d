"""Scenario files: flat ``key = value`` text with dotted section paths.

Example::

    pipeline = cross-validate
    params.nu = 1.0
    potential.family = free
    initial.a = 1.0
    initial.qdot = 0.5
    time.t_end = 5.0

Blank lines and ``#`` comments are ignored. Every issue found while
parsing is collected; :func:`parse_config` raises the first one as a
:class:`~kostin.errors.ConfigError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Any

from kostin.errors import ParameterError
from kostin.pde import default_grid, stable_time_step
from kostin.potentials import (
    Free,
    Harmonic,
    Potential,
    PotentialFamily,
    TimeFunction,
    UniformForce,
    UserPolynomial,
)
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PacketState, PhysicalParams

from .validation import ValidationResult

if TYPE_CHECKING:
    from collections.abc import Mapping


class Pipeline(StrEnum):
    MOMENTS = "moments"
    PERTURBATION = "perturbation"
    PDE = "pde"
    WIGNER = "wigner"
    CROSS_VALIDATE = "cross-validate"

    @property
    def needs_grid(self) -> bool:
        return self in {Pipeline.PDE, Pipeline.WIGNER, Pipeline.CROSS_VALIDATE}


# Key sections read only by some pipelines
_SECTION_PIPELINES: dict[str, frozenset[Pipeline]] = {
    "grid": frozenset(p for p in Pipeline if p.needs_grid),
    "pde": frozenset({Pipeline.PDE, Pipeline.CROSS_VALIDATE}),
    "wigner": frozenset({Pipeline.WIGNER}),
}

OUTPUT_FORMATS = ("csv", "json")
WIGNER_FORMATS = ("csv", "gnuplot")
TOLERANCE_KEYS = tuple(f"tolerances.{f.name}" for f in fields(Tolerances))

KNOWN_KEYS = frozenset({
    "pipeline",
    "params.hbar",
    "params.mass",
    "params.nu",
    "potential.family",
    "potential.k",
    "potential.omega0",
    "potential.force",
    "potential.coefficients",
    "potential.times",
    "potential.values",
    "initial.t",
    "initial.q",
    "initial.qdot",
    "initial.a",
    "initial.adot",
    "time.t_end",
    "time.samples",
    "grid.x_min",
    "grid.x_max",
    "grid.n_points",
    "grid.dt",
    "output.dir",
    "output.format",
    "pde.include_mean_phase",
    "pde.snapshots",
    "pde.observe_every",
    "wigner.level",
    "wigner.half_grid",
    "wigner.format",
    *TOLERANCE_KEYS,
})

DEFAULT_SAMPLES = 201
_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


@dataclass(frozen=True)
class ScenarioConfig:
    """A parsed and validated scenario.

    ``grid`` is ``None`` when the file gives no ``grid.*`` keys; PDE runs
    then use :func:`kostin.pde.default_grid`. ``entries`` keeps the raw
    key/value pairs for the report echo and for sweeps.
    """

    pipeline: Pipeline
    params: PhysicalParams
    potential: Potential
    initial: PacketState
    t_end: float
    samples: int = DEFAULT_SAMPLES
    grid: GridSpec | None = None
    tolerances: Tolerances = DEFAULT_TOLERANCES
    output_dir: Path = Path("out")
    output_format: str = "csv"
    include_mean_phase: bool = True
    snapshot_times: tuple[float, ...] = ()
    observe_every: int | None = None
    wigner_level: float = math.exp(-1.0)
    wigner_half_grid: bool = False
    wigner_format: str = "csv"
    tolerance_scale: float = 1.0
    entries: Mapping[str, str] = field(default_factory=dict, compare=False)

    def pde_grid(self) -> GridSpec:
        if self.grid is not None:
            return self.grid
        return default_grid(self.params, self.initial, self.t_end)

    def echo(self) -> dict[str, str]:
        return dict(sorted(self.entries.items()))

    def with_override(self, key: str, value: str) -> ScenarioConfig:
        """Re-parse with one key replaced (used by sweeps)."""
        entries = dict(self.entries)
        entries[key] = value
        return parse_config(render_entries(entries))

    def with_tolerance_scale(self, factor: float) -> ScenarioConfig:
        """Scale the acceptance tolerances; factors accumulate."""
        return replace(
            self,
            tolerances=self.tolerances.scaled(factor),
            tolerance_scale=self.tolerance_scale * factor,
        )

    def with_output(self, directory: Path | None, fmt: str | None) -> ScenarioConfig:
        return replace(
            self,
            output_dir=directory if directory is not None else self.output_dir,
            output_format=fmt or self.output_format,
        )


def render_entries(entries: Mapping[str, str]) -> str:
    return "".join(f"{key} = {value}\n" for key, value in sorted(entries.items()))


class _Reader:
    """Typed access to raw entries, recording issues instead of raising."""

    def __init__(self, entries: dict[str, tuple[str, int]], result: ValidationResult):
        self.entries = entries
        self.result = result

    def line(self, key: str) -> int | None:
        return self.entries[key][1] if key in self.entries else None

    def has(self, key: str) -> bool:
        return key in self.entries

    def error(self, key: str, message: str) -> None:
        self.result.add_error(message, key, self.line(key))

    def text(self, key: str, default: str | None = None) -> str | None:
        if key not in self.entries:
            if default is None:
                self.error(key, "required key missing")
            return default
        return self.entries[key][0]

    def number(self, key: str, default: float | None = None) -> float | None:
        if key not in self.entries:
            if default is None:
                self.error(key, "required key missing")
            return default
        raw = self.entries[key][0]
        try:
            value = float(raw)
        except ValueError:
            self.error(key, f"not a number: {raw!r}")
            return None
        if not math.isfinite(value):
            self.error(key, f"must be finite, got {raw!r}")
            return None
        return value

    def integer(self, key: str, default: int | None = None) -> int | None:
        if key not in self.entries:
            return default
        raw = self.entries[key][0]
        try:
            return int(raw)
        except ValueError:
            self.error(key, f"not an integer: {raw!r}")
            return None

    def flag(self, key: str, *, default: bool) -> bool:
        if key not in self.entries:
            return default
        raw = self.entries[key][0].lower()
        if raw in _TRUE:
            return True
        if raw not in _FALSE:
            self.error(key, f"not a boolean: {raw!r}")
        return False

    def numbers(self, key: str) -> tuple[float, ...] | None:
        if key not in self.entries:
            return None
        raw = self.entries[key][0]
        try:
            values = tuple(float(v) for v in raw.split(",") if v.strip())
        except ValueError:
            self.error(key, f"not a comma-separated list of numbers: {raw!r}")
            return None
        if not all(math.isfinite(v) for v in values):
            self.error(key, "all values must be finite")
            return None
        return values

    def choice(self, key: str, options: tuple[str, ...], default: str) -> str:
        value = self.text(key, default) or default
        if value not in options:
            self.error(key, f"must be one of {', '.join(options)}, got {value!r}")
            return default
        return value


def _read_entries(text: str, result: ValidationResult) -> dict[str, tuple[str, int]]:
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            result.add_error(f"expected 'key = value', got {line!r}", None, lineno)
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            result.add_error("unknown key", key, lineno)
        elif key in entries:
            result.add_error(f"duplicate key (first on line {entries[key][1]})", key, lineno)
        elif not value:
            result.add_error("empty value", key, lineno)
        else:
            entries[key] = (value, lineno)
    return entries


def _build(section: str, reader: _Reader, factory, **kwargs: Any):
    """Call ``factory`` and turn its :class:`ParameterError` into an issue."""
    if any(v is None for v in kwargs.values()):
        return None
    try:
        return factory(**kwargs)
    except ParameterError as exc:
        key = f"{section}.{exc.field}" if exc.field else section
        message = str(exc).removeprefix(f"{exc.field}: ")
        reader.result.add_error(message, key, reader.line(key))
        return None


def _time_function(reader: _Reader, key: str) -> TimeFunction | None:
    """Constant from ``key`` or a table from ``potential.times/values``."""
    if reader.has("potential.times") or reader.has("potential.values"):
        times = reader.numbers("potential.times")
        values = reader.numbers("potential.values")
        if times is None or values is None:
            reader.error("potential.times", "times and values must be given together")
            return None
        if len(times) != len(values) or len(times) < 2:
            reader.error("potential.values", "needs as many values as times (at least 2)")
            return None
        if any(b <= a for a, b in zip(times, times[1:], strict=False)):
            reader.error("potential.times", "must be strictly increasing")
            return None
        return TimeFunction.from_table(times, values)
    value = reader.number(key)
    return None if value is None else TimeFunction.of(value)


def _potential(reader: _Reader, mass: float | None) -> Potential | None:
    family_name = reader.choice(
        "potential.family",
        tuple(f.value for f in PotentialFamily if f != PotentialFamily.CALLABLE),
        PotentialFamily.FREE.value,
    )
    family = PotentialFamily(family_name)
    if family == PotentialFamily.FREE:
        return Free()
    if family == PotentialFamily.UNIFORM_FORCE:
        force = _time_function(reader, "potential.force")
        return None if force is None else UniformForce(force)
    if family == PotentialFamily.POLYNOMIAL:
        coefficients = reader.numbers("potential.coefficients")
        if coefficients is None:
            reader.error("potential.coefficients", "required key missing")
            return None
        return _build("potential", reader, UserPolynomial, coefficients=coefficients)

    if reader.has("potential.omega0"):
        if reader.has("potential.k"):
            reader.error("potential.omega0", "give either potential.k or potential.omega0")
            return None
        omega0 = reader.number("potential.omega0")
        if omega0 is None or mass is None:
            return None
        if omega0 <= 0:
            reader.error("potential.omega0", f"must be > 0, got {omega0}")
            return None
        return Harmonic.from_omega(mass, omega0)
    k = _time_function(reader, "potential.k")
    return None if k is None else Harmonic(k)


def _grid(
    reader: _Reader,
    params: PhysicalParams | None,
    initial: PacketState | None,
    t_end: float,
) -> GridSpec | None:
    if not any(reader.has(k) for k in ("grid.x_min", "grid.x_max", "grid.n_points", "grid.dt")):
        return None
    n_points = reader.integer("grid.n_points", 1024)
    if params is None or initial is None or n_points is None:
        return None
    fallback = default_grid(params, initial, t_end, max(n_points, 1))
    x_min = reader.number("grid.x_min", fallback.x_min)
    x_max = reader.number("grid.x_max", fallback.x_max)
    if x_min is None or x_max is None:
        return None
    dt = reader.number("grid.dt", 0.0)
    if dt == 0.0 and x_max > x_min and n_points > 0:
        dt = stable_time_step(params, x_max - x_min, n_points, t_end - initial.t)
    return _build(
        "grid", reader, GridSpec, x_min=x_min, x_max=x_max, n_points=n_points, dt=dt,
        t_end=t_end,
    )


def _warn_ignored(
    entries: dict[str, tuple[str, int]], pipeline: Pipeline, result: ValidationResult
) -> None:
    for key, (_, lineno) in entries.items():
        users = _SECTION_PIPELINES.get(key.partition(".")[0])
        if users is not None and pipeline not in users:
            result.add_warning(f"ignored by the {pipeline} pipeline", key, lineno)


def _tolerances(reader: _Reader) -> Tolerances:
    overrides: dict[str, Any] = {}
    for f in fields(Tolerances):
        key = f"tolerances.{f.name}"
        if not reader.has(key):
            continue
        value = reader.integer(key) if f.type == "int" else reader.number(key)
        if value is None:
            continue
        if value <= 0:
            reader.error(key, f"must be > 0, got {value}")
            continue
        overrides[f.name] = value
    return Tolerances(**overrides)


def check_config(text: str) -> tuple[ScenarioConfig | None, ValidationResult]:
    """Parse ``text`` and return the config (if valid) with all issues found."""
    result = ValidationResult()
    entries = _read_entries(text, result)
    reader = _Reader(entries, result)

    pipeline_name = reader.choice(
        "pipeline", tuple(p.value for p in Pipeline), Pipeline.MOMENTS.value
    )
    pipeline = Pipeline(pipeline_name)
    _warn_ignored(entries, pipeline, result)

    params = _build(
        "params",
        reader,
        PhysicalParams,
        hbar=reader.number("params.hbar", 1.0),
        mass=reader.number("params.mass", 1.0),
        nu=reader.number("params.nu", 0.0),
    )
    initial = _build(
        "initial",
        reader,
        PacketState,
        t=reader.number("initial.t", 0.0),
        q=reader.number("initial.q", 0.0),
        qdot=reader.number("initial.qdot", 0.0),
        a=reader.number("initial.a", 1.0),
        adot=reader.number("initial.adot", 0.0),
    )
    potential = _potential(reader, params.mass if params else None)

    t_end = reader.number("time.t_end")
    t0 = initial.t if initial else 0.0
    if t_end is not None and t_end <= t0:
        reader.error("time.t_end", f"must be > initial.t={t0:g}, got {t_end:g}")
        t_end = None
    samples = reader.integer("time.samples", DEFAULT_SAMPLES)
    if samples is not None and samples < 2:
        reader.error("time.samples", f"must be >= 2, got {samples}")

    grid = (
        _grid(reader, params, initial, t_end)
        if pipeline.needs_grid and t_end is not None
        else None
    )
    tolerances = _tolerances(reader)

    snapshots = reader.numbers("pde.snapshots") or ()
    if t_end is not None and any(not t0 <= s <= t_end for s in snapshots):
        reader.error("pde.snapshots", f"snapshot times must lie in [{t0:g}, {t_end:g}]")
    observe_every = reader.integer("pde.observe_every")
    if observe_every is not None and observe_every < 1:
        reader.error("pde.observe_every", f"must be >= 1, got {observe_every}")

    level = reader.number("wigner.level", math.exp(-1.0))
    if level is not None and not 0 < level < 1:
        reader.error("wigner.level", f"must be in (0, 1), got {level}")

    if params is not None and potential is not None:
        if pipeline == Pipeline.PERTURBATION:
            if params.nu <= 0:
                reader.error("params.nu", "perturbation pipeline requires nu > 0")
            if not potential.is_curvature_free:
                reader.error(
                    "potential.family",
                    "perturbation pipeline requires a free or uniform-force potential",
                )
        if pipeline == Pipeline.CROSS_VALIDATE and not potential.is_quadratic:
            reader.error(
                "potential.family", "cross-validate requires a quadratic or lower potential"
            )

    if not result.is_valid:
        return None, result

    config = ScenarioConfig(
        pipeline=pipeline,
        params=params,
        potential=potential,
        initial=initial,
        t_end=t_end,
        samples=samples,
        grid=grid,
        tolerances=tolerances,
        output_dir=Path(reader.text("output.dir", "out")),
        output_format=reader.choice("output.format", OUTPUT_FORMATS, "csv"),
        include_mean_phase=reader.flag("pde.include_mean_phase", default=True),
        snapshot_times=tuple(snapshots),
        observe_every=observe_every,
        wigner_level=level,
        wigner_half_grid=reader.flag("wigner.half_grid", default=False),
        wigner_format=reader.choice("wigner.format", WIGNER_FORMATS, "csv"),
        entries={key: value for key, (value, _) in entries.items()},
    )
    # Late issues (flags and choices) are recorded by the reader as well.
    if not result.is_valid:
        return None, result
    return config, result


def parse_config(text: str) -> ScenarioConfig:
    """Parse scenario text; raise :class:`ConfigError` on the first issue."""
    config, result = check_config(text)
    result.raise_first()
    assert config is not None
    return config


def load_config(path: Path) -> ScenarioConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))
