"""Tests for the shared domain types and tolerances."""

from __future__ import annotations

import math

import numpy as np
import pytest

from kostin.errors import ParameterError
from kostin.potentials import Free, Harmonic, UserPolynomial
from kostin.tolerances import DEFAULT_TOLERANCES, Tolerances
from kostin.types import GridSpec, PacketState, PhysicalParams


class TestPhysicalParams:
    """Test physical parameter validation."""

    def test_defaults(self):
        params = PhysicalParams()
        assert (params.hbar, params.mass, params.nu) == (1.0, 1.0, 0.0)
        assert params.is_conservative

    def test_damped_is_not_conservative(self):
        assert not PhysicalParams(nu=0.5).is_conservative

    @pytest.mark.parametrize(
        ("kwargs", "field"),
        [
            ({"hbar": 0.0}, "hbar"),
            ({"mass": -1.0}, "mass"),
            ({"nu": -0.1}, "nu"),
            ({"mass": math.nan}, "mass"),
            ({"hbar": math.inf}, "hbar"),
        ],
    )
    def test_rejects_invalid(self, kwargs, field):
        with pytest.raises(ParameterError, match=field) as exc_info:
            PhysicalParams(**kwargs)
        assert exc_info.value.field == field

    def test_parameter_error_is_value_error(self):
        with pytest.raises(ValueError):
            PhysicalParams(hbar=-1.0)

    def test_omega_sq_harmonic(self):
        params = PhysicalParams(mass=2.0)
        assert params.omega_sq(Harmonic.from_omega(2.0, 3.0), 0.7) == pytest.approx(9.0)

    def test_omega_sq_follows_position(self):
        pot = UserPolynomial((0.0, 0.0, -1.0, 0.0, 0.25))
        params = PhysicalParams(mass=0.5)
        assert params.omega_sq(pot, 0.0) == pytest.approx(-4.0)
        assert params.omega_sq(pot, 2.0) == pytest.approx(20.0)
        assert params.omega_sq(Free(), 5.0, t=1.0) == 0.0


class TestPacketState:
    """Test packet state validation and conversion."""

    def test_array_conversion(self):
        state = PacketState(t=2.0, q=1.0, qdot=-0.5, a=0.7, adot=0.2)
        np.testing.assert_array_equal(state.as_array(), [1.0, -0.5, 0.7, 0.2])
        assert PacketState.from_array(2.0, state.as_array()) == state

    @pytest.mark.parametrize("a", [0.0, -1.0])
    def test_rejects_nonpositive_width(self, a):
        with pytest.raises(ParameterError, match="width must be > 0") as exc_info:
            PacketState(a=a)
        assert exc_info.value.field == "a"

    def test_rejects_infinite_velocity(self):
        with pytest.raises(ParameterError, match="qdot"):
            PacketState(qdot=math.inf)


class TestGridSpec:
    """Test the periodic grid geometry."""

    def test_axes(self):
        grid = GridSpec(x_min=-20.0, x_max=20.0, n_points=1024)
        assert grid.dx == pytest.approx(40.0 / 1024)
        assert grid.x[0] == -20.0
        assert grid.x[-1] == pytest.approx(20.0 - grid.dx)
        assert grid.k[1] == pytest.approx(2.0 * np.pi / 40.0)
        assert grid.k_max == pytest.approx(np.pi / grid.dx)
        assert grid.is_power_of_two

    def test_not_power_of_two(self):
        assert not GridSpec(n_points=100).is_power_of_two

    def test_steps_and_samples(self):
        grid = GridSpec(dt=0.1, t_end=1.0)
        assert grid.n_steps() == 10
        samples = grid.sample_times()
        assert len(samples) == 11
        assert samples[-1] == pytest.approx(1.0)
        assert grid.n_steps(t_start=0.5) == 5

    def test_short_last_step(self):
        grid = GridSpec(dt=0.03, t_end=1.0)
        assert grid.n_steps() == 34
        samples = grid.sample_times()
        assert samples[-1] == 1.0
        assert samples[-2] == pytest.approx(0.99)
        assert np.all(np.diff(samples) > 0)

    def test_rejects_reversed_bounds(self):
        with pytest.raises(ParameterError, match="x_min"):
            GridSpec(x_min=1.0, x_max=-1.0)

    def test_rejects_tiny_grid(self):
        with pytest.raises(ParameterError, match="n_points"):
            GridSpec(n_points=8)

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(ParameterError, match="dt"):
            GridSpec(dt=0.0)


class TestTolerances:
    """Test tolerance scaling."""

    def test_scaled_touches_only_checks(self):
        scaled = DEFAULT_TOLERANCES.scaled(10.0)
        assert scaled.pde_check == pytest.approx(1e-2)
        assert scaled.oracle_check == pytest.approx(1e-7)
        assert scaled.wigner_check == pytest.approx(1e-5)
        assert scaled.perturbation_check == pytest.approx(0.2)
        assert scaled.exponent_check == pytest.approx(0.1)
        assert scaled.rtol == DEFAULT_TOLERANCES.rtol
        assert scaled.rho_cut == DEFAULT_TOLERANCES.rho_cut

    def test_frozen(self):
        with pytest.raises(AttributeError):
            Tolerances().rtol = 1.0  # type: ignore[misc]
