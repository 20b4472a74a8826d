"""Tests for error messages and attributes."""

from __future__ import annotations

from kostin.errors import (
    ConfigError,
    GridError,
    KostinError,
    NoSolutionError,
    NormDriftError,
    NumericalError,
    PacketEscapedError,
    ParameterError,
    QuadratureError,
    SingularityError,
    UnwrapError,
)


class TestLocationPrefix:
    """Test that errors carry their location in the message."""

    def test_numerical_error_prefix(self):
        err = NumericalError("boom", "pde", 1.5)
        assert str(err) == "[pde] at t=1.5: boom"
        assert err.module == "pde"
        assert err.t == 1.5

    def test_numerical_error_without_location(self):
        assert str(NumericalError("boom")) == "boom"

    def test_config_error_path_and_line(self):
        err = ConfigError("must be > 0", "initial.a", 3)
        assert str(err) == "initial.a line 3: must be > 0"
        assert err.path == "initial.a"
        assert err.line == 3

    def test_parameter_error_field(self):
        err = ParameterError("must be > 0", "mass")
        assert str(err) == "mass: must be > 0"
        assert isinstance(err, ValueError)


class TestNumericalErrors:
    """Test the numerical failure subclasses."""

    def test_singularity(self):
        err = SingularityError(1e-13, 1e-12, 2.0)
        assert err.a == 1e-13
        assert err.module == "moments"
        assert "a_floor" in str(err)

    def test_unwrap(self):
        err = UnwrapError(41, 0.25)
        assert err.index == 41
        assert "between points 41 and 42" in str(err)

    def test_norm_drift(self):
        assert NormDriftError(2e-9, 1.0).drift == 2e-9

    def test_packet_escaped(self):
        err = PacketEscapedError(1e-3, 4.0)
        assert err.boundary_density == 1e-3
        assert str(err).startswith("[pde] at t=4:")

    def test_no_solution(self):
        err = NoSolutionError("no root", -3.0, -1.0)
        assert err.module == "perturbation"
        assert "[-3.000e+00, -1.000e+00]" in str(err)

    def test_quadrature(self):
        err = QuadratureError("off", 0.5)
        assert err.value == 0.5
        assert err.module == "wigner"

    def test_hierarchy(self):
        for cls in (GridError, UnwrapError, PacketEscapedError, QuadratureError):
            assert issubclass(cls, NumericalError)
        assert issubclass(NumericalError, KostinError)
        assert issubclass(ConfigError, KostinError)
