"""Tests for the Gaussian Wigner function and phase-space grids."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from kostin.errors import ParameterError, QuadratureError
from kostin.pde import gaussian_wavefunction
from kostin.types import GridSpec, PacketState, PhysicalParams
from kostin.wigner import (
    WignerGrid,
    default_p_axis,
    ellipse_area,
    level_set_area,
    quadratic_form,
    uncertainties,
    wigner_gaussian_analytic,
    wigner_gaussian_grid,
    wigner_numeric,
    write_wigner_csv,
)


class TestAnalyticWigner:
    """Test the closed-form Gaussian Wigner function."""

    def test_peak(self, boosted_state):
        params = PhysicalParams(hbar=2.0)
        peak = wigner_gaussian_analytic(params, boosted_state, 1.0, 0.5)
        assert peak == pytest.approx(1.0 / (2.0 * math.pi))

    def test_positive_near_the_packet(self, unit_params, rng):
        for _ in range(20):
            state = PacketState(
                q=rng.uniform(-1, 1),
                qdot=rng.uniform(-1, 1),
                a=rng.uniform(0.5, 2.0),
                adot=rng.uniform(-1, 1),
            )
            z1, z2 = 2.0 * rng.standard_normal((2, 500))
            x = state.q + state.a * z1
            p = state.qdot + state.adot * z1 + z2 / (2 * state.a)
            assert np.all(wigner_gaussian_analytic(unit_params, state, x, p) > 0)

    def test_normalized(self, unit_params, boosted_state):
        s = boosted_state
        _, dp, _ = uncertainties(unit_params, s)
        x = np.linspace(s.q - 10 * s.a, s.q + 10 * s.a, 801)
        p = np.linspace(s.qdot - 10 * dp - 2.0, s.qdot + 10 * dp + 2.0, 801)
        grid = wigner_gaussian_grid(unit_params, s, x, p)
        assert grid.normalization() == pytest.approx(1.0, abs=1e-8)
        assert grid.f.shape == (801, 801)


class TestUncertainties:
    """Test widths and uncertainty products."""

    def test_unchirped_is_minimal(self, unit_params):
        for a in (0.3, 0.7, 1.0, 4.0):
            assert uncertainties(unit_params, PacketState(a=a))[2] == pytest.approx(0.5)

    def test_chirped_momentum_width(self, unit_params):
        dx, dp, product = uncertainties(unit_params, PacketState(a=1.0, adot=1.0))
        assert dx == 1.0
        assert dp == pytest.approx(math.sqrt(1.25))
        assert product == pytest.approx(math.sqrt(1.25))

    def test_bound_holds(self, rng):
        params = PhysicalParams(hbar=0.7, mass=1.3)
        for _ in range(10_000):
            state = PacketState(a=rng.uniform(0.01, 10.0), adot=rng.uniform(-5.0, 5.0))
            assert uncertainties(params, state)[2] >= params.hbar / 2 - 1e-12


class TestEllipseArea:
    """Test the level-set area of Gaussian states."""

    def test_area_is_pi_hbar_at_one_over_e(self):
        params = PhysicalParams(hbar=2.0)
        assert ellipse_area(params, PacketState(), math.exp(-1.0)) == pytest.approx(2 * math.pi)

    def test_state_independent(self, unit_params):
        level = 0.3
        first = ellipse_area(unit_params, PacketState(a=1.0), level)
        second = ellipse_area(unit_params, PacketState(a=3.0, adot=0.7, qdot=2.0), level)
        assert first == pytest.approx(second, rel=1e-12)

    def test_determinant(self, unit_params, boosted_state):
        assert np.linalg.det(quadratic_form(unit_params, boosted_state)) == pytest.approx(1.0)

    @pytest.mark.parametrize("level", [0.0, 1.0, -0.5, 2.0])
    def test_level_range(self, unit_params, level):
        with pytest.raises(ParameterError, match="level"):
            ellipse_area(unit_params, PacketState(), level)

    def test_cell_count_matches(self, unit_params):
        state = PacketState(a=1.0, adot=0.3)
        x = np.linspace(-4.0, 4.0, 1001)
        p = np.linspace(-3.0, 3.0, 1001)
        grid = wigner_gaussian_grid(unit_params, state, x, p)
        level = math.exp(-1.0)
        assert level_set_area(grid, level) == pytest.approx(
            ellipse_area(unit_params, state, level), rel=5e-3
        )


class TestWignerGrid:
    """Test the phase-space grid container and writer."""

    def test_shape_check(self):
        with pytest.raises(ParameterError, match="shape"):
            WignerGrid(np.arange(3.0), np.arange(4.0), np.zeros((4, 3)))

    def test_marginals(self):
        x = np.linspace(0.0, 1.0, 3)
        p = np.linspace(0.0, 2.0, 5)
        grid = WignerGrid(x, p, np.ones((3, 5)))
        np.testing.assert_allclose(grid.position_marginal(), 2.0)
        np.testing.assert_allclose(grid.momentum_marginal(), 1.0)
        assert grid.normalization() == pytest.approx(2.0)
        assert (grid.dx, grid.dp) == (0.5, 0.5)

    def test_csv(self, tmp_path):
        grid = WignerGrid(np.arange(3.0), np.arange(4.0), np.arange(12.0).reshape(3, 4))
        path = write_wigner_csv(grid, tmp_path / "w.csv")
        assert path.read_text().splitlines()[0] == "p\\x,0,1,2"
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        assert data.shape == (4, 4)
        np.testing.assert_array_equal(data[:, 0], grid.p_axis)
        np.testing.assert_array_equal(data[:, 1:], grid.f.T)

    def test_gnuplot(self, tmp_path):
        grid = WignerGrid(np.arange(3.0), np.arange(4.0), np.ones((3, 4)))
        data = np.loadtxt(write_wigner_csv(grid, tmp_path / "w.dat", "gnuplot"))
        assert data.shape == (5, 4)
        assert data[0, 0] == 3

    def test_unknown_format(self, tmp_path):
        grid = WignerGrid(np.arange(3.0), np.arange(4.0), np.ones((3, 4)))
        with pytest.raises(ParameterError, match="format"):
            write_wigner_csv(grid, tmp_path / "w.txt", "xml")  # type: ignore[arg-type]


class TestNumericWigner:
    """Test the numeric transform on small grids."""

    @pytest.fixture
    def grid(self):
        return GridSpec(x_min=-10.0, x_max=10.0, n_points=128)

    def test_default_axis(self, unit_params, grid):
        p = default_p_axis(unit_params, grid)
        assert len(p) == 128
        assert np.diff(p) == pytest.approx(np.full(127, math.pi / (128 * grid.dx)))
        assert 0.0 in p

    def test_ground_state_peak(self, unit_params, grid):
        wf = gaussian_wavefunction(unit_params, PacketState(), grid)
        w = wigner_numeric(unit_params, wf)
        assert w.f.shape == (128, 128)
        assert w.f[64, 64] == pytest.approx(1.0 / math.pi, rel=1e-9)
        assert w.imag_residue <= 1e-9
        assert trapezoid(w.position_marginal(), w.x_axis) == pytest.approx(1.0, abs=1e-8)

    def test_half_grid_interleaves(self, unit_params, grid):
        wf = gaussian_wavefunction(unit_params, PacketState(a=0.8), grid)
        full = wigner_numeric(unit_params, wf)
        half = wigner_numeric(unit_params, wf, half_grid=True)
        assert half.f.shape == (256, 128)
        np.testing.assert_allclose(half.x_axis[1::2], grid.x + grid.dx / 2)
        np.testing.assert_array_equal(half.f[0::2], full.f)

    def test_truncated_axis_fails_normalization(self, unit_params, grid):
        wf = gaussian_wavefunction(unit_params, PacketState(), grid)
        narrow = np.linspace(-0.1, 0.1, 5)
        with pytest.raises(QuadratureError, match="normalization"):
            wigner_numeric(unit_params, wf, narrow)
        assert wigner_numeric(unit_params, wf, narrow, check_normalization=False).f.shape == (
            128,
            5,
        )
