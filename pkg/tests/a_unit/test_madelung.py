"""Tests for the hydrodynamic decomposition."""

from __future__ import annotations

import numpy as np
import pytest

from kostin.errors import GridError, UnwrapError
from kostin.pde import (
    GridWavefunction,
    bohm_potential,
    gaussian_wavefunction,
    madelung_decompose,
    probability_current,
    unwrap_phase,
)
from kostin.types import PacketState, PhysicalParams


class TestUnwrapPhase:
    """Test phase unwrapping from the density maximum."""

    def test_linear_phase(self, wide_grid):
        x = wide_grid.x
        k0 = 3.0
        psi = np.exp(-(x**2) / 4) * np.exp(1j * k0 * x)
        mask = np.abs(psi) ** 2 > 1e-12
        phase = unwrap_phase(psi, mask)
        np.testing.assert_allclose(np.diff(phase)[mask[:-1] & mask[1:]], k0 * wide_grid.dx)

    def test_real_positive_state_has_zero_phase(self, unit_params, wide_grid):
        wf = gaussian_wavefunction(unit_params, PacketState(), wide_grid)
        hydro = madelung_decompose(unit_params, wf)
        np.testing.assert_array_equal(hydro.phase, 0.0)
        np.testing.assert_array_equal(hydro.velocity, 0.0)

    def test_constant_through_tails(self, unit_params, boosted_state, wide_grid):
        hydro = madelung_decompose(
            unit_params, gaussian_wavefunction(unit_params, boosted_state, wide_grid)
        )
        assert not hydro.mask[0]
        first = int(np.argmax(hydro.mask))
        assert np.all(hydro.phase[:first] == hydro.phase[first])

    def test_ambiguous_jump(self, unit_params, wide_grid):
        wf = gaussian_wavefunction(unit_params, PacketState(), wide_grid)
        flipped = np.where(wide_grid.x < 0, -wf.psi, wf.psi)
        with pytest.raises(UnwrapError, match="ambiguous") as exc_info:
            madelung_decompose(unit_params, GridWavefunction(wide_grid, 0.0, flipped))
        assert exc_info.value.index == 511


class TestHydroFields:
    """Test density, velocity and current of Gaussian packets."""

    def test_velocity_field(self, unit_params, boosted_state, wide_grid):
        wf = gaussian_wavefunction(unit_params, boosted_state, wide_grid)
        hydro = madelung_decompose(unit_params, wf)
        s = boosted_state
        expected = s.adot / s.a * (wide_grid.x - s.q) + s.qdot
        inside = hydro.velocity_mask
        assert inside.sum() > 100
        np.testing.assert_allclose(hydro.velocity[inside], expected[inside], atol=1e-8)
        assert np.all(hydro.velocity[~inside] == 0.0)

    def test_current(self, unit_params, boosted_state, wide_grid):
        wf = gaussian_wavefunction(unit_params, boosted_state, wide_grid)
        hydro = madelung_decompose(unit_params, wf)
        np.testing.assert_allclose(probability_current(unit_params, wf), hydro.current, atol=1e-8)

    def test_mean_phase_of_constant_phase(self, wide_grid):
        params = PhysicalParams(hbar=2.0)
        wf = gaussian_wavefunction(params, PacketState(), wide_grid)
        rotated = GridWavefunction(wide_grid, 0.0, wf.psi * np.exp(0.5j))
        hydro = madelung_decompose(params, rotated)
        assert hydro.mean_phase(wide_grid.dx) == pytest.approx(1.0)

    def test_nothing_above_cut(self, unit_params, wide_grid):
        wf = GridWavefunction(wide_grid, 0.0, np.zeros(wide_grid.n_points, dtype=complex))
        with pytest.raises(GridError, match="rho_cut"):
            madelung_decompose(unit_params, wf)


class TestBohmPotential:
    """Test the quantum potential against its Gaussian closed form."""

    @pytest.mark.parametrize("a", [0.7, 1.0, 1.5])
    def test_gaussian(self, unit_params, wide_grid, a):
        wf = gaussian_wavefunction(unit_params, PacketState(q=0.5, a=a), wide_grid)
        xi = wide_grid.x - 0.5
        expected = -0.5 * (xi**2 / (4 * a**4) - 1 / (2 * a**2))
        core = np.abs(xi) < 4 * a
        np.testing.assert_allclose(
            bohm_potential(unit_params, wf)[core], expected[core], atol=1e-8
        )

    def test_masked_points_are_zero(self, unit_params, wide_grid):
        wf = gaussian_wavefunction(unit_params, PacketState(a=0.7), wide_grid)
        q = bohm_potential(unit_params, wf)
        assert q[0] == 0.0
        assert q[-1] == 0.0
