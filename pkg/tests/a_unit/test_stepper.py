"""Tests for single Kostin steps and short evolutions."""

from __future__ import annotations

import numpy as np
import pytest

from kostin.errors import PacketEscapedError, ParameterError
from kostin.pde import (
    ObservableSeries,
    evolve,
    gaussian_wavefunction,
    ground_state,
    kostin_step,
    write_snapshot_csv,
)
from kostin.potentials import Free, Harmonic
from kostin.types import GridSpec, PacketState, PhysicalParams


@pytest.fixture
def small_grid():
    return GridSpec(x_min=-10.0, x_max=10.0, n_points=256, dt=1e-3, t_end=0.05)


class TestKostinStep:
    """Test one split-operator step."""

    def test_advances_time_and_keeps_norm(self, damped_params, small_grid):
        wf = gaussian_wavefunction(damped_params, PacketState(qdot=1.0, adot=0.3), small_grid)
        after = kostin_step(damped_params, Harmonic(1.0), wf)
        assert after.t == pytest.approx(1e-3)
        assert after.norm() == pytest.approx(wf.norm(), abs=1e-12)

    def test_shorter_step_allowed(self, unit_params, small_grid):
        wf = gaussian_wavefunction(unit_params, PacketState(), small_grid)
        assert kostin_step(unit_params, Free(), wf, 5e-4).t == pytest.approx(5e-4)

    @pytest.mark.parametrize("dt", [0.0, -1e-3, 2e-3])
    def test_rejects_step_outside_grid_dt(self, unit_params, small_grid, dt):
        wf = gaussian_wavefunction(unit_params, PacketState(), small_grid)
        with pytest.raises(ParameterError, match="grid.dt"):
            kostin_step(unit_params, Free(), wf, dt)

    def test_conservative_ground_state_rotates(self, unit_params, small_grid):
        wf = ground_state(unit_params, 1.0, small_grid)
        after = kostin_step(unit_params, Harmonic(1.0), wf)
        np.testing.assert_allclose(after.psi, wf.psi * np.exp(-0.5j * 1e-3), atol=1e-8)

    def test_mean_phase_toggle_is_global(self, small_grid):
        params = PhysicalParams(nu=1.5)
        pot = Harmonic(2.0)
        wf = gaussian_wavefunction(params, PacketState(q=0.5, qdot=-1.0, a=0.8, adot=0.4), small_grid)
        with_mean = kostin_step(params, pot, wf)
        without = kostin_step(params, pot, wf, include_mean_phase=False)
        np.testing.assert_allclose(np.abs(with_mean.psi), np.abs(without.psi), atol=1e-12)
        core = np.abs(wf.psi) ** 2 > 1e-6
        relative = np.angle(with_mean.psi[core] * np.conj(without.psi[core]))
        assert np.ptp(relative) < 1e-9


class TestEvolve:
    """Test the stepping loop and its recording."""

    def test_records_and_observers(self, damped_params, small_grid):
        wf = gaussian_wavefunction(damped_params, PacketState(), small_grid)
        seen = []
        result = evolve(
            damped_params,
            Free(),
            wf,
            [lambda state, obs: seen.append(obs.t)],
            observe_every=10,
            snapshot_times=[0.02],
        )
        assert not result.truncated
        assert isinstance(result.series, ObservableSeries)
        np.testing.assert_allclose(result.series.t, [0.0, 0.01, 0.02, 0.03, 0.04, 0.05])
        assert seen == list(result.series.t)
        assert len(result.snapshots) == 1
        assert result.snapshots[0].t == pytest.approx(0.02)
        assert result.final.t == pytest.approx(0.05)
        assert set(result.series.columns()) >= {"t", "norm", "mean_x", "delta_x", "kurtosis"}

    def test_final_step_always_recorded(self, unit_params, small_grid):
        wf = gaussian_wavefunction(unit_params, PacketState(), small_grid)
        result = evolve(unit_params, Free(), wf, observe_every=7)
        assert result.series.t[-1] == pytest.approx(0.05)

    def test_non_dividing_step_reaches_end(self, unit_params):
        grid = GridSpec(x_min=-10.0, x_max=10.0, n_points=256, dt=0.03, t_end=1.0)
        wf = gaussian_wavefunction(unit_params, PacketState(), grid)
        result = evolve(unit_params, Free(), wf, observe_every=1, snapshot_times=[1.0])
        assert grid.n_steps() == 34
        assert result.final.t == pytest.approx(1.0, abs=1e-12)
        assert result.series.t[-1] == pytest.approx(1.0, abs=1e-12)
        assert result.series.t[-2] == pytest.approx(0.99)
        assert result.snapshots[0].t == pytest.approx(1.0, abs=1e-12)

    def test_escape_truncates(self, unit_params):
        grid = GridSpec(x_min=-10.0, x_max=10.0, n_points=256, dt=1e-3, t_end=1.0)
        wf = gaussian_wavefunction(unit_params, PacketState(q=-2.0, qdot=20.0), grid)
        result = evolve(unit_params, Free(), wf, observe_every=50)
        assert result.truncated
        assert isinstance(result.error, PacketEscapedError)
        assert len(result.series) >= 1
        assert result.final.t < 1.0
        with pytest.raises(PacketEscapedError):
            result.raise_if_truncated()

    def test_snapshot_csv(self, damped_params, small_grid, tmp_path):
        wf = gaussian_wavefunction(damped_params, PacketState(qdot=0.5), small_grid)
        path = write_snapshot_csv(damped_params, wf, tmp_path / "snap.csv")
        header = path.read_text().splitlines()[0]
        assert header == "x,rho,S,v,Q,re_psi,im_psi"
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        assert data.shape == (256, 7)
