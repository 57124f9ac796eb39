import math

import numpy as np
import pytest

from fieldmode import dynamics, hilbert, models, observables
from fieldmode.dynamics import IntegratorConfig, NoiseStream
from fieldmode.errors import StabilityViolation, TailTooLarge
from fieldmode.hilbert import FockCutoff
from fieldmode.models import SystemParams


class TestNoise:
    def test_statistics(self):
        dt = 0.01
        n = 100_000
        draws = dynamics.sample_noise(NoiseStream(seed=42), dt, n)
        assert abs(draws.mean()) <= 4.0 * math.sqrt(dt / n)
        assert np.mean(np.abs(draws) ** 2) == pytest.approx(dt, rel=0.05)
        squares = draws ** 2
        se = np.std(squares.real) / math.sqrt(n) + 1j * np.std(squares.imag) / math.sqrt(n)
        mean_sq = squares.mean()
        assert abs(mean_sq.real) <= 4.0 * se.real
        assert abs(mean_sq.imag) <= 4.0 * se.imag

    def test_replay_is_bit_identical(self):
        a = dynamics.sample_noise(NoiseStream(seed=7, stream_id=3), 0.01, 1000)
        b = dynamics.sample_noise(NoiseStream(seed=7, stream_id=3), 0.01, 1000)
        np.testing.assert_array_equal(a, b)

    def test_streams_are_distinct(self):
        a = dynamics.sample_noise(NoiseStream(seed=7, stream_id=0), 0.01, 1000)
        b = dynamics.sample_noise(NoiseStream(seed=7, stream_id=1), 0.01, 1000)
        c = dynamics.sample_noise(NoiseStream(seed=8, stream_id=0), 0.01, 1000)
        assert not np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_rejects_bad_dt(self):
        with pytest.raises(ValueError):
            dynamics.sample_noise(NoiseStream(seed=1), 0.0, 4)


def tiny_damped_model(gamma=0.1, lam=0.05, alpha=1.0, n_max=8):
    p = SystemParams(lam=lam, gamma=gamma, alpha=complex(alpha))
    cutoff = FockCutoff(n_max=n_max, leakage_tol=1e-5)
    return models.build_model(p, cutoff), models.initial_state(p, cutoff)


class TestMasterEquation:
    def test_unitary_limit_matches_state_evolution(self):
        # gamma = 0: the density-matrix step must track the pure state
        model, psi0 = tiny_damped_model(gamma=0.0)
        cfg = IntegratorConfig(dt=0.005, t_end=5.0, sample_stride=100, scheme="rk4")
        me = dynamics.run_master(psi0, cfg, model)
        pure = dynamics.run_trajectory(psi0, cfg, model)
        np.testing.assert_allclose(me.sigma_z, pure.sigma_z, atol=1e-9)
        np.testing.assert_allclose(me.photon_number, pure.photon_number, atol=1e-9)

    def test_damped_cavity_decay(self):
        # decoupled field from |n=1>, no drive: <n>(t) = exp(-gamma t)
        p = SystemParams(lam=0.0, gamma=0.01, alpha=0j)
        cutoff = FockCutoff(n_max=8)
        model = models.build_model(p, cutoff)
        psi0 = hilbert.product_state(hilbert.qubit_up(), hilbert.fock_state(1, cutoff))
        cfg = IntegratorConfig(dt=0.01, t_end=100.0, sample_stride=1000, scheme="rk4")
        run = dynamics.run_master(psi0, cfg, model)
        assert run.photon_number[-1] == pytest.approx(math.exp(-1.0), abs=1e-4)

    def test_driven_field_holds_photon_number(self):
        # drive + shift on, lam = 0: the coherent state is maintained
        p = SystemParams(lam=0.0, gamma=0.05, alpha=1.0 + 0j)
        cutoff = FockCutoff(n_max=14)
        model = models.build_model(p, cutoff)
        psi0 = models.initial_state(p, cutoff)
        cfg = IntegratorConfig(dt=0.005, t_end=10 * 2 * math.pi, sample_stride=200,
                               scheme="rk4")
        run = dynamics.run_master(psi0, cfg, model)
        assert np.max(np.abs(run.photon_number - 1.0)) <= 0.02

    def test_invariants_along_damped_run(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.005, t_end=10.0, sample_stride=200, scheme="rk4")
        run = dynamics.run_master(psi0, cfg, model, state_stride=2)
        assert run.norm_error.max() <= 1e-6  # trace drift channel
        for rho in run.states:
            hilbert.assert_density_matrix(rho, herm_tol=1e-12, trace_tol=1e-6,
                                          eig_tol=1e-6)

    def test_trace_blowup_raises(self):
        # dt far beyond the 4th-order stability boundary: the state explodes
        # and the per-step trace-drift check must fire
        model, psi0 = tiny_damped_model(gamma=0.5, n_max=20)
        rho = np.outer(psi0, psi0.conj())
        bad = IntegratorConfig(dt=0.2, t_end=1.0, sample_stride=1, scheme="rk4")
        with pytest.raises(StabilityViolation):
            for k in range(400):
                rho = dynamics.step_master(rho, k * bad.dt, bad, model)

    def test_halving_dt_converges_at_fourth_order(self):
        model, psi0 = tiny_damped_model(gamma=0.0)
        results = {}
        for dt in (0.04, 0.02, 0.01):
            cfg = IntegratorConfig(dt=dt, t_end=4.0, sample_stride=int(4.0 / dt),
                                   scheme="rk4")
            results[dt] = dynamics.run_trajectory(psi0, cfg, model).sigma_z[-1]
        coarse = abs(results[0.04] - results[0.02])
        fine = abs(results[0.02] - results[0.01])
        assert fine <= coarse / 8.0


class TestDiffusiveStep:
    def test_gamma_zero_reduces_to_schrodinger_step(self):
        model, psi0 = tiny_damped_model(gamma=0.0)
        cfg = IntegratorConfig(dt=1e-4, t_end=1.0, sample_stride=100,
                               scheme="euler-maruyama")
        out, defect = dynamics.step_qsd(psi0, 0.0, cfg, model, NoiseStream(seed=1))
        expected = psi0 + cfg.dt * (-1j) * (model.h_static @ psi0)
        expected /= np.linalg.norm(expected)
        np.testing.assert_allclose(out, expected, atol=1e-14)
        assert defect < 1e-6

    def test_energy_conserved_without_damping(self):
        model, psi0 = tiny_damped_model(gamma=0.0, lam=0.2)
        h = model.h_static
        e0 = hilbert.expectation(h, psi0).real
        cfg = IntegratorConfig(dt=2e-4, t_end=2.0, sample_stride=500, scheme="heun")
        obs = [("energy", lambda s: hilbert.expectation(h, s).real)]
        run = dynamics.run_trajectory(psi0, cfg, model, observers=obs)
        drift = np.max(np.abs(run.values["energy"] - e0)) / abs(e0)
        assert drift <= 1e-6

    def test_coherent_state_fixed_point(self):
        # pure damping (no drive): the trajectory hugs the decaying rotating
        # coherent state |alpha0 exp(-(i omega + gamma/2) t)>
        alpha0, gamma = 1.0, 0.05
        p = SystemParams(lam=0.0, gamma=gamma, alpha=0j)
        cutoff = FockCutoff(n_max=12)
        model = models.build_model(p, cutoff)
        psi0 = hilbert.product_state(hilbert.qubit_up(),
                                     hilbert.coherent_state(alpha0, cutoff))
        cfg = IntegratorConfig(dt=5e-4, t_end=2.0, sample_stride=400,
                               scheme="euler-maruyama")
        run = dynamics.run_trajectory(psi0, cfg, model,
                                      stream=NoiseStream(seed=3), state_stride=1)
        loose = FockCutoff(n_max=12, leakage_tol=1e-3)
        for t, state in zip(run.times, run.states):
            target = hilbert.coherent_state(alpha0 * np.exp(-(1j + gamma / 2.0) * t),
                                            loose)
            rho_f = observables.reduce_field(state)
            overlap = math.sqrt(max(0.0, np.vdot(target, rho_f @ target).real))
            assert overlap >= 0.999

    def test_norm_blowup_raises(self):
        model, psi0 = tiny_damped_model()
        bad = IntegratorConfig(dt=0.09, t_end=1.0, sample_stride=1,
                               scheme="euler-maruyama")
        with pytest.raises(StabilityViolation):
            dynamics.run_trajectory(psi0, bad, model, stream=NoiseStream(seed=1))

    def test_rk4_refuses_damped_model(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.005, t_end=1.0, sample_stride=10, scheme="rk4")
        with pytest.raises(ValueError):
            dynamics.run_trajectory(psi0, cfg, model)

    def test_damped_run_needs_stream(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.005, t_end=1.0, sample_stride=10, scheme="heun")
        with pytest.raises(ValueError):
            dynamics.run_trajectory(psi0, cfg, model)


class TestTrajectoriesAndEnsembles:
    def test_replay_bit_identical(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.01, t_end=3.0, sample_stride=30, scheme="heun")
        a = dynamics.run_trajectory(psi0, cfg, model, stream=NoiseStream(seed=9, stream_id=2))
        b = dynamics.run_trajectory(psi0, cfg, model, stream=NoiseStream(seed=9, stream_id=2))
        np.testing.assert_array_equal(a.sigma_z, b.sigma_z)
        np.testing.assert_array_equal(a.norm_error, b.norm_error)

    def test_decoupled_qubit_keeps_inversion(self):
        model, psi0 = tiny_damped_model(lam=0.0)
        cfg = IntegratorConfig(dt=0.01, t_end=5.0, sample_stride=50, scheme="heun")
        run = dynamics.run_trajectory(psi0, cfg, model, stream=NoiseStream(seed=4))
        np.testing.assert_allclose(run.sigma_z, 1.0, atol=1e-12)

    def test_single_member_ensemble_reduces_to_trajectory(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.01, t_end=3.0, sample_stride=30, scheme="heun")
        single = dynamics.run_trajectory(psi0, cfg, model,
                                         stream=NoiseStream(seed=11, stream_id=0))
        ens = dynamics.run_ensemble(psi0, cfg, model, n_traj=1, base_seed=11)
        np.testing.assert_array_equal(ens.sigma_z, single.sigma_z)
        np.testing.assert_array_equal(ens.stderr["sigma_z"], 0.0)

    def test_thread_count_does_not_change_results(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.01, t_end=2.0, sample_stride=20, scheme="heun")
        serial = dynamics.run_ensemble(psi0, cfg, model, n_traj=6, base_seed=3, threads=1)
        pooled = dynamics.run_ensemble(psi0, cfg, model, n_traj=6, base_seed=3, threads=3)
        np.testing.assert_array_equal(serial.sigma_z, pooled.sigma_z)
        np.testing.assert_array_equal(serial.stderr["sigma_z"], pooled.stderr["sigma_z"])

    def test_ensemble_norm_diagnostics_bounded(self):
        model, psi0 = tiny_damped_model()
        cfg = IntegratorConfig(dt=0.01, t_end=2.0, sample_stride=20, scheme="heun")
        ens = dynamics.run_ensemble(psi0, cfg, model, n_traj=5, base_seed=3)
        assert ens.norm_error.max() <= 1e-2

    def test_short_horizon_ensemble_tracks_master_equation(self):
        model, psi0 = tiny_damped_model()
        me_cfg = IntegratorConfig(dt=0.01, t_end=10.0, sample_stride=50, scheme="rk4")
        me = dynamics.run_master(psi0, me_cfg, model)
        cfg = IntegratorConfig(dt=0.01, t_end=10.0, sample_stride=50, scheme="heun")
        ens = dynamics.run_ensemble(psi0, cfg, model, n_traj=200, base_seed=17)
        bound = np.maximum(3.0 * ens.stderr["sigma_z"], 0.05)
        assert np.all(np.abs(ens.sigma_z - me.sigma_z) <= bound)

    def test_halving_dt_leaves_ensemble_distribution_unchanged(self):
        # stochastic convergence is checked in distribution: two ensembles at
        # dt and dt/2 (independent streams) agree within joint standard error
        model, psi0 = tiny_damped_model()
        coarse = dynamics.run_ensemble(
            psi0, IntegratorConfig(dt=0.02, t_end=8.0, sample_stride=40, scheme="heun"),
            model, n_traj=80, base_seed=101)
        fine = dynamics.run_ensemble(
            psi0, IntegratorConfig(dt=0.01, t_end=8.0, sample_stride=80, scheme="heun"),
            model, n_traj=80, base_seed=707)
        joint_se = np.sqrt(coarse.stderr["sigma_z"] ** 2 + fine.stderr["sigma_z"] ** 2)
        dev = np.abs(coarse.sigma_z - fine.sigma_z)
        assert np.all(dev <= np.maximum(4.0 * joint_se, 0.02))

    def test_stability_guard_rejects_coarse_step(self):
        model, psi0 = tiny_damped_model(gamma=0.5, n_max=20)
        cfg = IntegratorConfig(dt=0.02, t_end=1.0, sample_stride=10, scheme="heun")
        with pytest.raises(ValueError):
            dynamics.run_trajectory(psi0, cfg, model, stream=NoiseStream(seed=1))


class TestAnalyticOracles:
    def test_rabi_resonant_values(self):
        p = SystemParams(nu=8.0)
        assert dynamics.analytic_rabi_inversion(0.0, p) == 1.0
        assert dynamics.analytic_rabi_inversion(math.pi / 8.0, p) == pytest.approx(-1.0)

    def test_rabi_detuned_half_contrast(self):
        p = SystemParams(omega0=1.5, nu=0.5)  # delta = nu = 0.5
        t = np.linspace(0.0, 40.0, 20001)
        values = dynamics.analytic_rabi_inversion(t, p)
        assert values.min() == pytest.approx(0.0, abs=1e-6)

    def test_rabi_matches_rotating_frame_integration(self):
        # independent oracle: integrate the rotating-frame two-level problem
        p = SystemParams(omega0=1.3, nu=0.7)
        h = 0.5 * np.array([[p.delta, p.nu], [p.nu, -p.delta]], dtype=complex)
        psi = np.array([1.0, 0.0], dtype=complex)
        dt, t_end = 1e-4, 6.0
        steps = int(round(t_end / dt))
        inversions = [1.0]
        for k in range(steps):
            k1 = -1j * (h @ psi)
            k2 = -1j * (h @ (psi + 0.5 * dt * k1))
            k3 = -1j * (h @ (psi + 0.5 * dt * k2))
            k4 = -1j * (h @ (psi + dt * k3))
            psi = psi + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
            inversions.append(abs(psi[0]) ** 2 - abs(psi[1]) ** 2)
        times = np.arange(steps + 1) * dt
        np.testing.assert_allclose(dynamics.analytic_rabi_inversion(times, p),
                                   inversions, atol=1e-6)

    def test_jc_starts_at_one(self, quantum_limit_params):
        assert dynamics.analytic_jc_inversion(0.0, quantum_limit_params) == pytest.approx(1.0)

    def test_jc_revival_amplitude(self, quantum_limit_params):
        t = np.linspace(23.0, 25.6, 600)
        values = np.abs(dynamics.analytic_jc_inversion(t, quantum_limit_params))
        assert values.max() > 0.3

    def test_jc_matches_numerical_run(self, quantum_limit_params, quantum_limit_run):
        oracle = dynamics.analytic_jc_inversion(quantum_limit_run.times, quantum_limit_params)
        assert np.max(np.abs(quantum_limit_run.sigma_z - oracle)) <= 0.02

    def test_jc_tail_guard(self, quantum_limit_params):
        with pytest.raises(TailTooLarge):
            dynamics.analytic_jc_inversion(1.0, quantum_limit_params, n_terms=5)

    def test_jc_rejects_detuned(self):
        with pytest.raises(ValueError):
            dynamics.analytic_jc_inversion(1.0, SystemParams(omega0=1.2, lam=1.0,
                                                             alpha=1.0 + 0j))
