import math

import numpy as np
import pytest

from fieldmode import hilbert, observables
from fieldmode.errors import DimensionMismatch, GridTooCoarse, NegativeEigenvalue
from fieldmode.hilbert import FockCutoff
from fieldmode.observables import GridSpec


def random_pure_state(rng, nf):
    psi = rng.standard_normal(2 * nf) + 1j * rng.standard_normal(2 * nf)
    return psi / np.linalg.norm(psi)


class TestInversion:
    def test_up_product_state(self):
        c = FockCutoff(n_max=30)
        psi = hilbert.product_state(hilbert.qubit_up(), hilbert.coherent_state(1.5, c))
        assert observables.inversion(psi) == pytest.approx(1.0)

    def test_balanced_superposition(self):
        c = FockCutoff(n_max=4)
        qubit = (hilbert.qubit_up() + hilbert.qubit_down()) / math.sqrt(2.0)
        psi = hilbert.product_state(qubit, hilbert.fock_state(0, c))
        assert observables.inversion(psi) == pytest.approx(0.0, abs=1e-15)

    def test_maximally_mixed(self):
        dim = 12
        rho = np.eye(dim, dtype=complex) / dim
        assert observables.inversion(rho) == pytest.approx(0.0, abs=1e-15)

    def test_bounded(self):
        rng = np.random.default_rng(0)
        for _ in range(25):
            val = observables.inversion(random_pure_state(rng, 7))
            assert -1.0 <= val <= 1.0


class TestPartialTraces:
    def test_product_state_gives_pure_qubit(self):
        c = FockCutoff(n_max=30)
        psi = hilbert.product_state(hilbert.qubit_up(), hilbert.coherent_state(1.0, c))
        rho_q = observables.reduce_qubit(psi)
        np.testing.assert_allclose(rho_q, np.diag([1.0, 0.0]), atol=1e-12)

    def test_maximally_entangled_gives_mixed_qubit(self):
        c = FockCutoff(n_max=4)
        psi = (hilbert.product_state(hilbert.qubit_up(), hilbert.fock_state(0, c))
               + hilbert.product_state(hilbert.qubit_down(), hilbert.fock_state(1, c)))
        psi = psi / np.linalg.norm(psi)
        np.testing.assert_allclose(observables.reduce_qubit(psi), np.eye(2) / 2.0,
                                   atol=1e-12)

    def test_reductions_share_schmidt_spectrum(self):
        # oracle: singular values of the amplitude matrix
        rng = np.random.default_rng(12)
        for _ in range(10):
            psi = random_pure_state(rng, 9)
            svals = np.linalg.svd(psi.reshape(2, 9), compute_uv=False)
            expected = np.sort(svals**2)[::-1]
            eq = np.sort(np.linalg.eigvalsh(observables.reduce_qubit(psi)))[::-1]
            ef = np.sort(np.linalg.eigvalsh(observables.reduce_field(psi)))[::-1]
            np.testing.assert_allclose(eq[:2], expected[:2], atol=1e-10)
            np.testing.assert_allclose(ef[:2], expected[:2], atol=1e-10)

    def test_density_matrix_input(self):
        c = FockCutoff(n_max=3)
        psi = hilbert.product_state(hilbert.qubit_down(), hilbert.fock_state(2, c))
        rho = np.outer(psi, psi.conj())
        np.testing.assert_allclose(observables.reduce_qubit(rho), np.diag([0.0, 1.0]),
                                   atol=1e-14)
        np.testing.assert_allclose(np.diagonal(observables.reduce_field(rho)).real,
                                   [0, 0, 1, 0], atol=1e-14)


class TestEntropy:
    def test_pure_state_zero(self):
        assert observables.entropy_nats(np.diag([1.0, 0.0]).astype(complex)) == 0.0

    def test_maximally_mixed_qubit(self):
        value = observables.entropy_nats(np.eye(2, dtype=complex) / 2.0)
        assert value == pytest.approx(math.log(2.0), abs=1e-12)

    def test_biased_mixture(self):
        value = observables.entropy_nats(np.diag([0.9, 0.1]).astype(complex))
        assert value == pytest.approx(0.3251, abs=1e-4)

    def test_negative_eigenvalue_raises(self):
        with pytest.raises(NegativeEigenvalue):
            observables.entropy_nats(np.diag([1.1, -0.1]).astype(complex))

    def test_tiny_negative_clamped(self):
        value = observables.entropy_nats(np.diag([1.0 + 5e-9, -5e-9]).astype(complex))
        assert value == pytest.approx(0.0, abs=1e-7)

    def test_schmidt_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            psi = random_pure_state(rng, 11)
            s_qubit = observables.entropy_nats(observables.reduce_qubit(psi))
            s_field = observables.entropy_nats(observables.reduce_field(psi))
            assert abs(s_qubit - s_field) <= 1e-8

    def test_qubit_entropy_bounds(self):
        rng = np.random.default_rng(4)
        for _ in range(25):
            rho = observables.reduce_qubit(random_pure_state(rng, 6))
            value = observables.entropy_nats(rho)
            assert -1e-12 <= value <= math.log(2.0) + 1e-12


class TestPhotonNumber:
    def test_vacuum(self):
        c = FockCutoff(n_max=5)
        assert observables.photon_number(hilbert.fock_state(0, c), c) == 0.0

    def test_fock_three(self):
        c = FockCutoff(n_max=5)
        assert observables.photon_number(hilbert.fock_state(3, c), c) == pytest.approx(3.0)

    def test_large_coherent_state(self):
        c = hilbert.default_cutoff(50.0)
        psi = hilbert.coherent_state(math.sqrt(50.0), c)
        assert observables.photon_number(psi, c) == pytest.approx(50.0, abs=1e-6)

    def test_full_space_state(self):
        c = FockCutoff(n_max=40)
        psi = hilbert.product_state(hilbert.qubit_down(), hilbert.coherent_state(2.0, c))
        assert observables.photon_number(psi, c) == pytest.approx(4.0, abs=1e-9)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            observables.photon_number(np.ones(7, dtype=complex), FockCutoff(n_max=3))


class TestWigner:
    def test_vacuum_gaussian(self):
        c = FockCutoff(n_max=20)
        vac = hilbert.fock_state(0, c)
        spec = GridSpec(-5, 5, -5, 5, 81)
        grid = observables.wigner(np.outer(vac, vac.conj()), spec)
        center = grid.values[40, 40]
        assert center == pytest.approx(1.0 / math.pi, abs=1e-12)
        expected = np.exp(-(spec.x[:, None] ** 2 + spec.p[None, :] ** 2)) / math.pi
        np.testing.assert_allclose(grid.values, expected, atol=1e-12)
        assert abs(grid.integral - 1.0) <= 0.02
        assert grid.min_value >= -1e-12

    def test_coherent_peak_location(self):
        c = FockCutoff(n_max=30)
        alpha = 2.0
        psi = hilbert.coherent_state(alpha, c)
        spec = GridSpec(-7, 7, -7, 7, 141)
        grid = observables.wigner(np.outer(psi, psi.conj()), spec)
        ix, ip = np.unravel_index(np.argmax(grid.values), grid.values.shape)
        step = (spec.x_max - spec.x_min) / (spec.resolution - 1)
        assert abs(spec.x[ix] - math.sqrt(2.0) * alpha) <= step
        assert abs(spec.p[ip]) <= step
        expected = np.exp(-((spec.x[:, None] - math.sqrt(2) * alpha) ** 2
                            + spec.p[None, :] ** 2)) / math.pi
        np.testing.assert_allclose(grid.values, expected, atol=1e-8)

    def test_complex_amplitude_orientation(self):
        # an imaginary amplitude lives on the +p axis; guards the handedness
        # of the displacement decomposition (a real-amplitude cat cannot)
        c = FockCutoff(n_max=30)
        psi = hilbert.coherent_state(1.0 - 0.8j, c)
        spec = GridSpec(-6, 6, -6, 6, 121)
        grid = observables.wigner(np.outer(psi, psi.conj()), spec)
        expected = np.exp(-((spec.x[:, None] - math.sqrt(2) * 1.0) ** 2
                            + (spec.p[None, :] + math.sqrt(2) * 0.8) ** 2)) / math.pi
        np.testing.assert_allclose(grid.values, expected, atol=1e-10)

    def test_even_cat_interference(self):
        c = FockCutoff(n_max=30)
        beta = 2.0
        cat = hilbert.coherent_state(beta, c) + hilbert.coherent_state(-beta, c)
        cat = cat / np.linalg.norm(cat)
        spec = GridSpec(-7, 7, -7, 7, 141)
        grid = observables.wigner(np.outer(cat, cat.conj()), spec)
        assert grid.min_value < -0.1
        # independent oracle: two displaced Gaussians plus the fringe term
        norm = 2.0 * (1.0 + math.exp(-2.0 * beta ** 2))
        x, p = spec.x[:, None], spec.p[None, :]
        expected = (np.exp(-(x - beta * math.sqrt(2)) ** 2 - p ** 2)
                    + np.exp(-(x + beta * math.sqrt(2)) ** 2 - p ** 2)
                    + 2.0 * np.exp(-x ** 2 - p ** 2) * np.cos(2.0 * math.sqrt(2) * beta * p)
                    ) / (math.pi * norm)
        np.testing.assert_allclose(grid.values, expected, atol=1e-8)

    def test_uncontained_state_raises(self):
        c = FockCutoff(n_max=40)
        psi = hilbert.coherent_state(3.0, c)
        with pytest.raises(GridTooCoarse):
            observables.wigner(np.outer(psi, psi.conj()), GridSpec(-2, 2, -2, 2, 41))

    def test_rejects_vector_input(self):
        with pytest.raises(DimensionMismatch):
            observables.wigner(np.ones(4, dtype=complex), GridSpec())
