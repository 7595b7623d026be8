import numpy as np
import pytest

from tebdkit import models, oracles
from tebdkit.errors import ResourceError


def fock_psi(length):
    occ = models.fock_initial_state(length)
    return oracles.statevector_from_product(models.fock_site_vectors(occ)), occ


class TestStatevector:
    def test_identity_circuit_is_noop(self):
        length = 4
        psi, _ = fock_psi(length)
        circuit = models.fermion_gates(length, 1.0, 0.0)
        traj = oracles.dense_trotter_statevector(length, circuit, psi, 3)
        for n in range(4):
            np.testing.assert_allclose(traj[n], psi, atol=1e-14)

    def test_two_site_closed_form(self):
        dt = 0.2
        circuit = models.fermion_gates(2, 1.0, dt)
        psi0 = oracles.statevector_from_product(models.fock_site_vectors([1, 0]))
        traj = oracles.dense_trotter_statevector(2, circuit, psi0, 8)
        for n in range(9):
            # basis order: |11>, |10>, |01>, |00> with occupied = index 0
            expected = np.array([0, np.cos(n * dt), -1j * np.sin(n * dt), 0])
            np.testing.assert_allclose(traj[n], expected, atol=1e-12)

    def test_norm_preserved(self):
        length = 6
        psi, _ = fock_psi(length)
        circuit = models.fermion_gates(length, 1.0, 0.08)
        traj = oracles.dense_trotter_statevector(length, circuit, psi, 20)
        norms = np.linalg.norm(traj, axis=1)
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_size_guard(self):
        with pytest.raises(ResourceError):
            oracles.dense_trotter_statevector(
                13, models.fermion_gates(13, 1.0, 0.08), np.zeros(2**13), 1
            )


class TestDensity:
    def test_pure_state_consistency(self):
        length, steps = 5, 10
        psi, _ = fock_psi(length)
        circuit = models.fermion_gates(length, 1.0, 0.08)
        straj = oracles.dense_trotter_statevector(length, circuit, psi, steps)
        rtraj = oracles.dense_trotter_density(
            length, circuit, np.outer(psi, psi.conj()), steps
        )
        for n in range(steps + 1):
            np.testing.assert_allclose(
                rtraj[n], np.outer(straj[n], straj[n].conj()), atol=1e-12
            )

    def test_trace_and_hermiticity_preserved(self):
        length = 4
        occ = models.fock_initial_state(length)
        a = oracles.statevector_from_product(models.fock_site_vectors(occ))
        b = oracles.statevector_from_product(models.fock_site_vectors([1 - o for o in occ]))
        psi = (a + b) / np.sqrt(2)
        circuit = models.fermion_gates(length, 1.0, 0.08)
        traj = oracles.dense_trotter_density(length, circuit, np.outer(psi, psi.conj()), 15)
        for n in range(16):
            assert np.trace(traj[n]).real == pytest.approx(1.0, abs=1e-12)
            np.testing.assert_allclose(traj[n], traj[n].conj().T, atol=1e-12)

    def test_size_guard(self):
        with pytest.raises(ResourceError):
            oracles.dense_trotter_density(
                9, models.fermion_gates(9, 1.0, 0.08), np.zeros((2**9, 2**9)), 1
            )


class TestGaussian:
    def test_initial_matrix_is_diagonal_pattern(self):
        occ = models.fock_initial_state(8)
        traj = oracles.gaussian_trotter(8, occ, 1.0, 0.08, 0)
        np.testing.assert_array_equal(traj[0], np.diag(occ))

    def test_two_site_closed_form(self):
        dt = 0.15
        traj = oracles.gaussian_trotter(2, [1, 0], 1.0, dt, 12)
        for n in range(13):
            assert traj[n][0, 0].real == pytest.approx(np.cos(n * dt) ** 2, abs=1e-12)
            assert traj[n][1, 1].real == pytest.approx(np.sin(n * dt) ** 2, abs=1e-12)

    def test_diagonal_matches_dense_statevector(self):
        length, steps = 8, 50
        psi, occ = fock_psi(length)
        circuit = models.fermion_gates(length, 1.0, 0.08)
        straj = oracles.dense_trotter_statevector(length, circuit, psi, steps)
        gtraj = oracles.gaussian_trotter(length, occ, 1.0, 0.08, steps)
        for n in range(steps + 1):
            dense = oracles.statevector_number_profile(straj[n], length)
            np.testing.assert_allclose(np.real(np.diagonal(gtraj[n])), dense, atol=1e-10)

    def test_off_diagonals_match_canonical_fermions(self):
        from conftest import dense_fermion_annihilators

        length, steps = 4, 7
        psi, occ = fock_psi(length)
        circuit = models.fermion_gates(length, 1.0, 0.08)
        straj = oracles.dense_trotter_statevector(length, circuit, psi, steps)
        gtraj = oracles.gaussian_trotter(length, occ, 1.0, 0.08, steps)
        cs = dense_fermion_annihilators(length)
        for n in range(steps + 1):
            expected = np.array(
                [
                    [straj[n].conj() @ (cs[i].conj().T @ cs[j]) @ straj[n] for j in range(length)]
                    for i in range(length)
                ]
            )
            np.testing.assert_allclose(gtraj[n], expected, atol=1e-10)

    def test_trace_conserved_per_step(self):
        occ = models.fock_initial_state(16)
        traj = oracles.gaussian_trotter(16, occ, 1.0, 0.08, 40)
        traces = np.real(np.trace(traj, axis1=1, axis2=2))
        np.testing.assert_allclose(traces, 8.0, atol=1e-12)

    def test_hermitian_with_bounded_spectrum(self):
        occ = models.fock_initial_state(12)
        traj = oracles.gaussian_trotter(12, occ, 1.0, 0.08, 30)
        c = traj[-1]
        np.testing.assert_allclose(c, c.conj().T, atol=1e-12)
        evals = np.linalg.eigvalsh(c)
        assert evals.min() > -1e-10
        assert evals.max() < 1 + 1e-10

    def test_reflection_symmetric_fourier_is_real(self):
        length, steps, k = 16, 50, np.pi / 4
        occ = models.fock_initial_state(length)
        traj = oracles.gaussian_trotter(length, occ, 1.0, 0.08, steps)
        for n in range(steps + 1):
            profile = np.real(np.diagonal(traj[n]))
            val = np.sum(np.exp(-1j * k * (np.arange(length) + 0.5)) * profile) / length
            assert abs(val.imag) < 1e-10

    def test_non_fock_initial_rejected(self):
        with pytest.raises(ValueError, match="Fock"):
            oracles.gaussian_trotter(3, [1, 0.5, 0], 1.0, 0.08, 1)
