import numpy as np
import pytest

from tebdkit import models, oracles
from tebdkit.mps_engine import (
    BrickworkCircuit,
    TensorTrain,
    init_product_mps,
    norm_squared,
    pauli_expectation,
    site_expectations,
)
from tebdkit.tensor_core import TruncationPolicy

UP = np.array([1.0, 0.0])
DOWN = np.array([0.0, 1.0])


def random_train(rng, length, d, chi):
    sites = []
    left = 1
    for i in range(length):
        right = 1 if i == length - 1 else chi
        t = rng.normal(size=(left, d, right)) + 1j * rng.normal(size=(left, d, right))
        sites.append(t)
        left = right
    return TensorTrain(sites)


class TestInitProduct:
    def test_computational_basis_coefficient(self):
        tt = init_product_mps([UP, DOWN])
        assert tt.coefficient([0, 1]) == pytest.approx(1.0)
        for string in ([0, 0], [1, 0], [1, 1]):
            assert tt.coefficient(string) == pytest.approx(0.0)

    def test_fock_pattern_matches_tensor_product(self):
        occ = models.fock_initial_state(8)
        tt = init_product_mps(models.fock_site_vectors(occ))
        dense = oracles.statevector_from_product(models.fock_site_vectors(occ))
        np.testing.assert_allclose(tt.to_dense(), dense, atol=1e-14)

    def test_polarized_state_z_expectations(self):
        tt = init_product_mps([UP] * 5)
        np.testing.assert_allclose(site_expectations(tt, np.diag([1.0, -1.0])), np.ones(5))

    def test_rejects_unnormalized_vector(self):
        with pytest.raises(ValueError, match="normalized"):
            init_product_mps([np.array([1.0, 1.0])])


class TestApplyTwoSite:
    def test_identity_gate_leaves_state_unchanged(self, rng):
        tt = random_train(rng, 4, 2, 3)
        before = tt.to_dense()
        dw = tt.apply_two_site(1, np.eye(4), TruncationPolicy(16))
        np.testing.assert_allclose(tt.to_dense(), before, atol=1e-12)
        assert dw == pytest.approx(0.0, abs=1e-24)

    def test_hopping_gate_two_level_rotation(self):
        # |10> under exp(-i t h), h = (XX + YY)/2: amplitudes (cos t, -i sin t)
        t = 0.3
        circuit = models.fermion_gates(2, 1.0, t)
        tt = init_product_mps([UP, DOWN])
        tt.apply_two_site(0, circuit.odd_layer[0][1], TruncationPolicy(4))
        assert tt.coefficient([0, 1]) == pytest.approx(np.cos(t), abs=1e-12)
        assert tt.coefficient([1, 0]) == pytest.approx(-1j * np.sin(t), abs=1e-12)

    def test_entangling_gate_at_chi_one_reports_discarded_weight(self):
        circuit = models.fermion_gates(2, 1.0, 0.4)
        tt = init_product_mps([UP, DOWN])
        dw = tt.apply_two_site(0, circuit.odd_layer[0][1], TruncationPolicy(1), renormalize=True)
        # exact two-site state has Schmidt weights (cos^2, sin^2)
        assert dw == pytest.approx(np.sin(0.4) ** 2, abs=1e-12)

    def test_bond_out_of_range(self, rng):
        tt = random_train(rng, 3, 2, 2)
        with pytest.raises(ValueError, match="bond"):
            tt.apply_two_site(2, np.eye(4), TruncationPolicy(4))


class TestTebdStep:
    def test_identity_circuit_is_noop(self, rng):
        tt = random_train(rng, 5, 2, 4)
        before = tt.to_dense()
        circuit = BrickworkCircuit(
            odd_layer=[(b, np.eye(4)) for b in range(0, 4, 2)],
            even_layer=[(b, np.eye(4)) for b in range(1, 4, 2)],
            dt=0.1,
        )
        tt.tebd_step(circuit, TruncationPolicy(64))
        np.testing.assert_allclose(tt.to_dense(), before, atol=1e-12)

    def test_free_fermion_matches_dense_statevector(self):
        length, steps = 8, 20
        occ = models.fock_initial_state(length)
        circuit = models.fermion_gates(length, 1.0, 0.08)
        tt = init_product_mps(models.fock_site_vectors(occ))
        psi = oracles.statevector_from_product(models.fock_site_vectors(occ))
        traj = oracles.dense_trotter_statevector(length, circuit, psi, steps)
        policy = TruncationPolicy(16)
        for n in range(1, steps + 1):
            tt.tebd_step(circuit, policy, renormalize=True)
            np.testing.assert_allclose(tt.to_dense(), traj[n], atol=1e-10)

    def test_inverse_circuit_recovers_state(self):
        length = 6
        circuit = models.fermion_gates(length, 1.0, 0.08)
        occ = models.fock_initial_state(length)
        tt = init_product_mps(models.fock_site_vectors(occ))
        before = tt.to_dense()
        policy = TruncationPolicy(64)
        tt.tebd_step(circuit, policy, renormalize=True)
        # true inverse: undo the even layer first, then the odd layer
        for bond, op in circuit.even_layer:
            tt.apply_two_site(bond, op.conj().T, policy, renormalize=True)
        for bond, op in reversed(circuit.odd_layer):
            tt.apply_two_site(bond, op.conj().T, policy, absorb="left", renormalize=True)
        np.testing.assert_allclose(tt.to_dense(), before, atol=1e-10)

    def test_norm_preserved_without_truncation(self):
        length = 6
        circuit = models.fermion_gates(length, 1.0, 0.08)
        tt = init_product_mps(models.fock_site_vectors(models.fock_initial_state(length)))
        policy = TruncationPolicy(8)  # full rank at L=6
        for _ in range(30):
            tt.tebd_step(circuit, policy, renormalize=True)
        assert norm_squared(tt) == pytest.approx(1.0, abs=1e-12)

    def test_step_discarded_weight_monotone_in_chi(self):
        # same trajectory prefix (built untruncated), one step at various chi
        length = 8
        circuit = models.fermion_gates(length, 1.0, 0.3)
        base = init_product_mps(models.fock_site_vectors(models.fock_initial_state(length)))
        for _ in range(3):
            base.tebd_step(circuit, TruncationPolicy(16), renormalize=True)
        dws = []
        for chi in (1, 2, 4, 8):
            tt = base.copy()
            dws.append(tt.tebd_step(circuit, TruncationPolicy(chi), renormalize=True))
        assert dws[0] > 1e-6  # truncation is actually happening at small chi
        assert all(a >= b - 1e-15 for a, b in zip(dws, dws[1:]))

    def test_gate_dimension_mismatch(self, rng):
        tt = random_train(rng, 4, 2, 2)
        circuit = BrickworkCircuit(odd_layer=[(0, np.eye(16))], even_layer=[], dt=0.1)
        with pytest.raises(ValueError, match="gates"):
            tt.tebd_step(circuit, TruncationPolicy(4))


class TestCoefficientAndGauge:
    def test_product_state_match_and_mismatch(self):
        tt = init_product_mps([UP, UP, DOWN])
        assert tt.coefficient([0, 0, 1]) == pytest.approx(1.0)
        assert tt.coefficient([0, 1, 1]) == pytest.approx(0.0)

    def test_coefficient_equals_dense_entry(self, rng):
        tt = random_train(rng, 5, 2, 3)
        dense = tt.to_dense()
        string = [1, 0, 1, 1, 0]
        flat = int("".join(map(str, string)), 2)
        assert tt.coefficient(string) == pytest.approx(dense[flat], abs=1e-12)

    def test_index_out_of_range(self, rng):
        tt = random_train(rng, 3, 2, 2)
        with pytest.raises(ValueError, match="out of range"):
            tt.coefficient([0, 2, 0])

    def test_gauge_insertion_leaves_coefficients_unchanged(self, rng):
        tt = random_train(rng, 4, 2, 3)
        reference = tt.to_dense()
        g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        g += 3.0 * np.eye(3)  # keep it well-conditioned
        tt.sites[1] = np.tensordot(tt.sites[1], g, axes=(2, 0))
        tt.sites[2] = np.tensordot(np.linalg.inv(g), tt.sites[2], axes=(1, 0))
        tt.ortho_center = None
        np.testing.assert_allclose(tt.to_dense(), reference, atol=1e-10)

    def test_canonical_form_isometries(self, rng):
        tt = random_train(rng, 5, 2, 4)
        tt.canonicalize(2)
        for i in range(2):
            t = tt.sites[i]
            mat = t.reshape(-1, t.shape[2])
            np.testing.assert_allclose(mat.conj().T @ mat, np.eye(t.shape[2]), atol=1e-10)
        for i in range(3, 5):
            t = tt.sites[i]
            mat = t.reshape(t.shape[0], -1)
            np.testing.assert_allclose(mat @ mat.conj().T, np.eye(t.shape[0]), atol=1e-10)


class TestMeasurement:
    def test_pauli_expectation_on_basis_states(self):
        tt = init_product_mps([UP, DOWN, UP])
        assert pauli_expectation(tt, {0: 3}) == pytest.approx(1.0)
        assert pauli_expectation(tt, {1: 3}) == pytest.approx(-1.0)
        assert pauli_expectation(tt, {0: 3, 1: 3}) == pytest.approx(-1.0)

    def test_site_expectations_match_per_site_strings(self, rng):
        tt = random_train(rng, 5, 2, 3)
        nrm = np.sqrt(norm_squared(tt))
        tt.sites[0] = tt.sites[0] / nrm
        z = np.diag([1.0, -1.0]).astype(np.complex128)
        batched = site_expectations(tt, z)
        singles = [pauli_expectation(tt, {i: 3}) for i in range(5)]
        np.testing.assert_allclose(batched, singles, atol=1e-12)

    def test_layer_with_shared_site_rejected(self):
        with pytest.raises(ValueError, match="sharing"):
            BrickworkCircuit(odd_layer=[(0, np.eye(4)), (1, np.eye(4))], even_layer=[], dt=0.1)
