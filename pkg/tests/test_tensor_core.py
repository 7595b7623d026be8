import numpy as np
import pytest

from tebdkit.tensor_core import SvdResult, TruncationPolicy, contract, kept_rank, svd_truncate


def random_tensor(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


class TestContract:
    def test_identity_contraction(self):
        v = np.array([1.0, 2.0], dtype=np.complex128)
        out = contract(np.eye(2, dtype=np.complex128), v, [(1, 0)])
        np.testing.assert_array_equal(out, v)

    def test_matches_explicit_loop_matrix_product(self, rng):
        a = random_tensor(rng, (2, 3))
        b = random_tensor(rng, (3, 4))
        expected = np.zeros((2, 4), dtype=np.complex128)
        for i in range(2):
            for k in range(4):
                for j in range(3):
                    expected[i, k] += a[i, j] * b[j, k]
        np.testing.assert_allclose(contract(a, b, [(1, 0)]), expected, atol=1e-13)

    def test_zero_tensor_gives_zero(self, rng):
        a = random_tensor(rng, (3, 4, 2))
        out = contract(a, np.zeros((4, 5)), [(1, 0)])
        assert out.shape == (3, 2, 5)
        assert np.all(out == 0)

    def test_shape_mismatch_raises(self, rng):
        with pytest.raises(ValueError, match="mismatch"):
            contract(random_tensor(rng, (2, 3)), random_tensor(rng, (4, 2)), [(1, 0)])

    def test_bilinear_in_first_argument(self, rng):
        a = random_tensor(rng, (3, 4))
        b = random_tensor(rng, (4, 2))
        alpha = 0.37 - 1.2j
        lhs = contract(alpha * a, b, [(1, 0)])
        rhs = alpha * contract(a, b, [(1, 0)])
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_consistent_under_permutation(self, rng):
        a = random_tensor(rng, (2, 3, 4))
        b = random_tensor(rng, (4, 3))
        direct = contract(a, b, [(2, 0), (1, 1)])
        permuted = contract(a.transpose(1, 0, 2), b, [(2, 0), (0, 1)])
        np.testing.assert_allclose(direct, permuted, atol=1e-12)

    def test_result_index_order(self, rng):
        a = random_tensor(rng, (2, 5, 3))
        b = random_tensor(rng, (3, 7))
        out = contract(a, b, [(2, 0)])
        assert out.shape == (2, 5, 7)


class TestSvdTruncate:
    def test_identity_full_rank(self):
        res = svd_truncate(np.eye(4, dtype=np.complex128), (0,), (1,), TruncationPolicy(4))
        np.testing.assert_allclose(res.s, np.ones(4), atol=1e-14)
        assert res.discarded_weight == 0.0

    def test_rank_one_outer_product(self, rng):
        u = random_tensor(rng, (6,))
        v = random_tensor(rng, (5,))
        res = svd_truncate(np.outer(u, v), (0,), (1,), TruncationPolicy(1))
        assert res.s.size == 1
        assert res.discarded_weight < 1e-24

    def test_discarded_weight_matches_full_decomposition(self, rng):
        m = random_tensor(rng, (8, 8))
        s_full = np.linalg.svd(m, compute_uv=False)
        res = svd_truncate(m, (0,), (1,), TruncationPolicy(4))
        np.testing.assert_allclose(res.discarded_weight, np.sum(s_full[4:] ** 2), rtol=1e-12)

    def test_reconstruction_error_equals_discarded_weight(self, rng):
        m = random_tensor(rng, (10, 7))
        res = svd_truncate(m, (0,), (1,), TruncationPolicy(3))
        recon = res.u @ np.diag(res.s) @ res.vh
        err = np.linalg.norm(m - recon) ** 2
        np.testing.assert_allclose(err, res.discarded_weight, rtol=1e-10, atol=1e-13)

    def test_isometries_and_ordering(self, rng):
        m = random_tensor(rng, (6, 9))
        res = svd_truncate(m, (0,), (1,), TruncationPolicy(5))
        np.testing.assert_allclose(res.u.conj().T @ res.u, np.eye(5), atol=1e-10)
        np.testing.assert_allclose(res.vh @ res.vh.conj().T, np.eye(5), atol=1e-10)
        assert np.all(np.diff(res.s) <= 0)
        assert np.all(res.s >= 0)

    def test_multi_index_bipartition(self, rng):
        m = random_tensor(rng, (2, 3, 4, 5))
        res = svd_truncate(m, (0, 2), (1, 3), TruncationPolicy(100))
        assert res.u.shape[:2] == (2, 4)
        assert res.vh.shape[1:] == (3, 5)
        recon = np.einsum("abk,kcd->abcd", res.u * res.s, res.vh).transpose(0, 2, 1, 3)
        np.testing.assert_allclose(recon, m, atol=1e-12)

    def test_monotone_in_chi_max(self, rng):
        m = random_tensor(rng, (12, 12))
        weights = [
            svd_truncate(m, (0,), (1,), TruncationPolicy(chi)).discarded_weight
            for chi in (1, 2, 4, 8, 12)
        ]
        assert all(w1 >= w2 - 1e-15 for w1, w2 in zip(weights, weights[1:]))

    def test_sv_cutoff_drops_small_values(self):
        m = np.diag([1.0, 0.5, 1e-8, 1e-12]).astype(np.complex128)
        res = svd_truncate(m, (0,), (1,), TruncationPolicy(4, sv_cutoff=1e-6))
        assert res.s.size == 2

    def test_empty_tensor_raises(self):
        with pytest.raises(ValueError, match="empty"):
            svd_truncate(np.zeros((0, 3)), (0,), (1,), TruncationPolicy(2))

    def test_bad_bipartition_raises(self, rng):
        m = random_tensor(rng, (2, 3))
        with pytest.raises(ValueError, match="bipartition"):
            svd_truncate(m, (0,), (0,), TruncationPolicy(2))


class TestPolicy:
    def test_chi_max_must_be_positive(self):
        with pytest.raises(ValueError):
            TruncationPolicy(0)

    def test_negative_cutoff_rejected(self):
        with pytest.raises(ValueError):
            TruncationPolicy(4, sv_cutoff=-0.1)

    def test_kept_rank_cutoff_semantics(self):
        # zero sigma_max disables the relative cutoff entirely
        assert kept_rank(np.zeros(3), 2, 0.5) == 2
        assert kept_rank(np.array([1.0, 1e-20, 0.0]), 2, 0.5) == 1
        assert kept_rank(np.array([1.0, 0.9, 0.8]), 2, 0.0) == 2
