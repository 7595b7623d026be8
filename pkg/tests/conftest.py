import os

# single-threaded BLAS: faster at these matrix sizes and deterministic;
# must be set before numpy first loads OpenBLAS
os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")
os.environ.setdefault("OMP_NUM_THREADS", "1")

import itertools

import numpy as np
import pytest

from tebdkit.pauli_basis import reweighted_sigma


def dense_fermion_annihilators(length: int) -> list[np.ndarray]:
    """Canonical fermion annihilation matrices in the occupation basis.

    Uses the same state ordering as the engines (basis index 0 of a site is
    the occupied state) and the canonical antisymmetric sign
    c_j |n> = (-1)^(sum_{k<j} n_k) n_j |...n_j - 1...>.
    Independent of any Jordan-Wigner string convention; this is the oracle
    that pins JW signs.
    """
    dim = 2**length
    ops = []
    for j in range(length):
        c = np.zeros((dim, dim), dtype=np.complex128)
        for x in range(dim):
            bits = [(x >> (length - 1 - i)) & 1 for i in range(length)]
            occs = [1 - b for b in bits]
            if occs[j] == 1:
                sign = (-1) ** sum(occs[:j])
                y = x | (1 << (length - 1 - j))  # set bit -> empty
                c[y, x] = sign
        ops.append(c)
    return ops


def dense_operator(length: int, op) -> np.ndarray:
    """Full 2^L x 2^L matrix of a PauliStringOperator."""
    from tebdkit.oracles import dense_pauli_string

    total = np.zeros((2**length, 2**length), dtype=np.complex128)
    for coeff, string in op.iter_terms():
        total += coeff * dense_pauli_string(length, string)
    return total


def mpdo_to_dense(mpdo) -> np.ndarray:
    """Brute-force reconstruction of rho from a reweighted coefficient train."""
    length = mpdo.length
    til = reweighted_sigma(mpdo.scheme)
    rho = np.zeros((2**length, 2**length), dtype=np.complex128)
    for mus in itertools.product(range(4), repeat=length):
        c = mpdo.train.coefficient(list(mus))
        if abs(c) < 1e-300:
            continue
        op = np.array([[1.0]], dtype=np.complex128)
        for mu in mus:
            op = np.kron(op, til[mu])
        rho += c * op
    return rho / 2**length


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
