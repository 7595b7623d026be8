"""Independent exact references for small and quadratic systems.

These simulators apply the *same* Trotter circuit as the tensor-network
engines (odd layer then even layer per step), so comparisons isolate
truncation error rather than Trotter error.

* dense statevector: exact gate-by-gate evolution, L <= 12
* dense density matrix: rho <- U rho U+ per gate, L <= 8
* Gaussian (correlation-matrix) evolution of ``C[i,j] = <c_i^+ c_j>`` for
  the free-fermion chain at any L.  Under a quadratic circuit the mode
  operators evolve as ``c -> exp(-i h_sp dt) c``, which updates the matrix
  as ``C <- conj(u) C u^T``; per two-site hopping gate this is the
  single-particle rotation ``v = exp(+i J dt sigma^x)`` acting on the
  (i, i+1) rows and columns as ``C <- (v + I) C (v + I)^+``.
"""

from __future__ import annotations

import numpy as np

from .errors import ResourceError
from .mps_engine import BrickworkCircuit
from .pauli_basis import SIGMA

MAX_STATEVECTOR_SITES = 12
MAX_DENSITY_SITES = 8


def statevector_from_product(site_vectors: list[np.ndarray]) -> np.ndarray:
    psi = np.array([1.0], dtype=np.complex128)
    for v in site_vectors:
        psi = np.kron(psi, np.asarray(v, dtype=np.complex128))
    return psi


def _apply_gate_statevector(psi: np.ndarray, length: int, bond: int, op: np.ndarray) -> np.ndarray:
    left = 2**bond
    right = 2 ** (length - bond - 2)
    block = psi.reshape(left, 4, right)
    return np.tensordot(op, block, axes=(1, 1)).transpose(1, 0, 2).reshape(-1)


def _circuit_gate_sequence(circuit: BrickworkCircuit):
    yield from circuit.odd_layer
    yield from reversed(circuit.even_layer)


def dense_trotter_statevector(
    length: int, circuit: BrickworkCircuit, psi0: np.ndarray, steps: int
) -> np.ndarray:
    """Trajectory of exact statevectors, shape (steps+1, 2^L)."""
    if length > MAX_STATEVECTOR_SITES:
        raise ResourceError(f"dense statevector limited to L <= {MAX_STATEVECTOR_SITES}")
    psi = np.asarray(psi0, dtype=np.complex128).reshape(-1)
    if psi.size != 2**length:
        raise ValueError("initial vector has wrong dimension")
    out = np.empty((steps + 1, psi.size), dtype=np.complex128)
    out[0] = psi
    for n in range(1, steps + 1):
        for bond, op in _circuit_gate_sequence(circuit):
            psi = _apply_gate_statevector(psi, length, bond, op)
        out[n] = psi
    return out


def dense_trotter_density(
    length: int, circuit: BrickworkCircuit, rho0: np.ndarray, steps: int
) -> np.ndarray:
    """Trajectory of exact density matrices, shape (steps+1, 2^L, 2^L)."""
    if length > MAX_DENSITY_SITES:
        raise ResourceError(f"dense density evolution limited to L <= {MAX_DENSITY_SITES}")
    dim = 2**length
    rho = np.asarray(rho0, dtype=np.complex128)
    if rho.shape != (dim, dim):
        raise ValueError("initial density matrix has wrong dimension")
    embedded = {}
    for bond, op in _circuit_gate_sequence(circuit):
        if bond not in embedded:
            embedded[bond] = np.kron(
                np.kron(np.eye(2**bond), op), np.eye(2 ** (length - bond - 2))
            )
    out = np.empty((steps + 1, dim, dim), dtype=np.complex128)
    out[0] = rho
    for n in range(1, steps + 1):
        for bond, _ in _circuit_gate_sequence(circuit):
            g = embedded[bond]
            rho = g @ rho @ g.conj().T
        out[n] = rho
    return out


def gaussian_trotter(
    length: int, occupations: list[int], j: float, dt: float, steps: int
) -> np.ndarray:
    """Correlation-matrix trajectory for the Trotterized free-fermion chain.

    Returns an array of shape (steps+1, L, L) with entry [t, i, k] equal to
    <c_i^+ c_k> after t brickwork steps from the Fock state ``occupations``.
    """
    for occ in occupations:
        if occ not in (0, 1):
            raise ValueError("initial state must be a Fock occupation pattern of 0s and 1s")
    if len(occupations) != length:
        raise ValueError("occupation list length mismatch")
    theta = j * dt
    v = np.array(
        [[np.cos(theta), 1j * np.sin(theta)], [1j * np.sin(theta), np.cos(theta)]],
        dtype=np.complex128,
    )
    corr = np.diag(np.asarray(occupations, dtype=np.complex128))
    out = np.empty((steps + 1, length, length), dtype=np.complex128)
    out[0] = corr
    bonds = list(range(0, length - 1, 2)) + list(reversed(range(1, length - 1, 2)))
    for n in range(1, steps + 1):
        for b in bonds:
            corr[b : b + 2, :] = v @ corr[b : b + 2, :]
            corr[:, b : b + 2] = corr[:, b : b + 2] @ v.conj().T
        out[n] = corr
    return out


# -- dense-side measurement helpers ------------------------------------------

def dense_pauli_string(length: int, string: dict[int, int]) -> np.ndarray:
    """Full 2^L x 2^L matrix of a sparse Pauli string."""
    op = np.array([[1.0]], dtype=np.complex128)
    for site in range(length):
        op = np.kron(op, SIGMA[string.get(site, 0)])
    return op


def statevector_pauli_expectation(psi: np.ndarray, length: int, string: dict[int, int]) -> float:
    return float(np.real(psi.conj() @ dense_pauli_string(length, string) @ psi))


def density_pauli_expectation(rho: np.ndarray, length: int, string: dict[int, int]) -> float:
    return float(np.real(np.trace(dense_pauli_string(length, string) @ rho)))


def statevector_number_profile(psi: np.ndarray, length: int) -> np.ndarray:
    """<n_i> for every site, n = (1 + sigma^z)/2."""
    probs = np.abs(psi) ** 2
    vals = np.empty(length)
    for i in range(length):
        z = 1.0 - 2.0 * ((np.arange(psi.size) >> (length - 1 - i)) & 1)
        vals[i] = 0.5 * (1.0 + probs @ z)
    return vals


def density_number_profile(rho: np.ndarray, length: int) -> np.ndarray:
    probs = np.real(np.diag(rho))
    vals = np.empty(length)
    for i in range(length):
        z = 1.0 - 2.0 * ((np.arange(rho.shape[0]) >> (length - 1 - i)) & 1)
        vals[i] = 0.5 * (np.sum(probs) + probs @ z)
    return vals
