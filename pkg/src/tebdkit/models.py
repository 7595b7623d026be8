"""Benchmark models: Hamiltonians, Trotter gates, initial states, observables.

Local basis convention (fixed here, used everywhere): basis index 0 is the
spin-up / occupied state (sigma^z eigenvalue +1, written |1>), index 1 is
spin-down / empty (|0>).  Fermion number is ``n = (1 + sigma^z) / 2``.

The fermion chain is ``H = J sum_<i,j> c_i^+ c_j + h.c.``; under the
Jordan-Wigner mapping with the canonical occupation-ordering sign
``c_j = (prod_{k<j} -sigma^z_k) sigma^-_j`` its nearest-neighbor bond term
is ``(J/2)(XX + YY)``, which is what the Trotter gates exponentiate.  The
spin chain is ``J sum S^z S^z + (hx/2) sum S^x + (hz/2) sum S^z`` with
``S = sigma/2``; single-site fields are split half/half onto the adjacent
bonds, with boundary sites giving their full share to their only bond.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mps_engine import BrickworkCircuit, TensorTrain
from .mpdo_engine import Mpdo
from .pauli_basis import SIGMA, ReweightScheme, dual_sigma
from .tensor_core import TruncationPolicy

SPIN_J = 1.0
SPIN_HX = 0.9045
SPIN_HZ = 0.8090

UP = np.array([1.0, 0.0], dtype=np.complex128)
DOWN = np.array([0.0, 1.0], dtype=np.complex128)


@dataclass
class BondHamiltonian:
    """Nearest-neighbor decomposition of a chain Hamiltonian.

    ``terms[b]`` is the 4x4 Hermitian operator embedded on sites (b, b+1);
    the embedded terms sum exactly to the global H.  ``field_shares``
    records, per site, which bonds absorbed what fraction of that site's
    single-site field term.
    """

    length: int
    terms: list[tuple[int, np.ndarray]]
    field_shares: dict[int, list[tuple[int, float]]] = field(default_factory=dict)


def fermion_bond_hamiltonian(length: int, j: float = 1.0) -> BondHamiltonian:
    if length < 2:
        raise ValueError("need at least 2 sites")
    h2 = 0.5 * j * (np.kron(SIGMA[1], SIGMA[1]) + np.kron(SIGMA[2], SIGMA[2]))
    return BondHamiltonian(length, [(b, h2.copy()) for b in range(length - 1)])


def spin_bond_hamiltonian(
    length: int, j: float = SPIN_J, hx: float = SPIN_HX, hz: float = SPIN_HZ
) -> BondHamiltonian:
    if length < 2:
        raise ValueError("need at least 2 sites")
    sx, sz = SIGMA[1] / 2, SIGMA[3] / 2
    onsite = 0.5 * hx * sx + 0.5 * hz * sz
    ident = np.eye(2, dtype=np.complex128)
    terms = []
    shares: dict[int, list[tuple[int, float]]] = {i: [] for i in range(length)}
    for b in range(length - 1):
        alpha = 1.0 if b == 0 else 0.5
        beta = 1.0 if b + 1 == length - 1 else 0.5
        h = j * np.kron(sz, sz) + alpha * np.kron(onsite, ident) + beta * np.kron(ident, onsite)
        terms.append((b, h))
        shares[b].append((b, alpha))
        shares[b + 1].append((b, beta))
    return BondHamiltonian(length, terms, shares)


def _expm_hermitian(h: np.ndarray, dt: float) -> np.ndarray:
    """exp(-i dt h) for Hermitian h, exact via eigendecomposition."""
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * dt * evals)) @ evecs.conj().T


def gate_circuit(bond_h: BondHamiltonian, dt: float) -> BrickworkCircuit:
    """First-order brickwork circuit: odd bonds (0-based even) then even bonds."""
    gates = {b: _expm_hermitian(h, dt) for b, h in bond_h.terms}
    odd = [(b, gates[b]) for b in range(0, bond_h.length - 1, 2)]
    even = [(b, gates[b]) for b in range(1, bond_h.length - 1, 2)]
    return BrickworkCircuit(odd_layer=odd, even_layer=even, dt=dt)


def fermion_gates(length: int, j: float, dt: float) -> BrickworkCircuit:
    return gate_circuit(fermion_bond_hamiltonian(length, j), dt)


def spin_gates(
    length: int, j: float = SPIN_J, hx: float = SPIN_HX, hz: float = SPIN_HZ, dt: float = 0.08
) -> BrickworkCircuit:
    return gate_circuit(spin_bond_hamiltonian(length, j, hx, hz), dt)


# -- initial states ---------------------------------------------------------

def fock_initial_state(length: int) -> list[int]:
    """Period-8 occupation pattern: site j (1-based) filled iff j mod 8 in {1,2,7,0}."""
    if length < 1:
        raise ValueError("need at least 1 site")
    return [1 if (j % 8) in (1, 2, 7, 0) else 0 for j in range(1, length + 1)]


def fock_site_vectors(occupations: list[int]) -> list[np.ndarray]:
    return [UP.copy() if occ else DOWN.copy() for occ in occupations]


def fock_site_densities(occupations: list[int]) -> list[np.ndarray]:
    return [np.outer(v, v.conj()) for v in fock_site_vectors(occupations)]


def spin_initial_state(length: int) -> list[np.ndarray]:
    """Weakly tilted product state (1+g)|up> + (1-g)|down>, g = +-0.1 period-8."""
    if length < 1:
        raise ValueError("need at least 1 site")
    vectors = []
    for j in range(1, length + 1):
        g = -0.1 if (j % 8) in (1, 2, 7, 0) else 0.1
        v = (1.0 + g) * UP + (1.0 - g) * DOWN
        vectors.append(v / np.linalg.norm(v))
    return vectors


def _branch_coeff(x: np.ndarray, y: np.ndarray, bar: np.ndarray) -> np.ndarray:
    """Dual-basis coefficients of |x><y|, one per Pauli index."""
    m = np.outer(x, y.conj())
    return np.einsum("mab,ba->m", bar, m)


def ghz_initial_mpdo(length: int, scheme: ReweightScheme) -> Mpdo:
    """MPDO of the GHZ superposition of the Fock pattern and its global flip.

    rho = (|a><a| + |b><b| + |a><b| + |b><a|) / 2 is assembled as a
    bond-concatenated sum of the four chi=1 product branches.  The two cross
    branches carry complex-conjugate coefficient vectors; their Hermitian
    sum is stored as a real 2x2 block (the real embedding of a complex
    scalar), so the train stays real.  A final SVD sweep compresses it.
    """
    if length < 2:
        raise ValueError("need at least 2 sites")
    occ = fock_initial_state(length)
    a_vecs = fock_site_vectors(occ)
    b_vecs = fock_site_vectors([1 - o for o in occ])
    bar = dual_sigma(scheme)

    sites = []
    for i in range(length):
        vaa = _branch_coeff(a_vecs[i], a_vecs[i], bar)
        vbb = _branch_coeff(b_vecs[i], b_vecs[i], bar)
        vab = _branch_coeff(a_vecs[i], b_vecs[i], bar)
        if max(np.max(np.abs(vaa.imag)), np.max(np.abs(vbb.imag))) > 1e-12:
            raise RuntimeError("diagonal GHZ branch has an imaginary residue")
        re, im = vab.real, vab.imag
        if i == 0:
            t = np.zeros((1, 4, 4))
            t[0, :, 0] = 0.5 * vaa.real
            t[0, :, 1] = 0.5 * vbb.real
            t[0, :, 2] = re
            t[0, :, 3] = -im
        elif i == length - 1:
            t = np.zeros((4, 4, 1))
            t[0, :, 0] = vaa.real
            t[1, :, 0] = vbb.real
            t[2, :, 0] = re
            t[3, :, 0] = im
        else:
            t = np.zeros((4, 4, 4))
            t[0, :, 0] = vaa.real
            t[1, :, 1] = vbb.real
            t[2, :, 2] = re
            t[2, :, 3] = -im
            t[3, :, 2] = im
            t[3, :, 3] = re
        sites.append(t)

    train = TensorTrain(sites)
    policy = TruncationPolicy(chi_max=4)
    ident = np.eye(16)
    for b in range(length - 1):
        train.apply_two_site(b, ident, policy, absorb="right")
    for b in range(length - 2, -1, -1):
        train.apply_two_site(b, ident, policy, absorb="left")
    return Mpdo(train=train, scheme=scheme)


def ghz_initial_mps(length: int) -> TensorTrain:
    """chi=2 MPS of the GHZ superposition of the Fock pattern and its flip."""
    if length < 2:
        raise ValueError("need at least 2 sites")
    occ = fock_initial_state(length)
    a_vecs = fock_site_vectors(occ)
    b_vecs = fock_site_vectors([1 - o for o in occ])
    sites = []
    for i in range(length):
        if i == 0:
            t = np.zeros((1, 2, 2), dtype=np.complex128)
            t[0, :, 0] = a_vecs[i] / np.sqrt(2)
            t[0, :, 1] = b_vecs[i] / np.sqrt(2)
        elif i == length - 1:
            t = np.zeros((2, 2, 1), dtype=np.complex128)
            t[0, :, 0] = a_vecs[i]
            t[1, :, 0] = b_vecs[i]
        else:
            t = np.zeros((2, 2, 2), dtype=np.complex128)
            t[0, :, 0] = a_vecs[i]
            t[1, :, 1] = b_vecs[i]
        sites.append(t)
    return TensorTrain(sites)


# -- Jordan-Wigner observables ----------------------------------------------

@dataclass(frozen=True)
class PauliStringOperator:
    """Operator as a sum of sparse Pauli strings: (coefficient, {site: mu})."""

    terms: tuple[tuple[complex, tuple[tuple[int, int], ...]], ...]

    @staticmethod
    def from_list(terms: list[tuple[complex, dict[int, int]]]) -> "PauliStringOperator":
        frozen = tuple(
            (complex(c), tuple(sorted(string.items()))) for c, string in terms
        )
        return PauliStringOperator(frozen)

    def iter_terms(self):
        for c, string in self.terms:
            yield c, dict(string)


def number_operator(site: int) -> PauliStringOperator:
    """n_i = (1 + sigma^z_i) / 2."""
    if site < 0:
        raise ValueError("site index out of range")
    return PauliStringOperator.from_list([(0.5, {}), (0.5, {site: 3})])


def _jw_sign(i: int, j: int) -> float:
    # one factor of -1 per string site between i and j, from the
    # occupation-ordering convention c_j = (prod_{k<j} -sigma^z_k) sigma^-_j
    return -1.0 if (j - i - 1) % 2 else 1.0


def hopping_operator(i: int, j: int) -> PauliStringOperator:
    """Hermitian hop c_i^+ c_j + c_j^+ c_i (i < j), JW-compiled."""
    if not 0 <= i < j:
        raise ValueError("hopping requires 0 <= i < j")
    mids = {k: 3 for k in range(i + 1, j)}
    s = _jw_sign(i, j)
    return PauliStringOperator.from_list(
        [
            (0.5 * s, {i: 1, **mids, j: 1}),
            (0.5 * s, {i: 2, **mids, j: 2}),
        ]
    )


def cdag_c_operator(i: int, j: int) -> PauliStringOperator:
    """Single correlation term c_i^+ c_j (complex coefficients for i != j)."""
    if i < 0 or j < 0:
        raise ValueError("site index out of range")
    if i == j:
        return number_operator(i)
    if i > j:
        flipped = cdag_c_operator(j, i)
        return PauliStringOperator.from_list(
            [(np.conj(c), string) for c, string in flipped.iter_terms()]
        )
    mids = {k: 3 for k in range(i + 1, j)}
    s = _jw_sign(i, j)
    return PauliStringOperator.from_list(
        [
            (0.25 * s, {i: 1, **mids, j: 1}),
            (-0.25j * s, {i: 1, **mids, j: 2}),
            (0.25j * s, {i: 2, **mids, j: 1}),
            (0.25 * s, {i: 2, **mids, j: 2}),
        ]
    )


def density_density_operator(i: int, j: int) -> PauliStringOperator:
    """n_i n_j for distinct sites."""
    if i == j:
        raise ValueError("density-density correlator needs distinct sites")
    return PauliStringOperator.from_list(
        [(0.25, {}), (0.25, {i: 3}), (0.25, {j: 3}), (0.25, {i: 3, j: 3})]
    )


def total_number_operator(length: int) -> PauliStringOperator:
    terms: list[tuple[complex, dict[int, int]]] = [(0.5 * length, {})]
    terms += [(0.5, {i: 3}) for i in range(length)]
    return PauliStringOperator.from_list(terms)


def fourier_number_operator(length: int, k: float) -> PauliStringOperator:
    """(1/L) sum_j exp(-i k (j - 1/2)) n_j with 1-based j."""
    terms: list[tuple[complex, dict[int, int]]] = []
    for jj in range(length):
        phase = np.exp(-1j * k * (jj + 0.5)) / length
        terms.append((0.5 * phase, {}))
        terms.append((0.5 * phase, {jj: 3}))
    return PauliStringOperator.from_list(terms)


def energy_operator(bond_h: BondHamiltonian) -> PauliStringOperator:
    """Global H as Pauli strings, assembled from the embedded bond terms."""
    terms: list[tuple[complex, dict[int, int]]] = []
    for b, h in bond_h.terms:
        coeffs = pauli_decompose_two_site(h)
        for mu in range(4):
            for nu in range(4):
                c = coeffs[mu, nu]
                if abs(c) < 1e-15:
                    continue
                string: dict[int, int] = {}
                if mu:
                    string[b] = mu
                if nu:
                    string[b + 1] = nu
                terms.append((c, string))
    return PauliStringOperator.from_list(terms)


def pauli_decompose_two_site(h: np.ndarray) -> np.ndarray:
    """Coefficients c[mu, nu] with h = sum c[mu, nu] sigma^mu x sigma^nu."""
    h = np.asarray(h, dtype=np.complex128)
    if h.shape != (4, 4):
        raise ValueError("expected a two-site (4x4) operator")
    out = np.empty((4, 4), dtype=np.complex128)
    for mu in range(4):
        for nu in range(4):
            out[mu, nu] = np.trace(np.kron(SIGMA[mu], SIGMA[nu]) @ h) / 4.0
    return out
