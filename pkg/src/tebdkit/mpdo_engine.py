"""Density operators as tensor trains of reweighted-Pauli coefficients.

An :class:`Mpdo` stores ``rho = 2^-L sum_mu sigma~^{mu_1} x ... x
sigma~^{mu_L} A_1^{mu_1} ... A_L^{mu_L}`` as a real-valued, physical-
dimension-4 :class:`~tebdkit.mps_engine.TensorTrain` of the coefficients
``A``.  Pauli coefficients of a Hermitian density matrix under unitary
channels stay real, so real storage both halves the arithmetic and bakes in
Hermiticity of every reported expectation.  The ``2^-L`` prefactor is never
materialized: every formula below is written so that it cancels.

Time evolution never rescales the train; the decay of ``Tr[rho]`` under
truncation is itself a measured observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Mapping

import numpy as np

from .errors import TraceDivergenceError
from .mps_engine import BrickworkCircuit, TensorTrain
from .pauli_basis import ReweightScheme, build_supergate, dual_sigma
from .tensor_core import TruncationPolicy

if TYPE_CHECKING:
    from .models import PauliStringOperator

TRACE_EPS = 1e-12


@dataclass
class Mpdo:
    train: TensorTrain
    scheme: ReweightScheme

    def __post_init__(self) -> None:
        if self.train.phys_dim != 4:
            raise ValueError("an MPDO train must have physical dimension 4")
        if np.iscomplexobj(self.train.sites[0]):
            raise ValueError("MPDO trains are stored real")

    @property
    def length(self) -> int:
        return self.train.length

    def copy(self) -> "Mpdo":
        return Mpdo(train=self.train.copy(), scheme=self.scheme)


def init_product_mpdo(rho_sites: list[np.ndarray], scheme: ReweightScheme) -> Mpdo:
    """chi=1 MPDO of a product density matrix, A_i^mu = Tr[sigma-^mu rho_i]."""
    bar = dual_sigma(scheme)
    sites = []
    for i, rho in enumerate(rho_sites):
        rho = np.asarray(rho, dtype=np.complex128)
        if rho.shape != (2, 2):
            raise ValueError(f"site {i}: expected a 2x2 density matrix")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError(f"site {i}: density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-12:
            raise ValueError(f"site {i}: density matrix trace is not 1")
        if np.linalg.eigvalsh(rho).min() < -1e-12:
            raise ValueError(f"site {i}: density matrix is not positive semidefinite")
        coeffs = np.einsum("mab,ba->m", bar, rho)
        if np.max(np.abs(coeffs.imag)) > 1e-12:
            raise ValueError(f"site {i}: coefficients have an imaginary residue")
        sites.append(coeffs.real.reshape(1, 4, 1).copy())
    return Mpdo(train=TensorTrain(sites), scheme=scheme)


def supergate_circuit(circuit: BrickworkCircuit, scheme: ReweightScheme) -> BrickworkCircuit:
    """Rewrite a unitary brickwork circuit as superoperators in a reweighted basis."""
    if circuit.gate_dim != 4:
        raise ValueError("expected a circuit of two-site (4x4) unitaries")

    def convert(layer):
        return [(b, build_supergate(u, scheme, bond=b).transfer) for b, u in layer]

    return BrickworkCircuit(
        odd_layer=convert(circuit.odd_layer),
        even_layer=convert(circuit.even_layer),
        dt=circuit.dt,
        scheme=scheme,
    )


def rtebd_step(mpdo: Mpdo, circuit: BrickworkCircuit, policy: TruncationPolicy) -> float:
    """One brickwork step of superoperators; no post-truncation rescaling."""
    if circuit.scheme is None:
        raise ValueError("circuit gates were not built in a reweighted basis")
    if circuit.scheme != mpdo.scheme:
        raise ValueError(
            f"scheme mismatch: circuit built with {circuit.scheme}, state uses {mpdo.scheme}"
        )
    return mpdo.train.tebd_step(circuit, policy, renormalize=False)


def trace(mpdo: Mpdo) -> float:
    """Tr[rho]: the coefficient of the all-identity string."""
    return float(np.real(mpdo.train.coefficient([0] * mpdo.length)))


def pauli_expectation(mpdo: Mpdo, string: Mapping[int, int]) -> float:
    """Tr[sigma-string rho] for a sparse string of plain Pauli operators.

    The scheme weights enter measurement exactly here: the coefficient train
    lives in the reweighted basis, so each non-identity site contributes a
    factor ``weight(mu)``.
    """
    indices = [0] * mpdo.length
    weight = 1.0
    w = mpdo.scheme.weights()
    for site, mu in string.items():
        if not 0 <= site < mpdo.length:
            raise ValueError(f"site {site} out of range")
        if mu not in (1, 2, 3):
            raise ValueError(f"Pauli index {mu} must be in {{1, 2, 3}}")
        if indices[site] != 0:
            raise ValueError(f"site {site} listed twice")
        indices[site] = mu
        weight *= w[mu]
    return weight * float(np.real(mpdo.train.coefficient(indices)))


def operator_expectation(mpdo: Mpdo, op: "PauliStringOperator", normalized: bool = True) -> complex:
    """Tr[B rho] (optionally / Tr[rho]) for an operator in Pauli-string form."""
    val = complex(0.0)
    for c, string in op.iter_terms():
        val += c * pauli_expectation(mpdo, string)
    if not normalized:
        return val
    tr = trace(mpdo)
    if abs(tr) < TRACE_EPS:
        raise TraceDivergenceError(
            f"|Tr rho| = {abs(tr):.3e} below {TRACE_EPS}; normalized expectation diverged"
        )
    return val / tr


def normalized_expectation(mpdo: Mpdo, op: "PauliStringOperator") -> float:
    """Tr[B rho] / Tr[rho] for a Hermitian operator (real by construction)."""
    return float(operator_expectation(mpdo, op, normalized=True).real)


# -- batched coefficient extraction -----------------------------------------

def _identity_prefixes(mpdo: Mpdo) -> list[np.ndarray]:
    """prefix[i] = row vector of the A^0 product over sites < i."""
    out = [np.ones((1, 1))]
    for t in mpdo.train.sites:
        out.append(out[-1] @ t[:, 0, :])
    return out


def _identity_suffixes(mpdo: Mpdo) -> list[np.ndarray]:
    """suffix[i] = column vector of the A^0 product over sites >= i."""
    out = [np.ones((1, 1)) for _ in range(mpdo.length + 1)]
    for i in range(mpdo.length - 1, -1, -1):
        out[i] = mpdo.train.sites[i][:, 0, :] @ out[i + 1]
    return out


def site_pauli_profile(mpdo: Mpdo, mu: int) -> np.ndarray:
    """Tr[sigma^mu_i rho] for every site i, in one O(L chi^2) pass."""
    if mu not in (1, 2, 3):
        raise ValueError(f"Pauli index {mu} must be in {{1, 2, 3}}")
    w = mpdo.scheme.weights()[mu]
    pre = _identity_prefixes(mpdo)
    suf = _identity_suffixes(mpdo)
    vals = np.empty(mpdo.length)
    for i, t in enumerate(mpdo.train.sites):
        vals[i] = w * (pre[i] @ t[:, mu, :] @ suf[i + 1])[0, 0]
    return vals


def bond_pauli_blocks(mpdo: Mpdo) -> np.ndarray:
    """blocks[b, mu, nu] = Tr[sigma^mu_b sigma^nu_{b+1} rho] for every bond."""
    w = mpdo.scheme.weights()
    pre = _identity_prefixes(mpdo)
    suf = _identity_suffixes(mpdo)
    blocks = np.empty((mpdo.length - 1, 4, 4))
    for b in range(mpdo.length - 1):
        t1, t2 = mpdo.train.sites[b], mpdo.train.sites[b + 1]
        left = np.einsum("x,xmc->mc", pre[b][0], t1)
        right = np.einsum("cnx,x->nc", t2, suf[b + 2][:, 0])
        blocks[b] = (w[:, None] * w[None, :]) * (left @ right.T)
    return blocks
