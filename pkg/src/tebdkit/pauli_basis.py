"""Reweighted Pauli bases and two-site evolution superoperators.

The Pauli index order is fixed as (0, x, y, z) <-> (0, 1, 2, 3) everywhere.
A reweighting scheme assigns a weight ``w(mu) >= 1`` to each Pauli index
(always ``w(0) = 1``); the reweighted basis is ``sigma~^mu = w(mu) sigma^mu``
and its dual is ``sigma-^mu = sigma^mu / w(mu)``, so that
``Tr[sigma~^mu sigma-^nu] = 2 delta^{mu nu}``.

A density matrix is carried as coefficients in the reweighted basis,
``rho = 2^-L sum_mu sigma~^{mu_1} x ... x sigma~^{mu_L} A_1^{mu_1}...A_L^{mu_L}``.
Weight-n Pauli strings then carry coefficients suppressed by ``gamma^-n``,
which biases SVD truncation toward preserving low-weight observables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA = np.stack(
    [
        np.eye(2, dtype=np.complex128),
        np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
        np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128),
        np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
    ]
)
SIGMA.flags.writeable = False

SCHEME_KINDS = ("bosonic", "fermionic", "xy")


@dataclass(frozen=True)
class ReweightScheme:
    """Per-index Pauli weights used by the reweighted MPDO basis.

    * ``bosonic``:   weights (1, g, g, g)
    * ``fermionic``: weights (1, g, g, g^2) -- each Jordan-Wigner fermion
      factor is reweighted by g, and sigma^z is a product of two of them
    * ``xy``:        weights (1, g, g, 1) -- sigma^z (hence the JW string)
      is left unweighted
    """

    kind: str
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if self.kind not in SCHEME_KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}, expected one of {SCHEME_KINDS}")
        if self.gamma < 1.0:
            raise ValueError(f"reweighting parameter must satisfy gamma >= 1, got {self.gamma}")

    def weights(self) -> np.ndarray:
        g = self.gamma
        if self.kind == "bosonic":
            w = (1.0, g, g, g)
        elif self.kind == "fermionic":
            w = (1.0, g, g, g * g)
        else:
            w = (1.0, g, g, 1.0)
        return np.array(w)

    def dual_weights(self) -> np.ndarray:
        return 1.0 / self.weights()


def reweighted_sigma(scheme: ReweightScheme) -> np.ndarray:
    """The four reweighted Pauli matrices, stacked as a (4, 2, 2) array."""
    return scheme.weights()[:, None, None] * SIGMA


def dual_sigma(scheme: ReweightScheme) -> np.ndarray:
    """The dual basis, satisfying Tr[sigma~^mu sigma-^nu] = 2 delta^{mu nu}."""
    return scheme.dual_weights()[:, None, None] * SIGMA


@dataclass(frozen=True)
class SuperGate:
    """A two-site unitary conjugation channel in the reweighted Pauli basis.

    ``transfer`` is the real 16x16 matrix with row index (nu1, nu2) and
    column index (mu1, mu2), both flattened as ``4 * first + second``:

        transfer[(nu1,nu2),(mu1,mu2)]
            = 1/4 Tr[(sigma-^nu1 x sigma-^nu2) U (sigma~^mu1 x sigma~^mu2) U+]

    Conjugation by a unitary has a real transfer matrix in this basis; the
    imaginary residue of the defining trace is checked before it is dropped.
    """

    bond: int
    transfer: np.ndarray


UNITARITY_TOL = 1e-10
IMAG_RESIDUE_TOL = 1e-12


def build_supergate(u: np.ndarray, scheme: ReweightScheme, bond: int = 0) -> SuperGate:
    """Express conjugation by the two-site unitary ``u`` in the reweighted basis."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-site unitary, got shape {u.shape}")
    residual = np.max(np.abs(u.conj().T @ u - np.eye(4)))
    if residual > UNITARITY_TOL:
        raise ValueError(f"gate is not unitary: max |U+U - I| = {residual:.3e}")

    til = reweighted_sigma(scheme)
    bar = dual_sigma(scheme)
    til2 = np.empty((16, 4, 4), dtype=np.complex128)
    bar2 = np.empty((16, 4, 4), dtype=np.complex128)
    for m1 in range(4):
        for m2 in range(4):
            til2[4 * m1 + m2] = np.kron(til[m1], til[m2])
            bar2[4 * m1 + m2] = np.kron(bar[m1], bar[m2])

    conjugated = np.einsum("ab,mbc,dc->mad", u, til2, u.conj())
    transfer = 0.25 * np.einsum("nab,mba->nm", bar2, conjugated)
    residue = float(np.max(np.abs(transfer.imag)))
    if residue > IMAG_RESIDUE_TOL:
        raise RuntimeError(
            f"superoperator has unexpected imaginary residue {residue:.3e}; "
            "conjugation by a unitary should be real in a Pauli basis"
        )
    return SuperGate(bond=bond, transfer=np.ascontiguousarray(transfer.real))
