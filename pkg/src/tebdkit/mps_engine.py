"""Tensor-train container and the TEBD sweep shared by MPS and MPDO paths.

A :class:`TensorTrain` is a list of L site tensors shaped
``(chi_left, d, chi_right)`` with boundary bonds of extent 1.  Physical
dimension ``d = 2`` carries a wavefunction (complex entries); ``d = 4``
carries density-operator coefficients in a (reweighted) Pauli basis (real
entries).  Site and bond indices are 0-based: bond ``b`` couples sites
``(b, b+1)``.

Sweep convention: one TEBD step applies the odd brickwork layer (bonds
0, 2, 4, ... in 0-based counting, i.e. the (1,2),(3,4),... pairs) sweeping
left to right with singular values absorbed rightward, then the even layer
right to left absorbing leftward.  The orthogonality center is kept on one
of the two active sites so every truncation is locally optimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .kernels import two_site_update
from .pauli_basis import SIGMA, ReweightScheme
from .tensor_core import TruncationPolicy

GateLayer = list[tuple[int, np.ndarray]]


@dataclass
class BrickworkCircuit:
    """One Trotter step of two-site gates: an odd and an even half-layer.

    Gates are ``d^2 x d^2`` matrices acting on the combined physical pair of
    the bond they are attached to.  For superoperator circuits (MPDO paths)
    ``scheme`` records the reweighting the gates were built with.
    """

    odd_layer: GateLayer
    even_layer: GateLayer
    dt: float
    scheme: ReweightScheme | None = field(default=None)

    def __post_init__(self) -> None:
        for name, layer in (("odd", self.odd_layer), ("even", self.even_layer)):
            sites: set[int] = set()
            for bond, _ in layer:
                if bond in sites or bond + 1 in sites:
                    raise ValueError(f"{name} layer has gates sharing site near bond {bond}")
                sites.update((bond, bond + 1))

    @property
    def gate_dim(self) -> int:
        for layer in (self.odd_layer, self.even_layer):
            if layer:
                return layer[0][1].shape[0]
        return 0


class TensorTrain:
    """Ordered list of 3-index site tensors with a tracked orthogonality center."""

    def __init__(self, sites: list[np.ndarray], ortho_center: int | None = None):
        if not sites:
            raise ValueError("a tensor train needs at least one site")
        if sites[0].shape[0] != 1 or sites[-1].shape[2] != 1:
            raise ValueError("boundary bonds must have extent 1")
        d = sites[0].shape[1]
        for i, t in enumerate(sites):
            if t.ndim != 3:
                raise ValueError(f"site {i} is not a 3-index tensor")
            if t.shape[1] != d:
                raise ValueError(f"site {i} has physical dimension {t.shape[1]}, expected {d}")
            if i > 0 and sites[i - 1].shape[2] != t.shape[0]:
                raise ValueError(f"bond mismatch between sites {i - 1} and {i}")
        self.sites = sites
        self.ortho_center = ortho_center

    @property
    def length(self) -> int:
        return len(self.sites)

    @property
    def phys_dim(self) -> int:
        return self.sites[0].shape[1]

    def bond_dims(self) -> list[int]:
        """All L+1 bond extents including the trivial boundaries."""
        return [t.shape[0] for t in self.sites] + [1]

    def max_bond(self) -> int:
        return max(self.bond_dims())

    def copy(self) -> "TensorTrain":
        return TensorTrain([t.copy() for t in self.sites], self.ortho_center)

    # -- gauge moves -------------------------------------------------------

    def _shift_right(self, c: int) -> None:
        """QR the site at ``c`` into a left isometry, pushing R into c+1."""
        t = self.sites[c]
        chi_l, d, chi_r = t.shape
        q, r = np.linalg.qr(t.reshape(chi_l * d, chi_r))
        self.sites[c] = np.ascontiguousarray(q).reshape(chi_l, d, q.shape[1])
        self.sites[c + 1] = np.tensordot(r, self.sites[c + 1], axes=(1, 0))

    def _shift_left(self, c: int) -> None:
        """Make the site at ``c`` a right isometry, pushing the rest into c-1."""
        t = self.sites[c]
        chi_l, d, chi_r = t.shape
        q, r = np.linalg.qr(t.reshape(chi_l, d * chi_r).conj().T)
        self.sites[c] = np.ascontiguousarray(q.conj().T).reshape(q.shape[1], d, chi_r)
        self.sites[c - 1] = np.tensordot(self.sites[c - 1], r.conj().T, axes=(2, 0))

    def canonicalize(self, site: int) -> None:
        """Bring the train into mixed-canonical form centered at ``site``."""
        if not 0 <= site < self.length:
            raise ValueError(f"center {site} out of range")
        for i in range(site):
            self._shift_right(i)
        for i in range(self.length - 1, site, -1):
            self._shift_left(i)
        self.ortho_center = site

    def move_center_to(self, site: int) -> None:
        if self.ortho_center is None:
            self.canonicalize(site)
            return
        while self.ortho_center < site:
            self._shift_right(self.ortho_center)
            self.ortho_center += 1
        while self.ortho_center > site:
            self._shift_left(self.ortho_center)
            self.ortho_center -= 1

    # -- evolution ---------------------------------------------------------

    def apply_two_site(
        self,
        bond: int,
        op: np.ndarray,
        policy: TruncationPolicy,
        absorb: str = "right",
        renormalize: bool = False,
    ) -> float:
        """Apply ``op`` to the physical pair at ``bond`` and truncate the bond.

        Returns the discarded weight (sum of squared dropped singular
        values).  The orthogonality center ends on the site the singular
        values were absorbed into.
        """
        if not 0 <= bond < self.length - 1:
            raise ValueError(f"bond {bond} out of range for {self.length} sites")
        d = self.phys_dim
        if op.shape != (d * d, d * d):
            raise ValueError(f"gate shape {op.shape} does not match physical dimension {d}")
        if absorb not in ("left", "right"):
            raise ValueError(f"absorb must be 'left' or 'right', got {absorb!r}")
        op = np.asarray(op)
        if np.iscomplexobj(op) and not np.iscomplexobj(self.sites[bond]):
            if np.max(np.abs(op.imag)) > 0:
                raise ValueError("complex gate applied to a real-valued train")
            op = op.real
        self.move_center_to(bond if self.ortho_center is None or self.ortho_center <= bond else bond + 1)
        new_left, new_right, discarded = two_site_update(
            np.ascontiguousarray(self.sites[bond]),
            np.ascontiguousarray(self.sites[bond + 1]),
            np.ascontiguousarray(op, dtype=self.sites[bond].dtype),
            policy.chi_max,
            policy.sv_cutoff,
            absorb == "right",
            renormalize,
        )
        if not (np.all(np.isfinite(new_left)) and np.all(np.isfinite(new_right))):
            raise FloatingPointError(f"non-finite entries after gate at bond {bond}")
        self.sites[bond] = new_left
        self.sites[bond + 1] = new_right
        self.ortho_center = bond + 1 if absorb == "right" else bond
        return discarded

    def tebd_step(
        self, circuit: BrickworkCircuit, policy: TruncationPolicy, renormalize: bool = False
    ) -> float:
        """Advance by one Trotter step; returns the max discarded weight."""
        d = self.phys_dim
        if circuit.gate_dim not in (0, d * d):
            raise ValueError(
                f"circuit gates are {circuit.gate_dim}x{circuit.gate_dim}, "
                f"train needs {d * d}x{d * d}"
            )
        max_dw = 0.0
        for bond, op in circuit.odd_layer:
            dw = self.apply_two_site(bond, op, policy, absorb="right", renormalize=renormalize)
            max_dw = max(max_dw, dw)
        for bond, op in reversed(circuit.even_layer):
            dw = self.apply_two_site(bond, op, policy, absorb="left", renormalize=renormalize)
            max_dw = max(max_dw, dw)
        return max_dw

    # -- extraction --------------------------------------------------------

    def coefficient(self, indices: list[int]) -> complex:
        """Matrix product for one physical index string."""
        if len(indices) != self.length:
            raise ValueError(f"need {self.length} indices, got {len(indices)}")
        d = self.phys_dim
        for i, s in enumerate(indices):
            if not 0 <= s < d:
                raise ValueError(f"index {s} at site {i} out of range for d={d}")
        vec = self.sites[0][:, indices[0], :]
        for i in range(1, self.length):
            vec = vec @ self.sites[i][:, indices[i], :]
        return vec[0, 0]

    def to_dense(self) -> np.ndarray:
        """Full coefficient tensor, flattened C-order (site 0 slowest)."""
        out = self.sites[0]
        for t in self.sites[1:]:
            out = np.tensordot(out, t, axes=(out.ndim - 1, 0))
        return np.ascontiguousarray(out.reshape(-1))


def init_product_mps(site_vectors: list[np.ndarray]) -> TensorTrain:
    """Bond-dimension-1 MPS for a product state of unit-norm site vectors."""
    sites = []
    for i, v in enumerate(site_vectors):
        v = np.asarray(v, dtype=np.complex128).reshape(-1)
        if abs(np.linalg.norm(v) - 1.0) > 1e-12:
            raise ValueError(f"site vector {i} is not normalized")
        sites.append(v.reshape(1, v.size, 1).copy())
    return TensorTrain(sites, ortho_center=0)


def norm_squared(tt: TensorTrain) -> float:
    """<psi|psi> by transfer contraction (no gauge assumption)."""
    env = np.ones((1, 1), dtype=tt.sites[0].dtype)
    for t in tt.sites:
        env = np.einsum("ab,asc,bsd->cd", env, t, t.conj(), optimize=True)
    return float(env[0, 0].real)


def pauli_expectation(tt: TensorTrain, string: dict[int, int]) -> float:
    """<psi| prod_sites sigma^mu |psi> for a sparse Pauli string on an MPS."""
    if tt.phys_dim != 2:
        raise ValueError("pauli_expectation on a train requires physical dimension 2")
    for site, mu in string.items():
        if not 0 <= site < tt.length:
            raise ValueError(f"site {site} out of range")
        if mu not in (1, 2, 3):
            raise ValueError(f"Pauli index {mu} must be in {{1, 2, 3}}")
    env = np.ones((1, 1), dtype=np.complex128)
    for i, t in enumerate(tt.sites):
        top = np.tensordot(SIGMA[string[i]], t, axes=(1, 1)).transpose(1, 0, 2) if i in string else t
        env = np.einsum("ab,asc,bsd->cd", env, top, t.conj(), optimize=True)
    return float(env[0, 0].real)


def _right_environments(tt: TensorTrain) -> list[np.ndarray]:
    """envs[i] closes the network to the right of site i-1 (envs[L] = 1)."""
    L = tt.length
    envs = [np.ones((1, 1), dtype=np.complex128) for _ in range(L + 1)]
    for i in range(L - 1, -1, -1):
        t = tt.sites[i]
        envs[i] = np.einsum("asc,bsd,cd->ab", t, t.conj(), envs[i + 1], optimize=True)
    return envs


def site_expectations(tt: TensorTrain, op: np.ndarray) -> np.ndarray:
    """<psi| op_i |psi> for every site i, in one O(L chi^3) pass."""
    right = _right_environments(tt)
    left = np.ones((1, 1), dtype=np.complex128)
    vals = np.empty(tt.length, dtype=np.complex128)
    for i, t in enumerate(tt.sites):
        top = np.tensordot(op, t, axes=(1, 1)).transpose(1, 0, 2)
        vals[i] = np.einsum("ab,asc,bsd,cd->", left, top, t.conj(), right[i + 1], optimize=True)
        left = np.einsum("ab,asc,bsd->cd", left, t, t.conj(), optimize=True)
    return vals.real


def bond_expectations(tt: TensorTrain, bond_ops: list[tuple[int, np.ndarray]]) -> np.ndarray:
    """<psi| op_{b,b+1} |psi> for two-site operators, one per listed bond."""
    d = tt.phys_dim
    right = _right_environments(tt)
    lefts = [np.ones((1, 1), dtype=np.complex128)]
    for t in tt.sites[:-1]:
        lefts.append(np.einsum("ab,asc,bsd->cd", lefts[-1], t, t.conj(), optimize=True))
    vals = np.empty(len(bond_ops), dtype=np.complex128)
    for n, (b, op) in enumerate(bond_ops):
        t1, t2 = tt.sites[b], tt.sites[b + 1]
        block = np.tensordot(t1, t2, axes=(2, 0)).reshape(t1.shape[0], d * d, t2.shape[2])
        top = np.tensordot(op, block, axes=(1, 1)).transpose(1, 0, 2)
        vals[n] = np.einsum(
            "ab,asc,bsd,cd->", lefts[b], top, block.conj(), right[b + 2], optimize=True
        )
    return vals.real
