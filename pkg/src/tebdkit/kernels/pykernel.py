"""Pure-numpy implementation of the hot two-site TEBD update.

Semantics must match ``tebdkit.kernels._core`` exactly; the compiled kernel
is a drop-in replacement that fuses the reshuffles and calls BLAS/LAPACK
directly.
"""

from __future__ import annotations

import numpy as np

from ..tensor_core import kept_rank


def two_site_update(
    left: np.ndarray,
    right: np.ndarray,
    gate: np.ndarray,
    chi_max: int,
    sv_cutoff: float,
    absorb_right: bool,
    renormalize: bool,
):
    """Apply a two-site gate to a bond and truncate it with an SVD.

    ``left`` is the (chi_l, d, chi_m) site tensor, ``right`` the
    (chi_m, d, chi_r) neighbor, ``gate`` the (d*d, d*d) operator on the
    combined physical pair.  The singular values are absorbed into the
    right factor when ``absorb_right`` (orthogonality center moves right),
    else into the left.  ``renormalize`` rescales the kept spectrum to unit
    2-norm (wavefunction convention); density-operator trains never rescale.

    Returns ``(new_left, new_right, discarded_weight)``.
    """
    chi_l, d, chi_m = left.shape
    chi_r = right.shape[2]

    theta = left.reshape(chi_l * d, chi_m) @ right.reshape(chi_m, d * chi_r)
    theta = theta.reshape(chi_l, d, d, chi_r).transpose(1, 2, 0, 3).reshape(d * d, chi_l * chi_r)
    theta = gate @ theta
    theta = theta.reshape(d, d, chi_l, chi_r).transpose(2, 0, 1, 3).reshape(chi_l * d, d * chi_r)

    u, s, vh = np.linalg.svd(theta, full_matrices=False)
    k = kept_rank(s, chi_max, sv_cutoff)
    discarded = float(np.sum(s[k:] ** 2))
    s = s[:k]
    if renormalize:
        norm = np.linalg.norm(s)
        if norm > 0:
            s = s / norm
    if absorb_right:
        new_left = np.ascontiguousarray(u[:, :k]).reshape(chi_l, d, k)
        new_right = (s[:, None] * vh[:k]).reshape(k, d, chi_r)
    else:
        new_left = np.ascontiguousarray(u[:, :k] * s).reshape(chi_l, d, k)
        new_right = np.ascontiguousarray(vh[:k]).reshape(k, d, chi_r)
    return new_left, new_right, discarded
