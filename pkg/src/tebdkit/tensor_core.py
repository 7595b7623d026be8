"""Dense tensor primitives: pairwise contraction and truncated SVD.

Tensors are plain numpy arrays of ``float64`` or ``complex128``.  The data
layout is row-major (C order) everywhere in this package; an array's flat
buffer together with its shape is the canonical serialization of a tensor,
so golden tests can compare buffers directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TruncationPolicy:
    """Bond truncation rule: hard cap ``chi_max`` plus a relative cutoff.

    Singular values below ``sv_cutoff * sigma_max`` are discarded.  The
    default ``sv_cutoff = 0`` keeps the bond dimension governed solely by
    ``chi_max``.
    """

    chi_max: int
    sv_cutoff: float = 0.0

    def __post_init__(self) -> None:
        if self.chi_max < 1:
            raise ValueError(f"chi_max must be >= 1, got {self.chi_max}")
        if self.sv_cutoff < 0:
            raise ValueError(f"sv_cutoff must be >= 0, got {self.sv_cutoff}")


@dataclass
class SvdResult:
    """Truncated SVD factors.

    ``u`` has the row-group extents plus a trailing kept-rank index, ``vh``
    a leading kept-rank index plus the column-group extents.  ``s`` is
    non-increasing and non-negative.  ``discarded_weight`` is the sum of the
    squared singular values that were dropped.
    """

    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray
    discarded_weight: float


def kept_rank(s: np.ndarray, chi_max: int, sv_cutoff: float) -> int:
    """Number of singular values retained under a truncation policy.

    Keeps the largest values; ties are resolved by keeping the earlier
    entries of the (already sorted) backend output, which makes truncation
    deterministic.  At least one value is always kept.
    """
    n = int(s.size)
    if n == 0:
        raise ValueError("cannot truncate an empty singular spectrum")
    surviving = n
    if sv_cutoff > 0 and s[0] > 0:
        surviving = int(np.count_nonzero(s >= sv_cutoff * s[0]))
    return max(1, min(chi_max, surviving, n))


def contract(a: np.ndarray, b: np.ndarray, pairs: list[tuple[int, int]]) -> np.ndarray:
    """Contract ``a`` with ``b`` over the given (axis-of-a, axis-of-b) pairs.

    The result carries a's unpaired indices first, then b's, each group in
    original order.  Values equal the explicit sum over the paired indices.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    a_axes = [p[0] for p in pairs]
    b_axes = [p[1] for p in pairs]
    if len(set(a_axes)) != len(a_axes) or len(set(b_axes)) != len(b_axes):
        raise ValueError("contraction pairs reuse an axis")
    for ax, bx in pairs:
        if not (0 <= ax < a.ndim and 0 <= bx < b.ndim):
            raise ValueError(f"contraction axis out of range: ({ax}, {bx})")
        if a.shape[ax] != b.shape[bx]:
            raise ValueError(
                f"contraction shape mismatch: a axis {ax} has extent "
                f"{a.shape[ax]}, b axis {bx} has extent {b.shape[bx]}"
            )
    out = np.tensordot(a, b, axes=(a_axes, b_axes))
    if not np.all(np.isfinite(out)):
        raise ValueError("contraction produced non-finite entries")
    return out


def svd_truncate(
    m: np.ndarray,
    row_axes: tuple[int, ...],
    col_axes: tuple[int, ...],
    policy: TruncationPolicy,
) -> SvdResult:
    """Truncated SVD of ``m`` viewed as a matrix via an index bipartition.

    ``row_axes`` + ``col_axes`` must cover each index of ``m`` exactly once.
    """
    m = np.asarray(m)
    if m.size == 0:
        raise ValueError("cannot decompose an empty tensor")
    if sorted(tuple(row_axes) + tuple(col_axes)) != list(range(m.ndim)):
        raise ValueError(
            f"bipartition {row_axes} | {col_axes} does not cover all "
            f"{m.ndim} indices exactly once"
        )
    row_shape = tuple(m.shape[i] for i in row_axes)
    col_shape = tuple(m.shape[i] for i in col_axes)
    mat = m.transpose(tuple(row_axes) + tuple(col_axes)).reshape(
        int(np.prod(row_shape)), int(np.prod(col_shape))
    )
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    r = kept_rank(s, policy.chi_max, policy.sv_cutoff)
    discarded = float(np.sum(s[r:] ** 2))
    return SvdResult(
        u=np.ascontiguousarray(u[:, :r]).reshape(row_shape + (r,)),
        s=s[:r].copy(),
        vh=np.ascontiguousarray(vh[:r]).reshape((r,) + col_shape),
        discarded_weight=discarded,
    )
