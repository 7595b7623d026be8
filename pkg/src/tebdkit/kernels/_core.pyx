# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled two-site TEBD update.

Fuses the theta construction, gate application, and truncated SVD of one
bond update into a single call: two BLAS gemms with hand-rolled index
reshuffles, then LAPACK gesdd on the bipartition matrix.  Row-major arrays
are handed to the column-major backends via the usual transpose tricks.

Must stay semantically identical to ``tebdkit.kernels.pykernel``.
"""

import numpy as np

cimport numpy as cnp
from scipy.linalg.cython_blas cimport dgemm, zgemm
from scipy.linalg.cython_lapack cimport dgesdd, zgesdd

cnp.import_array()


def two_site_update(left, right, gate, int chi_max, double sv_cutoff,
                    bint absorb_right, bint renormalize):
    """See ``tebdkit.kernels.pykernel.two_site_update``."""
    left = np.ascontiguousarray(left)
    right = np.ascontiguousarray(right)
    gate = np.ascontiguousarray(gate, dtype=left.dtype)
    if left.dtype == np.complex128:
        return _update_z(left, right, gate, chi_max, sv_cutoff, absorb_right, renormalize)
    if left.dtype == np.float64:
        return _update_d(left, right, gate, chi_max, sv_cutoff, absorb_right, renormalize)
    raise TypeError(f"unsupported dtype {left.dtype}")


cdef int _kept_rank(double* s, int minmn, int chi_max, double sv_cutoff) noexcept nogil:
    cdef int surviving = minmn
    cdef int i
    if sv_cutoff > 0 and s[0] > 0:
        surviving = 0
        for i in range(minmn):
            if s[i] >= sv_cutoff * s[0]:
                surviving += 1
    cdef int r = chi_max if chi_max < surviving else surviving
    if r < 1:
        r = 1
    return r


def _update_d(double[:, :, ::1] left, double[:, :, ::1] right, double[:, ::1] gate,
              int chi_max, double sv_cutoff, bint absorb_right, bint renormalize):
    cdef int chi_l = left.shape[0]
    cdef int d = left.shape[1]
    cdef int chi_m = left.shape[2]
    cdef int chi_r = right.shape[2]
    cdef int m = chi_l * d
    cdef int n = d * chi_r
    cdef int dd = d * d
    cdef int lr = chi_l * chi_r
    cdef int minmn = m if m < n else n
    cdef int maxmn = m if m > n else n

    theta_np = np.empty((m, n))
    scratch_np = np.empty((dd, lr))
    gated_np = np.empty((dd, lr))
    cdef double[:, ::1] theta = theta_np
    cdef double[:, ::1] scratch = scratch_np
    cdef double[:, ::1] gated = gated_np

    cdef double one = 1.0, zero = 0.0
    cdef char transN = b'N'
    # theta (m x n, rm) = left (m x chi_m, rm) @ right (chi_m x n, rm)
    dgemm(&transN, &transN, &n, &m, &chi_m, &one,
          <double*> &right[0, 0, 0], &n, <double*> &left[0, 0, 0], &chi_m,
          &zero, &theta[0, 0], &n)

    cdef Py_ssize_t l, s1, s2, r
    with nogil:
        for l in range(chi_l):
            for s1 in range(d):
                for s2 in range(d):
                    for r in range(chi_r):
                        scratch[s1 * d + s2, l * chi_r + r] = theta[l * d + s1, s2 * chi_r + r]
    # gated (dd x lr) = gate (dd x dd) @ scratch (dd x lr)
    dgemm(&transN, &transN, &lr, &dd, &dd, &one,
          &scratch[0, 0], &lr, &gate[0, 0], &dd, &zero, &gated[0, 0], &lr)
    with nogil:
        for l in range(chi_l):
            for s1 in range(d):
                for s2 in range(d):
                    for r in range(chi_r):
                        theta[l * d + s1, s2 * chi_r + r] = gated[s1 * d + s2, l * chi_r + r]

    # SVD of theta: the row-major (m, n) buffer is the column-major (n, m)
    # matrix theta^T = U1 S V1^H, so theta = conj(V1) S U1^T: the VT output
    # buffer read row-major is the left factor, the U output the right one.
    s_np = np.empty(minmn)
    u_np = np.empty((minmn, n))
    vt_np = np.empty((m, minmn))
    iwork_np = np.empty(8 * minmn, dtype=np.intc)
    cdef double[::1] s = s_np
    cdef double[:, ::1] u = u_np
    cdef double[:, ::1] vt = vt_np
    cdef int[::1] iwork = iwork_np
    cdef char jobz = b'S'
    cdef int info = 0, lwork = -1
    cdef double wquery = 0.0
    dgesdd(&jobz, &n, &m, &theta[0, 0], &n, &s[0], &u[0, 0], &n,
           &vt[0, 0], &minmn, &wquery, &lwork, &iwork[0], &info)
    lwork = <int> wquery
    work_np = np.empty(lwork)
    cdef double[::1] work = work_np
    dgesdd(&jobz, &n, &m, &theta[0, 0], &n, &s[0], &u[0, 0], &n,
           &vt[0, 0], &minmn, &work[0], &lwork, &iwork[0], &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"gesdd failed with info={info}")

    cdef int k = _kept_rank(&s[0], minmn, chi_max, sv_cutoff)
    cdef double discarded = 0.0
    cdef Py_ssize_t i
    for i in range(k, minmn):
        discarded += s[i] * s[i]
    s_k = s_np[:k]
    if renormalize:
        norm = np.linalg.norm(s_k)
        if norm > 0:
            s_k = s_k / norm
    if absorb_right:
        new_left = np.ascontiguousarray(vt_np[:, :k]).reshape(chi_l, d, k)
        new_right = (s_k[:, None] * u_np[:k]).reshape(k, d, chi_r)
    else:
        new_left = np.ascontiguousarray(vt_np[:, :k] * s_k[None, :]).reshape(chi_l, d, k)
        new_right = np.ascontiguousarray(u_np[:k]).reshape(k, d, chi_r)
    return new_left, new_right, discarded


def _update_z(double complex[:, :, ::1] left, double complex[:, :, ::1] right,
              double complex[:, ::1] gate, int chi_max, double sv_cutoff,
              bint absorb_right, bint renormalize):
    cdef int chi_l = left.shape[0]
    cdef int d = left.shape[1]
    cdef int chi_m = left.shape[2]
    cdef int chi_r = right.shape[2]
    cdef int m = chi_l * d
    cdef int n = d * chi_r
    cdef int dd = d * d
    cdef int lr = chi_l * chi_r
    cdef int minmn = m if m < n else n
    cdef int maxmn = m if m > n else n

    theta_np = np.empty((m, n), dtype=np.complex128)
    scratch_np = np.empty((dd, lr), dtype=np.complex128)
    gated_np = np.empty((dd, lr), dtype=np.complex128)
    cdef double complex[:, ::1] theta = theta_np
    cdef double complex[:, ::1] scratch = scratch_np
    cdef double complex[:, ::1] gated = gated_np

    cdef double complex one = 1.0, zero = 0.0
    cdef char transN = b'N'
    zgemm(&transN, &transN, &n, &m, &chi_m, &one,
          <double complex*> &right[0, 0, 0], &n, <double complex*> &left[0, 0, 0], &chi_m,
          &zero, &theta[0, 0], &n)

    cdef Py_ssize_t l, s1, s2, r
    with nogil:
        for l in range(chi_l):
            for s1 in range(d):
                for s2 in range(d):
                    for r in range(chi_r):
                        scratch[s1 * d + s2, l * chi_r + r] = theta[l * d + s1, s2 * chi_r + r]
    zgemm(&transN, &transN, &lr, &dd, &dd, &one,
          &scratch[0, 0], &lr, <double complex*> &gate[0, 0], &dd, &zero, &gated[0, 0], &lr)
    with nogil:
        for l in range(chi_l):
            for s1 in range(d):
                for s2 in range(d):
                    for r in range(chi_r):
                        theta[l * d + s1, s2 * chi_r + r] = gated[s1 * d + s2, l * chi_r + r]

    s_np = np.empty(minmn)
    u_np = np.empty((minmn, n), dtype=np.complex128)
    vt_np = np.empty((m, minmn), dtype=np.complex128)
    iwork_np = np.empty(8 * minmn, dtype=np.intc)
    cdef int lrwork = minmn * max(5 * minmn + 7, 2 * maxmn + 2 * minmn + 1)
    rwork_np = np.empty(lrwork)
    cdef double[::1] s = s_np
    cdef double complex[:, ::1] u = u_np
    cdef double complex[:, ::1] vt = vt_np
    cdef int[::1] iwork = iwork_np
    cdef double[::1] rwork = rwork_np
    cdef char jobz = b'S'
    cdef int info = 0, lwork = -1
    cdef double complex wquery = 0.0
    zgesdd(&jobz, &n, &m, &theta[0, 0], &n, &s[0], &u[0, 0], &n,
           &vt[0, 0], &minmn, &wquery, &lwork, &rwork[0], &iwork[0], &info)
    lwork = <int> wquery.real
    work_np = np.empty(lwork, dtype=np.complex128)
    cdef double complex[::1] work = work_np
    zgesdd(&jobz, &n, &m, &theta[0, 0], &n, &s[0], &u[0, 0], &n,
           &vt[0, 0], &minmn, &work[0], &lwork, &rwork[0], &iwork[0], &info)
    if info != 0:
        raise np.linalg.LinAlgError(f"gesdd failed with info={info}")

    cdef int k = _kept_rank(&s[0], minmn, chi_max, sv_cutoff)
    cdef double discarded = 0.0
    cdef Py_ssize_t i
    for i in range(k, minmn):
        discarded += s[i] * s[i]
    s_k = s_np[:k]
    if renormalize:
        norm = np.linalg.norm(s_k)
        if norm > 0:
            s_k = s_k / norm
    if absorb_right:
        new_left = np.ascontiguousarray(vt_np[:, :k]).reshape(chi_l, d, k)
        new_right = (s_k[:, None] * u_np[:k]).reshape(k, d, chi_r)
    else:
        new_left = np.ascontiguousarray(vt_np[:, :k] * s_k[None, :]).reshape(chi_l, d, k)
        new_right = np.ascontiguousarray(u_np[:k]).reshape(k, d, chi_r)
    return new_left, new_right, discarded
