# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic Jacobi for Hermitian eigenvalues, partial-pivot LU.

The pure-Python twin lives in ``_kernels_py``; both expose the same four
functions and must agree to rounding.
"""
import numpy as np

from libc.math cimport sqrt, fabs

IMPLEMENTATION = "cython"


cdef inline double _abs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex _conj(double complex z) noexcept nogil:
    return z.real - 1j * z.imag


cdef int _jacobi(double complex[:, ::1] a, double[::1] w,
                 double rel_tol, int max_sweeps) noexcept nogil:
    """Diagonalize ``a`` in place; returns sweeps used, or -1 on no convergence."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, r, i, j
    cdef double norm2 = 0.0, off2, mag, app, aqq, theta, t, c, s
    cdef double complex ph, arp, arq, nrp, nrq
    cdef int sweep

    for i in range(n):
        a[i, i] = a[i, i].real
        for j in range(n):
            norm2 += _abs2(a[i, j])

    for sweep in range(max_sweeps + 1):
        off2 = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off2 += _abs2(a[i, j])
        if sqrt(off2) <= rel_tol * sqrt(norm2):
            for i in range(n):
                w[i] = a[i, i].real
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = sqrt(_abs2(a[p, q]))
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                if sweep > 3 and fabs(app) + 1e2 * mag == fabs(app) \
                        and fabs(aqq) + 1e2 * mag == fabs(aqq):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                ph = a[p, q] / mag
                theta = (aqq - app) / (2.0 * mag)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for r in range(n):
                    if r == p or r == q:
                        continue
                    arp = a[r, p]
                    arq = a[r, q] * _conj(ph)
                    nrp = c * arp - s * arq
                    nrq = s * arp + c * arq
                    a[r, p] = nrp
                    a[p, r] = _conj(nrp)
                    a[r, q] = nrq
                    a[q, r] = _conj(nrq)
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = 0.0
                a[q, p] = 0.0
    for i in range(n):
        w[i] = a[i, i].real
    return -1


def jacobi_eigvalsh(a, double rel_tol=1e-12, int max_sweeps=100):
    """Unsorted eigenvalues of one Hermitian matrix and a convergence flag."""
    cdef double complex[:, ::1] work = np.array(a, dtype=np.complex128, order="C", copy=True)
    w = np.empty(work.shape[0], dtype=np.float64)
    cdef double[::1] wv = w
    cdef int used
    with nogil:
        used = _jacobi(work, wv, rel_tol, max_sweeps)
    return w, used >= 0


def jacobi_eigvalsh_batch(stack, double rel_tol=1e-12, int max_sweeps=100):
    """Eigenvalues for a (m, k, k) stack; returns (m, k) values and (m,) flags."""
    cdef double complex[:, :, ::1] work = np.array(stack, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t m = work.shape[0], k = work.shape[1], i
    w = np.empty((m, k), dtype=np.float64)
    ok = np.empty(m, dtype=np.bool_)
    cdef double[:, ::1] wv = w
    cdef unsigned char[::1] okv = ok.view(np.uint8)
    with nogil:
        for i in range(m):
            okv[i] = _jacobi(work[i], wv[i], rel_tol, max_sweeps) >= 0
    return w, ok


cdef double complex _lu(double complex[:, ::1] a, Py_ssize_t[::1] perm,
                        double thresh, int *singular) noexcept nogil:
    """In-place LU with row pivoting; returns the determinant."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, col, piv
    cdef double best, cur
    cdef double complex det = 1.0, f, tmp
    singular[0] = 0
    for i in range(n):
        perm[i] = i
    for col in range(n):
        piv = col
        best = _abs2(a[col, col])
        for i in range(col + 1, n):
            cur = _abs2(a[i, col])
            if cur > best:
                best = cur
                piv = i
        if piv != col:
            for j in range(n):
                tmp = a[col, j]
                a[col, j] = a[piv, j]
                a[piv, j] = tmp
            i = perm[col]
            perm[col] = perm[piv]
            perm[piv] = i
            det = -det
        if sqrt(best) < thresh:
            singular[0] = 1
        if best == 0.0:
            singular[0] = 1
            return 0.0
        det = det * a[col, col]
        for i in range(col + 1, n):
            f = a[i, col] / a[col, col]
            a[i, col] = f
            for j in range(col + 1, n):
                a[i, j] = a[i, j] - f * a[col, j]
    return det


def _max_abs(a):
    return float(np.abs(a).max()) if a.size else 0.0


def lu_det(a, double rel_thresh=1e-12):
    """Determinant and a flag set when some pivot fell under the singular threshold."""
    arr = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef double complex[:, ::1] work = arr
    cdef Py_ssize_t[::1] perm = np.empty(arr.shape[0], dtype=np.intp)
    cdef double thresh = rel_thresh * _max_abs(arr)
    cdef int singular = 0
    cdef double complex det
    with nogil:
        det = _lu(work, perm, thresh, &singular)
    return complex(det), bool(singular)


def lu_inverse(a, double rel_thresh=1e-12):
    """Inverse via LU; returns (inverse or None, singular flag)."""
    arr = np.array(a, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = arr.shape[0], i, j, col
    cdef double complex[:, ::1] work = arr
    cdef Py_ssize_t[::1] perm = np.empty(n, dtype=np.intp)
    cdef double thresh = rel_thresh * _max_abs(arr)
    cdef int singular = 0
    out = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] x = out
    cdef double complex acc
    with nogil:
        _lu(work, perm, thresh, &singular)
        if not singular:
            for col in range(n):
                # forward substitution on P·e_col, unit lower triangle
                for i in range(n):
                    acc = 1.0 if perm[i] == col else 0.0
                    for j in range(i):
                        acc = acc - work[i, j] * x[j, col]
                    x[i, col] = acc
                for i in range(n - 1, -1, -1):
                    acc = x[i, col]
                    for j in range(i + 1, n):
                        acc = acc - work[i, j] * x[j, col]
                    x[i, col] = acc / work[i, i]
    if singular:
        return None, True
    return out, False
