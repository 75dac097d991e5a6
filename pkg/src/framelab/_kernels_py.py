"""Pure-Python kernels mirroring ``_kernels.pyx`` step for step.

Rotations are applied with numpy row/column updates, so a sweep costs
O(k) Python-level operations per pivot instead of O(k^2).
"""
import math

import numpy as np

IMPLEMENTATION = "python"


def _jacobi(a, rel_tol, max_sweeps):
    n = a.shape[0]
    a[np.diag_indices(n)] = a.diagonal().real
    norm = math.sqrt(float(np.sum(a.real**2 + a.imag**2)))
    others = np.ones(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = a.copy()
        off[np.diag_indices(n)] = 0.0
        if math.sqrt(float(np.sum(off.real**2 + off.imag**2))) <= rel_tol * norm:
            return a.diagonal().real.copy(), True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                mag = abs(apq)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                if (sweep > 3 and abs(app) + 1e2 * mag == abs(app)
                        and abs(aqq) + 1e2 * mag == abs(aqq)):
                    a[p, q] = a[q, p] = 0.0
                    continue
                ph = apq / mag
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0)), theta)
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                others[:] = True
                others[p] = others[q] = False
                arp = a[others, p]
                arq = a[others, q] * ph.conjugate()
                nrp = c * arp - s * arq
                nrq = s * arp + c * arq
                a[others, p] = nrp
                a[p, others] = nrp.conj()
                a[others, q] = nrq
                a[q, others] = nrq.conj()
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                a[p, q] = a[q, p] = 0.0
    return a.diagonal().real.copy(), False


def jacobi_eigvalsh(a, rel_tol=1e-12, max_sweeps=100):
    """Unsorted eigenvalues of one Hermitian matrix and a convergence flag."""
    work = np.array(a, dtype=np.complex128, order="C", copy=True)
    return _jacobi(work, rel_tol, max_sweeps)


def jacobi_eigvalsh_batch(stack, rel_tol=1e-12, max_sweeps=100):
    """Eigenvalues for a (m, k, k) stack; returns (m, k) values and (m,) flags."""
    work = np.array(stack, dtype=np.complex128, order="C", copy=True)
    m, k = work.shape[0], work.shape[1]
    w = np.empty((m, k), dtype=np.float64)
    ok = np.empty(m, dtype=bool)
    for i in range(m):
        w[i], ok[i] = _jacobi(work[i], rel_tol, max_sweeps)
    return w, ok


def _lu(a, thresh):
    n = a.shape[0]
    perm = np.arange(n)
    det = 1.0 + 0.0j
    singular = False
    for col in range(n):
        mags = np.abs(a[col:, col])
        piv = col + int(np.argmax(mags))
        best = float(mags[piv - col])
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            perm[[col, piv]] = perm[[piv, col]]
            det = -det
        if best < thresh:
            singular = True
        if best == 0.0:
            return perm, 0j, True
        det *= complex(a[col, col])
        f = a[col + 1:, col] / a[col, col]
        a[col + 1:, col] = f
        a[col + 1:, col + 1:] -= np.outer(f, a[col, col + 1:])
    return perm, det, singular


def lu_det(a, rel_thresh=1e-12):
    """Determinant and a flag set when some pivot fell under the singular threshold."""
    work = np.array(a, dtype=np.complex128, copy=True)
    thresh = rel_thresh * (float(np.abs(work).max()) if work.size else 0.0)
    _, det, singular = _lu(work, thresh)
    return complex(det), singular


def lu_inverse(a, rel_thresh=1e-12):
    """Inverse via LU; returns (inverse or None, singular flag)."""
    work = np.array(a, dtype=np.complex128, copy=True)
    n = work.shape[0]
    thresh = rel_thresh * (float(np.abs(work).max()) if work.size else 0.0)
    perm, _, singular = _lu(work, thresh)
    if singular:
        return None, True
    x = np.eye(n, dtype=np.complex128)[perm]
    for i in range(n):
        x[i] -= work[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - work[i, i + 1:] @ x[i + 1:]) / work[i, i]
    return x, False
