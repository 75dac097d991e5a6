"""Small dense complex linear algebra.

Matrices are 2-D ``complex128`` numpy arrays. Eigenvalues come from a cyclic
Jacobi solver and determinants/inverses from partial-pivot LU, both in the
kernel layer (compiled when available).
"""
import numpy as np

from . import _backend
from .errors import DimensionMismatch, NoConvergence, NonFinite, NotHermitian, NotSquare, Singular

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
SINGULAR_RTOL = 1e-12


def as_matrix(a):
    """Coerce ``a`` to a finite 2-D complex128 array with at least one row and column."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix contains NaN or Inf")
    return m


def _square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got {m.shape[0]}x{m.shape[1]}")
    return m


def adjoint(a):
    return np.conj(as_matrix(a)).T


def hermitian_defect(a):
    """Largest entry of ``|a - a^H|``."""
    m = _square(a)
    return float(np.abs(m - m.conj().T).max())


def eig_hermitian(a, tol=HERMITIAN_TOL, *, rel_tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues of a Hermitian matrix, sorted descending.

    ``tol`` bounds the admissible asymmetry ``max|a - a^H|``; ``rel_tol`` is
    the Jacobi stopping rule on off-diagonal Frobenius mass relative to
    ``||a||_F``.
    """
    m = _square(a)
    defect = float(np.abs(m - m.conj().T).max())
    if defect > tol:
        raise NotHermitian(f"asymmetry {defect:.3e} exceeds tolerance {tol:.3e}")
    w, converged = _backend.kernels.jacobi_eigvalsh(m, rel_tol, max_sweeps)
    if not converged:
        raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")
    return np.sort(w)[::-1]


def eig_hermitian_batch(stack, *, rel_tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Descending eigenvalues for each matrix of a ``(m, k, k)`` Hermitian stack.

    No Hermiticity check is made; callers build the stack from Gram
    submatrices that are Hermitian by construction.
    """
    s = np.asarray(stack, dtype=np.complex128)
    if s.ndim != 3 or s.shape[1] != s.shape[2]:
        raise NotSquare(f"expected a (m, k, k) stack, got shape {s.shape}")
    if s.shape[0] == 0:
        return np.empty((0, s.shape[1]))
    w, ok = _backend.kernels.jacobi_eigvalsh_batch(s, rel_tol, max_sweeps)
    if not ok.all():
        raise NoConvergence(f"Jacobi did not converge within {max_sweeps} sweeps")
    return -np.sort(-w, axis=1)


def determinant(a):
    """Determinant via partial-pivot LU (no singularity error; may return 0)."""
    det, _ = _backend.kernels.lu_det(_square(a), SINGULAR_RTOL)
    return det


def inverse(a):
    m = _square(a)
    inv, singular = _backend.kernels.lu_inverse(m, SINGULAR_RTOL)
    if singular:
        raise Singular("pivot below 1e-12 of the largest entry")
    return inv


def is_toeplitz(a, tol=HERMITIAN_TOL):
    """True when every diagonal of ``a`` is constant within ``tol``."""
    m = _square(a)
    return bool(np.all(np.abs(m[1:, 1:] - m[:-1, :-1]) <= tol))


def is_circulant(a, tol=HERMITIAN_TOL):
    """Toeplitz, and each row's last entry equals the next row's first."""
    m = _square(a)
    if not is_toeplitz(m, tol):
        return False
    return bool(np.all(np.abs(m[:-1, -1] - m[1:, 0]) <= tol))
