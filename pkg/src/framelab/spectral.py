"""Subframe spectra, the closed-form Vandermonde determinant, and eigenvalue bounds."""
import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._parallel import ordered_map
from .errors import DimensionMismatch, InvalidInput, InvalidSize, InvalidSubset, NotApplicable
from .frames import FrameSpec, PatternMask, extract_subframe, gram_matrix
from .linalg import as_matrix, eig_hermitian, eig_hermitian_batch

TIGHT_TOL = 1e-9
BRACKET_TOL = 1e-9
BOUND_TOL = 1e-9
UNBOUNDED_EIG = 1e-12
PSD_CLAMP = 1e-10
LOG_DOMAIN_N = 16
EXHAUSTIVE_BOUND_N = 16
_CHUNK = 2048


@dataclass(frozen=True)
class SpectrumReport:
    pattern: PatternMask
    eigenvalues: tuple
    lambda_min: float
    lambda_max: float
    inv_sum: float
    product: float
    is_tight: bool
    det_formula: float

    @property
    def k(self):
        return len(self.eigenvalues)

    @property
    def unbounded(self):
        """True when some eigenvalue is numerically zero and ``inv_sum`` is infinite."""
        return math.isinf(self.inv_sum)


def _clamp(eigs):
    eigs = np.asarray(eigs, dtype=np.float64)
    return np.where((eigs < 0) & (eigs >= -PSD_CLAMP), 0.0, eigs)


def report_from_eigenvalues(pattern, eigenvalues, det_formula):
    """Assemble a report from descending eigenvalues of G_k G_k^H."""
    eigs = _clamp(eigenvalues)
    lo, hi = float(eigs[-1]), float(eigs[0])
    if lo < UNBOUNDED_EIG:
        inv_sum = math.inf
    else:
        inv_sum = math.fsum(1.0 / eigs)
    return SpectrumReport(
        pattern=pattern,
        eigenvalues=tuple(float(v) for v in eigs),
        lambda_min=lo,
        lambda_max=hi,
        inv_sum=inv_sum,
        product=float(np.prod(eigs)),
        is_tight=hi - lo <= TIGHT_TOL,
        det_formula=det_formula,
    )


def spectrum_report(g, pattern):
    """Spectrum of G_k G_k^H for the k rows the pattern selects."""
    g = as_matrix(g)
    n, k = g.shape
    if pattern.n != n or pattern.count != k:
        raise DimensionMismatch(
            f"pattern must have length {n} and select k={k} rows, "
            f"got length {pattern.n} with {pattern.count}"
        )
    gk = extract_subframe(g, pattern)
    eigs = eig_hermitian(gk @ gk.conj().T)
    det = vandermonde_det(n, k, [r + 1 for r in pattern.rows])
    return report_from_eigenvalues(pattern, eigs, det)


def subset_spectra(gram, row_sets):
    """Descending eigenvalues of every principal submatrix ``gram[rows, rows]``.

    ``row_sets`` is an (m, p) integer array of 0-based rows. Work is chunked
    and fanned out over threads; output order matches input order.
    """
    gram = np.asarray(gram, dtype=np.complex128)
    rows = np.asarray(row_sets, dtype=np.intp)
    if rows.ndim != 2:
        raise DimensionMismatch("row_sets must be a 2-D array")
    if rows.shape[0] == 0:
        return np.empty((0, rows.shape[1]))
    chunks = [rows[i:i + _CHUNK] for i in range(0, rows.shape[0], _CHUNK)]

    def work(chunk):
        return eig_hermitian_batch(gram[chunk[:, :, None], chunk[:, None, :]])

    return np.concatenate(ordered_map(work, chunks), axis=0)


def vandermonde_det(n, k, rows):
    """Closed-form det(G_k G_k^H) for 1-based rows: prod of 4 sin^2(pi (q-p)/n) over k^k.

    For n above 16 the product is accumulated as a sum of logs.
    """
    rows = sorted(rows)
    if len(rows) != k or len(set(rows)) != k or any(not 1 <= r <= n for r in rows):
        raise InvalidSubset(f"rows {rows} are not a {k}-subset of 1..{n}")
    pairs = itertools.combinations(rows, 2)
    if n > LOG_DOMAIN_N:
        logs = [math.log(4.0 * math.sin(math.pi * (q - p) / n) ** 2) for p, q in pairs]
        return math.exp(math.fsum(logs) - k * math.log(k))
    out = 1.0
    for p, q in pairs:
        out *= 4.0 * math.sin(math.pi * (q - p) / n) ** 2
    return out / k**k


class SineProduct(NamedTuple):
    lhs: float
    rhs: float
    log_lhs: float
    log_rhs: float


def sine_product_identity(n):
    """Both sides of prod_{r=1}^{n-1} sin^2(pi r/n)^(n-r) = n^n / 2^(n(n-1)).

    The linear values underflow to 0.0 for large n; compare the logs.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidSize(f"need n >= 2, got {n!r}")
    log_lhs = math.fsum((n - r) * math.log(math.sin(math.pi * r / n) ** 2) for r in range(1, n))
    log_rhs = n * math.log(n) - n * (n - 1) * math.log(2.0)
    return SineProduct(math.exp(log_lhs), math.exp(log_rhs), log_lhs, log_rhs)


def bracket_extremes(g, pattern):
    """(lambda_min, lambda_max) of G_p G_p^H for any nonempty row selection."""
    gp = extract_subframe(g, pattern)
    if gp.shape[0] == 0:
        raise DimensionMismatch("pattern selects no rows")
    eigs = eig_hermitian(gp @ gp.conj().T)
    return float(eigs[-1]), float(eigs[0])


def check_eigenvalue_bracket(g, pattern):
    """Smallest eigenvalue of G_p G_p^H is at most 1 and the largest at least 1."""
    lo, hi = bracket_extremes(g, pattern)
    return lo <= 1 + BRACKET_TOL and hi >= 1 - BRACKET_TOL


class MinEigenvalueBound(NamedTuple):
    bound: float
    max_lambda_min: float
    holds: bool
    best_rows: tuple
    subsets_checked: int


def min_eigenvalue_ceiling(n, k):
    """(n/k - 1) / floor(n/k): cap on the smallest eigenvalue when k does not divide n."""
    return (n / k - 1) / (n // k)


def check_min_eigenvalue_bound(n, k, kind=None):
    """Largest lambda_min(G_k G_k^H) over row subsets versus its ceiling.

    Every k-subset is tried for n <= 16; above that one subset per rotation
    class (the Gram matrix is circulant, so rotations share a spectrum).
    """
    if n % k == 0:
        raise NotApplicable(f"k={k} divides n={n}; evenly spaced rows give lambda_min = 1")
    spec = FrameSpec.best_kind(n, k) if kind is None else FrameSpec(n, k, kind)
    if n <= EXHAUSTIVE_BOUND_N:
        rows = np.array(list(itertools.combinations(range(n), k)), dtype=np.intp)
    else:
        from .search import necklace_rows

        rows = necklace_rows(n, k)
    eigs = subset_spectra(gram_matrix(spec), rows)
    mins = eigs[:, -1]
    best = int(np.argmax(mins))
    top = float(mins[best])
    bound = min_eigenvalue_ceiling(n, k)
    holds = top <= bound + BOUND_TOL and top < 1 - BOUND_TOL
    return MinEigenvalueBound(bound, top, holds, tuple(int(r) + 1 for r in rows[best]), len(rows))


def codevector_variance(report, sigma_x2):
    """Per-sample variance of y = G_sys x: sigma_x2 * sum(1/lambda) / k."""
    if sigma_x2 < 0:
        raise InvalidInput(f"sigma_x2 must be non-negative, got {sigma_x2}")
    if sigma_x2 == 0:
        return 0.0
    return sigma_x2 * report.inv_sum / report.k


def predicted_mse(n, k, sigma_q2):
    """Reconstruction MSE under white additive noise; the same for every pattern."""
    if sigma_q2 < 0:
        raise InvalidInput(f"sigma_q2 must be non-negative, got {sigma_q2}")
    return k / n * sigma_q2
