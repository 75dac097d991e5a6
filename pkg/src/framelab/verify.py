"""Exhaustive numerical checks of the frame claims for every (n, k) up to a size cap."""
import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InvalidInput
from .frames import FrameSpec, Kind, PatternMask, build_generator, gram_entry, gram_matrix
from .linalg import determinant, is_circulant, is_toeplitz
from .search import _fixed_density_necklaces, canonical_pattern, rank_patterns
from .spectral import (
    BOUND_TOL,
    BRACKET_TOL,
    check_min_eigenvalue_bound,
    sine_product_identity,
    subset_spectra,
)

MAX_N = 16
STRUCT_TOL = 1e-10
IDENTITY_TOL = 1e-9
VALUE_TOL = 1e-9


@dataclass
class Claim:
    name: str
    passed: bool = True
    worst_residual: float = 0.0
    checked: int = 0
    failures: list = field(default_factory=list)
    details: list = field(default_factory=list)

    def record(self, residual, ok, where, count=1):
        self.checked += count
        self.worst_residual = max(self.worst_residual, float(residual))
        if not ok:
            self.passed = False
            if len(self.failures) < 20:
                self.failures.append(where)

    def as_dict(self):
        out = {
            "name": self.name,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "checked": self.checked,
            "failures": self.failures,
        }
        if self.details:
            out["details"] = self.details
        return out


def specs_up_to(n_max, kinds=(Kind.REAL, Kind.COMPLEX)):
    """Every constructible FrameSpec with n <= n_max for the requested kinds."""
    out = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            for kind in kinds:
                try:
                    out.append(FrameSpec(n, k, kind))
                except InvalidInput:
                    pass
    return out


def check_gram_structure(n_max):
    """G^H G = (n/k) I; G G^H circulant Toeplitz with unit diagonal; closed-form entries."""
    claim = Claim("gram_circulant")
    for spec in specs_up_to(n_max):
        g = build_generator(spec)
        a = gram_matrix(spec)
        n, k = spec.n, spec.k
        frame = float(np.abs(g.conj().T @ g - (n / k) * np.eye(k)).max())
        diag = float(np.abs(np.diag(a) - 1).max())
        formula = np.array([[gram_entry(spec, r, s) for s in range(1, n + 1)] for r in range(1, n + 1)])
        entry = float(np.abs(a - formula).max())
        circ = is_toeplitz(a, STRUCT_TOL) and is_circulant(a, STRUCT_TOL)
        res = max(frame, diag, entry)
        claim.record(res, circ and res <= STRUCT_TOL, f"{spec.kind.value} ({n},{k})")
    return claim


def _necklaces_all_sizes(n):
    for p in range(1, n + 1):
        words = _fixed_density_necklaces(n, p)
        yield p, np.array([[i for i, c in enumerate(w) if c == "0"] for w in words], dtype=np.intp)


def check_eigenvalue_brackets(n_max, exhaustive=False):
    """lambda_min <= 1 <= lambda_max for every row subset of every size.

    Without ``exhaustive`` one subset per rotation class is tried; the Gram
    matrix is circulant, so rotated subsets have identical submatrices.
    """
    claim = Claim("eigenvalue_bracket")
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            gram = gram_matrix(FrameSpec.best_kind(n, k))
            if exhaustive:
                groups = (
                    (p, np.array(list(itertools.combinations(range(n), p)), dtype=np.intp))
                    for p in range(1, n + 1)
                )
            else:
                groups = _necklaces_all_sizes(n)
            for p, rows in groups:
                eigs = subset_spectra(gram, rows)
                lo, hi = eigs[:, -1], eigs[:, 0]
                res = float(max(np.max(lo - 1), np.max(1 - hi), 0.0))
                ok = bool(np.all(lo <= 1 + BRACKET_TOL) and np.all(hi >= 1 - BRACKET_TOL))
                claim.record(res, ok, f"({n},{k}) p={p}", count=len(rows))
    return claim


def check_min_eigenvalue_bounds(n_max):
    """Max over k-subsets of lambda_min stays below (n/k - 1)/floor(n/k) and below 1."""
    claim = Claim("min_eigenvalue_bound")
    for n in range(2, n_max + 1):
        for k in range(2, n):
            if n % k == 0:
                continue
            r = check_min_eigenvalue_bound(n, k)
            claim.details.append(
                {
                    "n": n,
                    "k": k,
                    "bound": r.bound,
                    "max_lambda_min": r.max_lambda_min,
                    "best_rows": list(r.best_rows),
                    "holds": r.holds,
                }
            )
            res = max(r.max_lambda_min - r.bound, 0.0)
            claim.record(res, r.holds, f"({n},{k})", count=r.subsets_checked)
    return claim


def check_sine_products(n_max):
    claim = Claim("sine_product_identity")
    for n in range(2, n_max + 1):
        s = sine_product_identity(n)
        res = abs(s.log_lhs - s.log_rhs)
        claim.record(res, res <= IDENTITY_TOL, f"n={n}")
    return claim


@lru_cache(maxsize=None)
def _ranked(n, k):
    return rank_patterns(FrameSpec.best_kind(n, k))


def _argopt_sets(result):
    inv = [c.report.inv_sum for c in result.classes]
    prod = [c.report.product for c in result.classes]
    lo, hi = min(inv), max(prod)
    argmin = {c.pattern for c, v in zip(result.classes, inv) if v - lo <= VALUE_TOL}
    argmax = {c.pattern for c, v in zip(result.classes, prod) if hi - v <= VALUE_TOL}
    return argmin, argmax


def check_argopt_agreement(n_max):
    """Classes minimizing sum(1/lambda) are exactly those maximizing prod(lambda)."""
    claim = Claim("inv_sum_product_argopt")
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            result = _ranked(n, k)
            argmin, argmax = _argopt_sets(result)
            claim.record(0.0, argmin == argmax, f"({n},{k})")
    return claim


def tight_classes(result):
    return [c.pattern for c in result.classes if c.report.is_tight]


def check_tight_existence(n_max):
    """A tight systematic frame exists iff k divides n, and only the evenly spaced class is tight."""
    claim = Claim("tight_existence")
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            result = _ranked(n, k)
            tight = tight_classes(result)
            if n % k == 0:
                even = canonical_pattern(PatternMask.every_mth(n, n // k))
                ok = tight == [even]
            else:
                ok = not tight
            spread = min(c.report.lambda_max - c.report.lambda_min for c in result.classes)
            claim.record(spread if n % k == 0 else 0.0, ok, f"({n},{k})")
    return claim


def check_determinant_agreement(n_max):
    """Eigenvalue product, closed-form determinant and LU determinant agree."""
    claim = Claim("determinant_agreement")
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            g = build_generator(FrameSpec.best_kind(n, k))
            result = _ranked(n, k)
            for c in result.classes:
                gk = g[list(c.pattern.rows)]
                lu = determinant(gk @ gk.conj().T).real
                vals = (c.report.product, c.report.det_formula, lu)
                scale = max(abs(v) for v in vals)
                res = (max(vals) - min(vals)) / scale
                claim.record(res, res <= 1e-8, f"({n},{k}) {c.pattern}")
    return claim


SUITES = (
    check_gram_structure,
    check_eigenvalue_brackets,
    check_min_eigenvalue_bounds,
    check_sine_products,
    check_argopt_agreement,
    check_tight_existence,
    check_determinant_agreement,
)


def run_all(n_max):
    if not isinstance(n_max, int) or not 1 <= n_max <= MAX_N:
        raise InvalidInput(f"n_max must be an integer in 1..{MAX_N}, got {n_max!r}")
    return [suite(n_max) for suite in SUITES]
