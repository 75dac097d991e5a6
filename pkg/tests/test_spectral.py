import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab.errors import DimensionMismatch, InvalidInput, InvalidSize, InvalidSubset, NotApplicable
from framelab.frames import FrameSpec, PatternMask, build_generator, gram_matrix
from framelab.linalg import determinant
from framelab.spectral import (
    check_eigenvalue_bracket,
    check_min_eigenvalue_bound,
    codevector_variance,
    min_eigenvalue_ceiling,
    predicted_mse,
    report_from_eigenvalues,
    sine_product_identity,
    spectrum_report,
    subset_spectra,
    vandermonde_det,
)

EIG_TOL = 5e-5
FIG_TOL = 5e-3


def report(n, k, pattern):
    spec = FrameSpec.best_kind(n, k)
    return spectrum_report(build_generator(spec), PatternMask.from_string(pattern, n))


class TestSpectrumReport:
    def test_consecutive_6_3(self, kernels):
        r = report(6, 3, "xxx---")
        assert r.lambda_min == pytest.approx(0.0572, abs=EIG_TOL)
        assert r.lambda_max == pytest.approx(1.9428, abs=EIG_TOL)
        assert r.inv_sum == pytest.approx(19, abs=FIG_TOL)
        assert r.product == pytest.approx(0.1111, abs=FIG_TOL)
        assert not r.is_tight

    def test_evenly_spaced_6_3(self, kernels):
        r = report(6, 3, "x-x-x-")
        assert np.allclose(r.eigenvalues, 1, atol=1e-9)
        assert r.inv_sum == pytest.approx(3, abs=1e-9)
        assert r.product == pytest.approx(1, abs=1e-9)
        assert r.is_tight

    def test_best_7_5(self, kernels):
        r = report(7, 5, "xx-xx-x")
        assert r.lambda_min == pytest.approx(0.3110, abs=EIG_TOL)
        assert r.lambda_max == pytest.approx(1.4, abs=EIG_TOL)
        assert r.inv_sum == pytest.approx(7.40, abs=FIG_TOL)
        assert r.product == pytest.approx(0.4173, abs=FIG_TOL)

    def test_fields_consistent(self):
        r = report(9, 5, "xx-x-x-x-")
        assert r.lambda_min == r.eigenvalues[-1] and r.lambda_max == r.eigenvalues[0]
        assert abs(r.product - r.det_formula) <= 1e-8 * r.product
        assert abs(sum(r.eigenvalues) - 5) <= 1e-9
        assert r.is_tight == (r.lambda_max - r.lambda_min <= 1e-9)

    def test_wrong_count(self):
        with pytest.raises(DimensionMismatch):
            spectrum_report(build_generator(FrameSpec(6, 3)), PatternMask.from_string("xx----"))

    def test_rank_deficient_flagged_unbounded(self):
        r = report_from_eigenvalues(PatternMask.from_string("xx"), [1.0, -1e-13], 0.0)
        assert r.unbounded and math.isinf(r.inv_sum)
        assert r.lambda_min == 0.0


def all_subset_specs(n_max):
    return [FrameSpec.best_kind(n, k) for n in range(1, n_max + 1) for k in range(1, n + 1)]


class TestSubframeInvariants:
    @pytest.mark.parametrize("spec", all_subset_specs(12), ids=str)
    def test_trace_and_determinant_triple(self, spec):
        n, k = spec.n, spec.k
        rows = np.array(list(itertools.combinations(range(n), k)), dtype=np.intp)
        eigs = subset_spectra(gram_matrix(spec), rows)
        assert np.abs(eigs.sum(axis=1) - k).max() <= 1e-9
        g = build_generator(spec)
        for r, e in zip(rows[:40], eigs[:40]):
            formula = vandermonde_det(n, k, [int(i) + 1 for i in r])
            prod = float(np.prod(e))
            gk = g[r]
            lu = determinant(gk @ gk.conj().T).real
            assert prod == pytest.approx(formula, rel=1e-8)
            assert lu == pytest.approx(formula, rel=1e-8)

    @pytest.mark.parametrize("spec", all_subset_specs(12), ids=str)
    def test_consecutive_rows_minimize_determinant(self, spec):
        n, k = spec.n, spec.k
        dets = [vandermonde_det(n, k, [i + 1 for i in r]) for r in itertools.combinations(range(n), k)]
        consecutive = vandermonde_det(n, k, range(1, k + 1))
        assert min(dets) == pytest.approx(consecutive, rel=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(data=st.data())
    def test_rotation_and_reversal_preserve_spectrum(self, data):
        n = data.draw(st.integers(2, 14))
        k = data.draw(st.integers(1, n))
        rows = data.draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
        shift = data.draw(st.integers(0, n - 1))
        spec = FrameSpec.best_kind(n, k)
        g = build_generator(spec)
        p = PatternMask.from_rows(n, rows)
        base = np.array(spectrum_report(g, p).eigenvalues)
        for q in (p.rotate(shift), p.reverse()):
            assert np.abs(np.array(spectrum_report(g, q).eigenvalues) - base).max() <= 1e-9


class TestVandermondeDet:
    def test_every_other_row(self):
        assert vandermonde_det(6, 3, [1, 3, 5]) == pytest.approx(1, abs=1e-12)

    def test_consecutive(self):
        assert vandermonde_det(6, 3, [1, 2, 3]) == pytest.approx(1 / 9, abs=1e-12)

    def test_log_domain_branch_matches_direct(self):
        rows = [1, 2, 5, 9, 11, 17]
        n, k = 20, 6
        direct = 1.0
        for p, q in itertools.combinations(rows, 2):
            direct *= 4 * math.sin(math.pi * (q - p) / n) ** 2
        assert vandermonde_det(n, k, rows) == pytest.approx(direct / k**k, rel=1e-12)

    @pytest.mark.parametrize("rows", [[1, 2], [1, 1, 2], [0, 1, 2], [1, 2, 7]])
    def test_invalid_subset(self, rows):
        with pytest.raises(InvalidSubset):
            vandermonde_det(6, 3, rows)


class TestSineProduct:
    def test_n2(self):
        s = sine_product_identity(2)
        assert s.lhs == pytest.approx(1) and s.rhs == pytest.approx(1)

    def test_n4(self):
        s = sine_product_identity(4)
        assert s.lhs == pytest.approx(1 / 16, rel=1e-12)
        assert s.rhs == pytest.approx(256 / 4096, rel=1e-12)

    def test_n32_log_domain(self):
        s = sine_product_identity(32)
        assert abs(s.log_lhs - s.log_rhs) <= 1e-9

    def test_underflow_is_confined_to_linear_values(self):
        s = sine_product_identity(64)
        assert s.rhs == 0.0
        assert math.isfinite(s.log_rhs)

    def test_invalid(self):
        with pytest.raises(InvalidSize):
            sine_product_identity(1)


class TestEigenvalueBracket:
    def test_single_row(self):
        g = build_generator(FrameSpec(7, 5))
        assert check_eigenvalue_bracket(g, PatternMask.from_string("--x----"))

    def test_all_subsets_7_5(self):
        g = build_generator(FrameSpec(7, 5))
        for rows in itertools.combinations(range(7), 5):
            assert check_eigenvalue_bracket(g, PatternMask.from_rows(7, rows))

    def test_full_frame(self):
        g = build_generator(FrameSpec(7, 5))
        assert check_eigenvalue_bracket(g, PatternMask((True,) * 7))


class TestMinEigenvalueBound:
    def test_7_5(self, kernels):
        r = check_min_eigenvalue_bound(7, 5)
        assert r.bound == pytest.approx(0.4)
        assert r.max_lambda_min == pytest.approx(0.3110, abs=EIG_TOL)
        assert r.holds

    def test_6_3_not_applicable(self):
        with pytest.raises(NotApplicable):
            check_min_eigenvalue_bound(6, 3)

    def test_5_3_exhaustive(self):
        # frozen from numpy.linalg.eigvalsh over all 10 subsets
        r = check_min_eigenvalue_bound(5, 3)
        assert r.subsets_checked == math.comb(5, 3)
        assert r.max_lambda_min == pytest.approx(0.46065533708336887, abs=1e-12)
        assert r.bound == pytest.approx(2 / 3)
        assert r.holds

    def test_rotation_classes_beyond_exhaustive_cap(self):
        r = check_min_eigenvalue_bound(17, 5)
        assert r.subsets_checked < math.comb(17, 5)
        assert r.holds
        assert r.bound == pytest.approx(min_eigenvalue_ceiling(17, 5))


class TestVarianceAndMSE:
    def test_tight(self):
        assert codevector_variance(report(6, 3, "x-x-x-"), 1.0) == pytest.approx(1.0)

    def test_worst(self):
        assert codevector_variance(report(6, 3, "xxx---"), 1.0) == pytest.approx(19 / 3, abs=1e-9)

    def test_zero_source(self):
        assert codevector_variance(report(6, 3, "xxx---"), 0.0) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(InvalidInput):
            codevector_variance(report(6, 3, "xxx---"), -1.0)
        with pytest.raises(InvalidInput):
            predicted_mse(6, 3, -1.0)

    def test_mse(self):
        assert predicted_mse(6, 3, 1.0) == 0.5
        assert predicted_mse(7, 5, 1e-4) == pytest.approx(7.1429e-5, rel=1e-4)
        assert predicted_mse(7, 5, 0.0) == 0.0
