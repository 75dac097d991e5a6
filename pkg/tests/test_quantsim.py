import numpy as np
import pytest

from framelab.errors import DimensionMismatch, InvalidModel
from framelab.frames import FrameSpec, Kind, PatternMask, build_generator, build_systematic
from framelab.quantsim import NoiseModel, pseudoinverse, reconstruct, simulate
from framelab.search import enumerate_classes


def pm(s):
    return PatternMask.from_string(s)


CASES = [(FrameSpec(7, 5), "xx-xx-x"), (FrameSpec(6, 3), "xxx---"), (FrameSpec(8, 3, Kind.COMPLEX), "x--x-x--")]


class TestReconstruct:
    @pytest.mark.parametrize("spec,pattern", CASES)
    def test_left_inverse(self, spec, pattern, rng):
        g = build_generator(spec)
        gs = build_systematic(g, pm(pattern))
        x = rng.standard_normal((spec.k, 4)) + 1j * rng.standard_normal((spec.k, 4))
        assert np.abs(reconstruct(gs, g, pm(pattern), gs @ x) - x).max() <= 1e-10
        assert np.abs(reconstruct(gs, g, pm(pattern), np.zeros(spec.n))).max() == 0

    @pytest.mark.parametrize("spec,pattern", CASES)
    def test_matches_normal_equations(self, spec, pattern):
        g = build_generator(spec)
        gs = build_systematic(g, pm(pattern))
        gh = gs.conj().T
        oracle = np.linalg.solve(gh @ gs, gh)
        assert np.abs(pseudoinverse(g, pm(pattern)) - oracle).max() <= 1e-8

    def test_shape_mismatch(self):
        g = build_generator(FrameSpec(7, 5))
        gs = build_systematic(g, pm("xx-xx-x"))
        with pytest.raises(DimensionMismatch):
            reconstruct(gs, g, pm("xx-xx-x"), np.zeros(6))


class TestNoiseModel:
    def test_step(self):
        assert NoiseModel.uniform(3, 2.0).step == 0.5

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(kind="iid", sigma_q2=-1.0),
            dict(kind="iid", sigma_q2=float("nan")),
            dict(kind="uniform", bits=0),
            dict(kind="uniform", bits=2.5),
            dict(kind="uniform", range=0.0),
            dict(kind="laplace"),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidModel):
            NoiseModel(**kwargs)

    @pytest.mark.parametrize("kw", [dict(trials=0), dict(trials=-3), dict(seed=-1), dict(sigma_x2=-1.0)])
    def test_invalid_simulation(self, kw):
        args = dict(sigma_x2=1.0, trials=10, seed=0) | kw
        with pytest.raises(InvalidModel):
            simulate(FrameSpec(7, 5), pm("xx-xx-x"), NoiseModel.iid(0.01), **args)


class TestSimulate:
    def test_noiseless_single_trial(self):
        rep = simulate(FrameSpec(7, 5), pm("xxxxx--"), NoiseModel.iid(0.0), 1.0, 1, 3)
        assert rep.trials == 1
        assert rep.empirical_mse <= 1e-18

    def test_deterministic(self):
        args = (FrameSpec(7, 5), pm("xx-xx-x"), NoiseModel.iid(0.01), 1.0, 70000, 11)
        assert simulate(*args) == simulate(*args)
        other = simulate(*args[:-1], 12)
        assert other.empirical_mse != simulate(*args).empirical_mse

    def test_independent_of_worker_count(self, monkeypatch):
        args = (FrameSpec(6, 3), pm("xx-x--"), NoiseModel.iid(0.01), 1.0, 140000, 5)
        monkeypatch.setenv("FRAME_LAB_THREADS", "1")
        one = simulate(*args)
        monkeypatch.setenv("FRAME_LAB_THREADS", "4")
        assert simulate(*args) == one

    @pytest.mark.parametrize("spec,pattern", CASES)
    def test_within_three_standard_errors(self, spec, pattern):
        rep = simulate(spec, pm(pattern), NoiseModel.iid(0.01), 2.0, 100000, 7)
        assert abs(rep.empirical_sigma_y2 - rep.predicted_sigma_y2) <= 3 * rep.sigma_y2_stderr
        assert abs(rep.empirical_mse - rep.predicted_mse) <= 3 * rep.mse_stderr
        assert rep.predicted_mse == pytest.approx(spec.k / spec.n * 0.01)

    @pytest.mark.parametrize("pattern", [c.to_string() for c in enumerate_classes(FrameSpec(7, 5))])
    def test_uniform_quantizer(self, pattern):
        model = NoiseModel.uniform(8, 8.0)
        rep = simulate(FrameSpec(7, 5), pm(pattern), model, 0.25, 100000, 2)
        # fine quantizer, no overload: noise power close to step^2 / 12
        assert rep.noise_sigma_q2 == pytest.approx(model.step**2 / 12, rel=0.05)
        assert rep.empirical_mse == pytest.approx(rep.predicted_mse, rel=0.10)

    def test_complex_uniform_quantizer(self):
        model = NoiseModel.uniform(8, 8.0)
        rep = simulate(FrameSpec(8, 3, Kind.COMPLEX), pm("x--x-x--"), model, 1.0, 50000, 4)
        assert rep.noise_sigma_q2 == pytest.approx(2 * model.step**2 / 12, rel=0.05)
        assert rep.empirical_mse == pytest.approx(rep.predicted_mse, rel=0.10)
