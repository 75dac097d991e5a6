"""Monte-Carlo check of codevector variance and reconstruction MSE.

Messages are zero-mean Gaussian, encoded with the systematic frame, hit by
additive noise (white or a midrise uniform quantizer) and recovered with the
pseudoinverse ``(k/n) G_k G^H``.

Random streams: numpy PCG64, one substream per shard of ``SHARD_TRIALS``
trials seeded by ``SeedSequence(seed, spawn_key=(shard,))``. Gaussian draws
use numpy's ziggurat transform. Shard sums are merged in shard order with
``math.fsum``, so a report depends only on the inputs and the seed.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from ._parallel import ordered_map
from .errors import DimensionMismatch, InvalidModel
from .frames import Kind, build_generator, build_systematic, extract_subframe
from .linalg import as_matrix
from .spectral import codevector_variance, predicted_mse, spectrum_report

SHARD_TRIALS = 1 << 16


class NoiseKind(enum.Enum):
    IID_ADDITIVE = "iid"
    UNIFORM_QUANTIZER = "uniform"


@dataclass(frozen=True)
class NoiseModel:
    kind: NoiseKind = NoiseKind.IID_ADDITIVE
    sigma_q2: float = 0.0
    bits: int = 8
    range: float = 1.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", NoiseKind(self.kind))
        except ValueError:
            raise InvalidModel(f"unknown noise kind {self.kind!r}") from None
        if self.kind is NoiseKind.IID_ADDITIVE:
            if not (math.isfinite(self.sigma_q2) and self.sigma_q2 >= 0):
                raise InvalidModel(f"sigma_q2 must be finite and >= 0, got {self.sigma_q2}")
        else:
            if not isinstance(self.bits, int) or self.bits < 1:
                raise InvalidModel(f"bits must be an integer >= 1, got {self.bits!r}")
            if not (math.isfinite(self.range) and self.range > 0):
                raise InvalidModel(f"range must be finite and > 0, got {self.range}")

    @classmethod
    def iid(cls, sigma_q2):
        return cls(NoiseKind.IID_ADDITIVE, sigma_q2=sigma_q2)

    @classmethod
    def uniform(cls, bits, range):
        return cls(NoiseKind.UNIFORM_QUANTIZER, bits=bits, range=range)

    @property
    def step(self):
        return 2.0 * self.range / 2**self.bits


@dataclass(frozen=True)
class SimReport:
    trials: int
    empirical_sigma_y2: float
    predicted_sigma_y2: float
    empirical_mse: float
    predicted_mse: float
    seed: int
    noise_sigma_q2: float
    sigma_y2_stderr: float
    mse_stderr: float


def pseudoinverse(g, pattern):
    """Closed-form left inverse of G_sys: (k/n) G_k G^H."""
    g = as_matrix(g)
    n, k = g.shape
    return (k / n) * extract_subframe(g, pattern) @ g.conj().T


def reconstruct(g_sys, g, pattern, y_hat):
    """Least-squares message estimate from a (possibly noisy) codevector.

    ``y_hat`` may be a length-n vector or an (n, m) block of column vectors.
    """
    g_sys = as_matrix(g_sys)
    g = as_matrix(g)
    y = np.asarray(y_hat)
    if g_sys.shape != g.shape or y.shape[0] != g.shape[0]:
        raise DimensionMismatch(
            f"G_sys {g_sys.shape}, G {g.shape} and y_hat {y.shape} are not compatible"
        )
    return pseudoinverse(g, pattern) @ y


def _quantize(v, model):
    step = model.step
    top = model.range - step / 2
    return np.clip(step * (np.floor(v / step) + 0.5), -top, top)


def _gauss(rng, shape, var, complex_):
    if not complex_:
        return rng.standard_normal(shape) * math.sqrt(var)
    scale = math.sqrt(var / 2)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * scale


def simulate(spec, pattern, noise, sigma_x2, trials, seed):
    if not isinstance(trials, int) or trials < 1:
        raise InvalidModel(f"trials must be a positive integer, got {trials!r}")
    if not (math.isfinite(sigma_x2) and sigma_x2 >= 0):
        raise InvalidModel(f"sigma_x2 must be finite and >= 0, got {sigma_x2}")
    if not isinstance(seed, int) or seed < 0:
        raise InvalidModel(f"seed must be a non-negative integer, got {seed!r}")
    pattern.require(spec)
    g = build_generator(spec)
    gsys = build_systematic(g, pattern)
    pinv = pseudoinverse(g, pattern)
    real = spec.kind is Kind.REAL
    if real:
        gsys, pinv = gsys.real, pinv.real
    n, k = spec.n, spec.k
    enc, dec = gsys.T.copy(), pinv.T.copy()

    def shard(index):
        m = min(SHARD_TRIALS, trials - index * SHARD_TRIALS)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))
        x = _gauss(rng, (m, k), sigma_x2, not real)
        y = x @ enc
        if noise.kind is NoiseKind.IID_ADDITIVE:
            y_hat = y + _gauss(rng, (m, n), noise.sigma_q2, not real)
        elif real:
            y_hat = _quantize(y, noise)
        else:
            y_hat = _quantize(y.real, noise) + 1j * _quantize(y.imag, noise)
        err = y_hat @ dec - x
        a = np.sum(np.abs(y) ** 2, axis=1) / n
        b = np.sum(np.abs(err) ** 2, axis=1) / k
        q = float(np.sum(np.abs(y_hat - y) ** 2))
        return float(a.sum()), float((a * a).sum()), float(b.sum()), float((b * b).sum()), q

    parts = ordered_map(shard, range(-(-trials // SHARD_TRIALS)))
    sa, sa2, sb, sb2, sq = (math.fsum(col) for col in zip(*parts))
    mean_y, mean_e = sa / trials, sb / trials

    def stderr(s2, mean):
        return math.sqrt(max(s2 / trials - mean * mean, 0.0) / trials)

    if noise.kind is NoiseKind.IID_ADDITIVE:
        sigma_q2 = noise.sigma_q2
    else:
        sigma_q2 = sq / (trials * n)
    report = spectrum_report(g, pattern)
    return SimReport(
        trials=trials,
        empirical_sigma_y2=mean_y,
        predicted_sigma_y2=codevector_variance(report, sigma_x2),
        empirical_mse=mean_e,
        predicted_mse=predicted_mse(n, k, sigma_q2),
        seed=seed,
        noise_sigma_q2=sigma_q2,
        sigma_y2_stderr=stderr(sa2, mean_y),
        mse_stderr=stderr(sb2, mean_e),
    )
