"""Systematic DFT frames: construction, subframe spectra, pattern search and simulation."""

__version__ = "0.1.0"

from ._backend import IMPLEMENTATION as KERNELS  # noqa: E402
from .errors import FrameLabError  # noqa: E402
from .frames import (  # noqa: E402
    FrameSpec,
    Kind,
    PatternMask,
    build_dft_matrix,
    build_generator,
    build_sigma,
    build_systematic,
    circular_distance,
    extract_subframe,
    gram_matrix,
)
from .quantsim import NoiseModel, SimReport, reconstruct, simulate  # noqa: E402
from .search import DedupMode, SearchResult, canonical_pattern, enumerate_classes, rank_patterns  # noqa: E402
from .spectral import (  # noqa: E402
    SpectrumReport,
    check_eigenvalue_bracket,
    check_min_eigenvalue_bound,
    codevector_variance,
    predicted_mse,
    sine_product_identity,
    spectrum_report,
    vandermonde_det,
)
