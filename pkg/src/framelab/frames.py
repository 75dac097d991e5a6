"""BCH-DFT generator matrices, subframes and systematic frames.

Row numbers are 1-based wherever they cross the user boundary (pattern
strings, ``circular_distance``, ``gram_entry``) and 0-based inside arrays.
"""
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ConsistencyError,
    DimensionMismatch,
    IndexOutOfRange,
    InvalidPattern,
    InvalidSize,
    InvalidSpec,
)
from .linalg import as_matrix, inverse

REALNESS_TOL = 1e-12
DATA_CHAR = "x"
PARITY_CHAR = "-"


class Kind(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


def default_alpha(n, k):
    """Size of the leading identity block of the spectral selector."""
    return math.ceil(n / 2) - (n - k) // 2


@dataclass(frozen=True)
class FrameSpec:
    """Parameters of one (n, k) BCH-DFT code.

    Real codes need ``k`` odd: with the block layout used here the kept
    frequencies are ``-beta .. alpha-1``, which is conjugate-symmetric
    (hence a real generator) only when ``alpha == beta + 1``. The classical
    rule that ``n`` and ``k`` are not both even is checked first.
    """

    n: int
    k: int
    kind: Kind = Kind.REAL
    alpha_override: int | None = None

    def __post_init__(self):
        if isinstance(self.kind, str):
            try:
                object.__setattr__(self, "kind", Kind(self.kind.lower()))
            except ValueError:
                raise InvalidSpec(f"unknown kind {self.kind!r}; use 'real' or 'complex'") from None
        n, k = self.n, self.k
        if not (isinstance(n, int) and isinstance(k, int)) or not 1 <= k <= n:
            raise InvalidSpec(f"need integers 1 <= k <= n, got n={n}, k={k}")
        if self.kind is Kind.REAL:
            if n % 2 == 0 and k % 2 == 0:
                raise InvalidSpec(f"real code: n and k cannot be even simultaneously (n={n}, k={k})")
            if k % 2 == 0:
                raise InvalidSpec(
                    f"real code needs odd k: the spectral block layout is not "
                    f"conjugate-symmetric for k={k}; use kind=complex"
                )
            if self.alpha_override is not None:
                raise InvalidSpec("alpha_override applies to complex codes only")
        elif self.alpha_override is not None and not 0 <= self.alpha_override <= k:
            raise InvalidSpec(f"alpha_override must lie in [0, k={k}], got {self.alpha_override}")

    @property
    def alpha(self):
        if self.alpha_override is not None:
            return self.alpha_override
        return default_alpha(self.n, self.k)

    @property
    def beta(self):
        return self.k - self.alpha

    @property
    def redundancy(self):
        return self.n / self.k

    @property
    def is_integer_oversampling(self):
        return self.n % self.k == 0

    @classmethod
    def best_kind(cls, n, k):
        """Real spec when one exists for (n, k), otherwise the complex one."""
        try:
            return cls(n, k, Kind.REAL)
        except InvalidSpec:
            return cls(n, k, Kind.COMPLEX)


@dataclass(frozen=True)
class PatternMask:
    """Which codeword positions carry data (``True``) versus parity."""

    mask: tuple

    def __post_init__(self):
        mask = tuple(bool(b) for b in self.mask)
        if not mask:
            raise InvalidPattern("pattern must have at least one position")
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_string(cls, text, n=None):
        """Parse ``x``/``-`` notation (case-insensitive); ``n`` checks the length."""
        s = text.strip().lower()
        bad = sorted(set(s) - {DATA_CHAR, PARITY_CHAR})
        if bad:
            raise InvalidPattern(f"pattern {text!r} has characters {bad}; use 'x' and '-'")
        if n is not None and len(s) != n:
            raise InvalidPattern(f"pattern {text!r} has length {len(s)}, expected n={n}")
        return cls(tuple(c == DATA_CHAR for c in s))

    @classmethod
    def from_rows(cls, n, rows):
        """Mask from 0-based row indices."""
        rows = list(rows)
        if any(not 0 <= r < n for r in rows):
            raise IndexOutOfRange(f"row indices {rows} outside 0..{n - 1}")
        if len(set(rows)) != len(rows):
            raise InvalidPattern(f"duplicate row indices in {rows}")
        chosen = set(rows)
        return cls(tuple(i in chosen for i in range(n)))

    @classmethod
    def every_mth(cls, n, m, offset=0):
        return cls.from_rows(n, range(offset, n, m))

    @classmethod
    def consecutive(cls, n, k, offset=0):
        return cls.from_rows(n, [(offset + i) % n for i in range(k)])

    @property
    def n(self):
        return len(self.mask)

    @property
    def count(self):
        return sum(self.mask)

    @property
    def rows(self):
        return tuple(i for i, b in enumerate(self.mask) if b)

    def to_string(self):
        return "".join(DATA_CHAR if b else PARITY_CHAR for b in self.mask)

    def rotate(self, shift):
        """Circular shift: position ``i`` moves to ``i + shift``."""
        s = shift % self.n
        return PatternMask(self.mask[-s:] + self.mask[:-s] if s else self.mask)

    def reverse(self):
        return PatternMask(self.mask[::-1])

    def require(self, spec):
        if self.n != spec.n:
            raise DimensionMismatch(f"pattern length {self.n} does not match n={spec.n}")
        if self.count != spec.k:
            raise DimensionMismatch(f"pattern selects {self.count} rows, expected k={spec.k}")
        return self

    def __str__(self):
        return self.to_string()


def build_dft_matrix(n):
    """Unitary n x n matrix with entry (m, p) = exp(2j*pi*m*p/n) / sqrt(n)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidSize(f"DFT size must be a positive integer, got {n!r}")
    idx = np.arange(n)
    # reduce m*p mod n first so large exponents stay exact
    return np.exp(2j * np.pi * (np.outer(idx, idx) % n) / n) / math.sqrt(n)


def build_sigma(spec):
    """n x k 0/1 selector with I_alpha on top and I_beta at the bottom."""
    n, k, a, b = spec.n, spec.k, spec.alpha, spec.beta
    s = np.zeros((n, k), dtype=np.complex128)
    s[:a, :a] = np.eye(a)
    if b:
        s[n - b:, a:] = np.eye(b)
    return s


@lru_cache(maxsize=256)
def _generator(spec):
    n, k = spec.n, spec.k
    g = math.sqrt(n / k) * (build_dft_matrix(n).conj().T @ build_sigma(spec))
    if spec.kind is Kind.REAL:
        g = g @ build_dft_matrix(k)
        residue = float(np.abs(g.imag).max())
        if residue > REALNESS_TOL:
            raise ConsistencyError(f"real generator has imaginary residue {residue:.3e}")
        g = g.real.astype(np.complex128)
    g.setflags(write=False)
    return g


def build_generator(spec):
    """Generator matrix G (n x k); real codes carry exactly zero imaginary parts."""
    return _generator(spec).copy()


@lru_cache(maxsize=256)
def _gram(spec):
    g = _generator(spec)
    a = g @ g.conj().T
    a.setflags(write=False)
    return a


def gram_matrix(spec):
    """G G^H (n x n), the circulant Gram matrix of the frame rows."""
    return _gram(spec).copy()


def gram_entry(spec, r, s):
    """Closed-form (r, s) entry of G G^H for 1-based row numbers.

    Sums exp(j*m*(theta_s - theta_r)) / k over the kept frequency indices,
    with theta_x = 2*pi*(x - 1)/n.
    """
    n = spec.n
    for x in (r, s):
        if not 1 <= x <= n:
            raise IndexOutOfRange(f"row {x} outside 1..{n}")
    freqs = list(range(spec.alpha)) + list(range(n - spec.beta, n))
    d = 2 * np.pi * (s - r) / n
    return complex(sum(np.exp(1j * m * d) for m in freqs) / spec.k)


def extract_subframe(g, pattern):
    """Rows of ``g`` at the pattern's data positions, in order."""
    g = as_matrix(g)
    if pattern.n != g.shape[0]:
        raise DimensionMismatch(f"pattern length {pattern.n} != generator rows {g.shape[0]}")
    return g[list(pattern.rows)]


def build_systematic(g, pattern):
    """G_sys = G G_k^{-1}: its rows at the data positions form the identity."""
    g = as_matrix(g)
    k = g.shape[1]
    if pattern.n != g.shape[0] or pattern.count != k:
        raise DimensionMismatch(
            f"pattern must have length {g.shape[0]} and select {k} rows, "
            f"got length {pattern.n} with {pattern.count}"
        )
    gsys = g @ inverse(extract_subframe(g, pattern))
    if not np.any(g.imag):
        gsys = gsys.real.astype(np.complex128)
    err = float(np.abs(gsys[list(pattern.rows)] - np.eye(k)).max())
    if err > 1e-10:
        raise ConsistencyError(f"systematic rows deviate from identity by {err:.3e}")
    return gsys


def circular_distance(p, q, n):
    """min(|q - p|, n - |q - p|) for 1-based positions on a length-n cycle."""
    if not (1 <= p <= n and 1 <= q <= n):
        raise IndexOutOfRange(f"positions ({p}, {q}) outside 1..{n}")
    d = abs(q - p)
    return min(d, n - d)
