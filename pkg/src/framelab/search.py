"""Codeword patterns up to rotation (optionally reflection), ranked by sum(1/lambda).

Canonical form: the lexicographically smallest string among the equivalent
patterns, with a data position ordered before a parity position. That puts
the longest run of data samples first, e.g. ``-x-x-x`` -> ``x-x-x-``.
"""
import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidPattern, TooLarge
from .frames import FrameSpec, PatternMask, gram_matrix
from .spectral import report_from_eigenvalues, subset_spectra, vandermonde_det

MAX_N = 28
BUCKET_MAX_N = 20
TIE_TOL = 1e-9


class DedupMode(enum.Enum):
    ROTATION = "rotation"
    ROTATION_AND_REFLECTION = "rotation-reflection"


# internal word: "0" marks data and "1" parity, so plain string order is the canonical order
def _word(pattern):
    return "".join("0" if b else "1" for b in pattern.mask)


def _pattern(word):
    return PatternMask(tuple(c == "0" for c in word))


def _variants(word, mode):
    n = len(word)
    out = [word[i:] + word[:i] for i in range(n)]
    if mode is DedupMode.ROTATION_AND_REFLECTION:
        rev = word[::-1]
        out += [rev[i:] + rev[:i] for i in range(n)]
    return out


def _canonical_word(word, mode):
    return min(_variants(word, mode))


def canonical_pattern(pattern, mode=DedupMode.ROTATION):
    return _pattern(_canonical_word(_word(pattern), DedupMode(mode)))


def class_members(pattern, mode=DedupMode.ROTATION):
    """All distinct patterns equivalent to ``pattern``, in canonical order."""
    return [_pattern(w) for w in sorted(set(_variants(_word(pattern), DedupMode(mode))))]


def pattern_order_key(pattern):
    return _word(pattern)


def _totient(m):
    return sum(1 for i in range(1, m + 1) if math.gcd(i, m) == 1)


def necklace_count(n, k):
    """Number of rotation classes of length-n masks with k data positions (Burnside)."""
    g = math.gcd(n, k)
    total = sum(_totient(d) * math.comb(n // d, k // d) for d in range(1, g + 1) if g % d == 0)
    return total // n


def _fixed_density_necklaces(n, k):
    """Lexicographically minimal rotations with k zeros, via FKM with density pruning."""
    a = [0] * (n + 1)
    out = []

    def gen(t, p, zeros):
        if t > n:
            if n % p == 0 and zeros == k:
                out.append("".join(str(x) for x in a[1:]))
            return
        for sym in range(a[t - p], 2):
            z = zeros + (sym == 0)
            if z > k or z + (n - t) < k:
                continue
            a[t] = sym
            gen(t + 1, p if sym == a[t - p] else t, z)

    gen(1, 1, 0)
    return out


def _check_size(n):
    if n > MAX_N:
        raise TooLarge(f"n={n} exceeds the exhaustive-search cap of {MAX_N}")


def _class_words(n, k, mode):
    """Sorted canonical words with their class sizes."""
    _check_size(n)
    if n <= BUCKET_MAX_N:
        sizes = {}
        full = "1" * n
        for rows in itertools.combinations(range(n), k):
            w = list(full)
            for r in rows:
                w[r] = "0"
            c = _canonical_word("".join(w), mode)
            sizes[c] = sizes.get(c, 0) + 1
        return sorted(sizes.items())
    words = _fixed_density_necklaces(n, k)
    if mode is DedupMode.ROTATION_AND_REFLECTION:
        words = [w for w in words if _canonical_word(w, mode) == w]
    return [(w, len(set(_variants(w, mode)))) for w in sorted(words)]


def enumerate_classes(spec, mode=DedupMode.ROTATION):
    """One canonical pattern per equivalence class, in canonical order."""
    return [_pattern(w) for w, _ in _class_words(spec.n, spec.k, DedupMode(mode))]


def necklace_rows(n, k):
    """0-based data rows of each rotation-class representative, as an (m, k) array."""
    _check_size(n)
    words = _fixed_density_necklaces(n, k)
    return np.array([[i for i, c in enumerate(w) if c == "0"] for w in words], dtype=np.intp).reshape(-1, k)


@dataclass(frozen=True)
class PatternClass:
    pattern: PatternMask
    size: int
    report: object


@dataclass(frozen=True)
class SearchResult:
    spec: FrameSpec
    classes: tuple
    best: PatternMask
    worst: PatternMask
    dedup_mode: DedupMode

    def class_of(self, pattern):
        """The ranked entry whose class contains ``pattern``."""
        key = canonical_pattern(pattern, self.dedup_mode)
        for entry in self.classes:
            if entry.pattern == key:
                return entry
        raise InvalidPattern(f"pattern {pattern} is not a valid mask for {self.spec}")


def _pick(classes, value, target):
    near = [c for c in classes if abs(value(c) - target) <= TIE_TOL or value(c) == target]
    return min(near, key=lambda c: _word(c.pattern)).pattern


def rank_patterns(spec, mode=DedupMode.ROTATION):
    """Spectrum report per class, sorted by ascending sum(1/lambda) then canonical order."""
    mode = DedupMode(mode)
    words = _class_words(spec.n, spec.k, mode)
    rows = np.array([[i for i, c in enumerate(w) if c == "0"] for w, _ in words], dtype=np.intp)
    rows = rows.reshape(len(words), spec.k)
    eigs = subset_spectra(gram_matrix(spec), rows)
    classes = []
    for (w, size), r, e in zip(words, rows, eigs):
        det = vandermonde_det(spec.n, spec.k, [int(i) + 1 for i in r])
        classes.append(PatternClass(_pattern(w), size, report_from_eigenvalues(_pattern(w), e, det)))
    classes.sort(key=lambda c: (c.report.inv_sum, _word(c.pattern)))
    inv = lambda c: c.report.inv_sum  # noqa: E731
    best = _pick(classes, inv, min(map(inv, classes)))
    worst = _pick(classes, inv, max(map(inv, classes)))
    return SearchResult(spec, tuple(classes), best, worst, mode)
