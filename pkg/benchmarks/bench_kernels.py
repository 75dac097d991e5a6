"""Compare the compiled and pure-Python kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import itertools
import time

import numpy as np

from framelab import _backend
from framelab.frames import FrameSpec, gram_matrix
from framelab.linalg import determinant, eig_hermitian_batch, inverse


def _subset_stack(n, k):
    gram = gram_matrix(FrameSpec.best_kind(n, k))
    rows = np.array(list(itertools.combinations(range(n), k)), dtype=np.intp)
    return gram[rows[:, :, None], rows[:, None, :]]


def _random_matrices(count, size, seed=0):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(count, size, size)) + 1j * rng.normal(size=(count, size, size))


WORKLOADS = {
    "jacobi (11,5) all subsets": lambda: eig_hermitian_batch(_STACKS["11,5"]),
    "jacobi (12,6) all subsets": lambda: eig_hermitian_batch(_STACKS["12,6"]),
    "lu det 200 x 12x12": lambda: [determinant(m) for m in _STACKS["rand12"]],
    "lu inverse 200 x 12x12": lambda: [inverse(m) for m in _STACKS["rand12"]],
}
_STACKS = {}


def run(repeat):
    _STACKS["11,5"] = _subset_stack(11, 5)
    _STACKS["12,6"] = _subset_stack(12, 6)
    _STACKS["rand12"] = _random_matrices(200, 12)
    impls = ["python"] + (["cython"] if _backend.compiled_available() else [])
    timings = {}
    for impl in impls:
        _backend.use(impl)
        for name, fn in WORKLOADS.items():
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                fn()
                best = min(best, time.perf_counter() - t0)
            timings[impl, name] = best
    print(f"{'workload':32s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>9s}")
    for name in WORKLOADS:
        py = timings["python", name]
        cy = timings.get(("cython", name))
        if cy is None:
            print(f"{name:32s} {py:12.4f} {'n/a':>12s} {'':>9s}")
        else:
            print(f"{name:32s} {py:12.4f} {cy:12.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    run(ap.parse_args().repeat)
