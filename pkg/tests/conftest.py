import numpy as np
import pytest

from framelab import _backend

IMPLS = ["python"] + (["cython"] if _backend.compiled_available() else [])

ACCEPTANCE_LINES = []


@pytest.fixture(params=IMPLS)
def kernels(request):
    """Run the test once per available kernel implementation."""
    previous = _backend.use(request.param)
    yield request.param
    _backend.use(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20111)


def random_hermitian(rng, k, scale=1.0):
    b = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    return scale * (b + b.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
