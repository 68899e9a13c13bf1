import warnings

import numpy as np
import pytest

from hgtf.signal import generate

GRID = (-16.0, 1.0 / 32.0, 1024)

# the analysis corpus: unit-energy signals well inside the grid
CORPUS = {
    "chirp": ("linear_chirp", {"rate": 2.0, "sigma": 1.5}),
    "tones": ("two_tones", {"omega1": 2.0, "omega2": 6.0, "sigma": 1.5}),
    "gauss": ("gaussian_pulse", {"sigma": 1.0}),
}


def corpus_signal(name, grid=GRID):
    kind, params = CORPUS[name]
    return generate(kind, params, grid)


@pytest.fixture(params=sorted(CORPUS))
def corpus(request):
    return request.param, corpus_signal(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20241019)


@pytest.fixture
def quiet():
    """Silence the package's diagnostic warnings inside a test."""
    from hgtf.diagnostics import HGTFWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HGTFWarning)
        yield


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
