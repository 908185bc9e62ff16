import numpy as np
import pytest

from channelforge import StinespringRep, sysenv_to_kraus
from channelforge.sampling import random_cptp, random_state

ACCEPTANCE_LINES = []


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, d):
    g = crandn(rng, d, d)
    return (g + g.conj().T) / 2


def random_kraus(seed, dx, dy=None, rank=None):
    return sysenv_to_kraus(random_cptp(dx, dy, rank, seed))


def ket(d, i):
    v = np.zeros(d, dtype=complex)
    v[i] = 1
    return v


def unit(d, i, j, cols=None):
    m = np.zeros((d, d if cols is None else cols), dtype=complex)
    m[i, j] = 1
    return m


CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
PLUS = np.full((2, 2), 0.5, dtype=complex)
DEPHASING = [unit(2, 0, 0), unit(2, 1, 1)]
TRANSPOSE_SUPEROP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cnot_sysenv():
    return StinespringRep.from_unitary(CNOT, ket(2, 0))


@pytest.fixture
def qubit_state():
    return random_state(2, seed=7).mat


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
