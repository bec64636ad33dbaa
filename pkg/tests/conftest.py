import numpy as np
import pytest

from lfia.channel import complex_normal

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20130701)


def random_unit_rows(rng, shape):
    x = complex_normal(rng, shape)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def random_hermitian(rng, n):
    x = complex_normal(rng, (n, n))
    return (x + x.conj().T) / 2


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
