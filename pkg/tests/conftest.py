import numpy as np
import pytest

from schurcov import CovarianceMatrix, ModePartition, SeededRng, random_quantum_cm


def tmsv_matrix(c: float) -> np.ndarray:
    """Two-mode squeezed vacuum CM with ``cosh 2r = c``."""
    s = np.sqrt(c * c - 1.0)
    Z = np.diag([1.0, -1.0])
    return np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])


def random_pd(dim: int, rng: np.random.Generator, shift: float = 0.1) -> np.ndarray:
    G = rng.normal(size=(dim, dim))
    return G @ G.T / dim + shift * np.eye(dim)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def tmsv_125():
    return CovarianceMatrix(tmsv_matrix(1.25), ModePartition.from_spec("A:1,B:1"))


@pytest.fixture
def mixed_tripartite():
    return random_quantum_cm("A:1,B:2,C:1", nu_max=3.0, strength=0.7, rng=SeededRng(7))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
