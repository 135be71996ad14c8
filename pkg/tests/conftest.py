import numpy as np
import pytest

from pdmsim import DensityState


def random_hermitian(dim, rng):
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (G + G.conj().T) / 2


def random_density(qubits, rng):
    """Random full-rank mixed state from a Ginibre matrix."""
    d = 2**qubits
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    M = G @ G.conj().T
    return DensityState(M / np.trace(M).real, qubits)


def random_pure(qubits, rng):
    d = 2**qubits
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    v /= np.linalg.norm(v)
    return DensityState(np.outer(v, v.conj()), qubits)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
