import numpy as np
import pytest

from pdmsim import (
    UsageError,
    hermitian_eig,
    kron,
    partial_trace,
    pauli_matrix,
    pauli_string_matrix,
    trace_norm,
)
from pdmsim.causality import haar_unitary
from pdmsim.linalg import I2, PAULIS, X, Y, Z
from pdmsim.verify import GOLDEN_TWO_EVENT

from conftest import random_hermitian


class TestPauliMatrix:
    def test_identity(self):
        assert np.array_equal(pauli_matrix(0), np.eye(2))

    def test_x(self):
        assert np.array_equal(pauli_matrix(1), np.array([[0, 1], [1, 0]]))

    def test_y(self):
        assert np.array_equal(pauli_matrix(2), np.array([[0, -1j], [1j, 0]]))

    def test_properties(self):
        for label in (1, 2, 3):
            P = pauli_matrix(label)
            assert np.allclose(P, P.conj().T)
            assert np.allclose(P @ P, np.eye(2))
            assert abs(np.trace(P)) < 1e-15

    def test_bad_label(self):
        with pytest.raises(UsageError):
            pauli_matrix(4)


class TestKron:
    def test_identity_pair(self):
        assert np.array_equal(kron([I2, I2]), np.eye(4))

    def test_z_times_identity(self):
        assert np.array_equal(kron([Z, I2]), np.diag([1, 1, -1, -1]).astype(complex))

    def test_xx_antidiagonal(self):
        M = kron([X, X])
        expected = np.zeros((4, 4))
        expected[0, 3] = expected[1, 2] = expected[2, 1] = expected[3, 0] = 1
        assert np.array_equal(M, expected)

    def test_empty_list_rejected(self):
        with pytest.raises(UsageError):
            kron([])

    def test_associativity(self, rng):
        for _ in range(20):
            A, B, C = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
            left = kron([A, kron([B, C])])
            right = kron([kron([A, B]), C])
            assert np.max(np.abs(left - right)) <= 1e-14


class TestPartialTrace:
    def test_identity_factor(self):
        assert np.allclose(partial_trace(np.eye(4), [2, 2], {0}), 2 * np.eye(2))

    def test_bell_state(self):
        phi = np.zeros(4)
        phi[0] = phi[3] = 1 / np.sqrt(2)
        rho = np.outer(phi, phi)
        assert np.allclose(partial_trace(rho, [2, 2], {0}), np.eye(2) / 2)

    def test_golden_matrix_keep_second(self):
        # Direct block sums of the two-event golden matrix give |0><0|.
        out = partial_trace(GOLDEN_TWO_EVENT, [2, 2], {1})
        assert np.allclose(out, np.array([[1, 0], [0, 0]]), atol=1e-14)

    def test_trace_preserved(self, rng):
        for _ in range(20):
            M = random_hermitian(8, rng)
            for keep in ({0}, {1}, {2}, {0, 2}):
                out = partial_trace(M, [2, 2, 2], keep)
                assert abs(np.trace(out) - np.trace(M)) <= 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(UsageError):
            partial_trace(np.eye(4), [2, 2, 2], {0})


class TestHermitianEig:
    def test_pauli_z(self):
        w, _ = hermitian_eig(Z)
        assert np.allclose(w, [-1, 1])

    def test_golden_matrix(self):
        w, _ = hermitian_eig(GOLDEN_TWO_EVENT)
        assert np.allclose(w, [-0.5, 0, 0.5, 1], atol=1e-10)

    def test_isotropic_family(self):
        # lam = 1/2: one eigenvalue (1 - 3 lam)/4, three at (1 + lam)/4.
        lam = 0.5
        M = np.eye(4) / 4 + lam * (kron([X, X]) + kron([Y, Y]) + kron([Z, Z])) / 4
        w, _ = hermitian_eig(M)
        assert np.allclose(w, [-0.125, 0.375, 0.375, 0.375], atol=1e-12)

    def test_reconstruction(self, rng):
        for dim in (2, 4, 8, 16):
            M = random_hermitian(dim, rng)
            w, V = hermitian_eig(M)
            assert np.max(np.abs(V @ np.diag(w) @ V.conj().T - M)) <= 1e-10
            assert np.max(np.abs(V.conj().T @ V - np.eye(dim))) <= 1e-10
            assert np.all(np.diff(w) >= -1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(UsageError):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestTraceNorm:
    def test_maximally_mixed(self):
        assert trace_norm(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-14)

    def test_golden_matrix(self):
        assert trace_norm(GOLDEN_TWO_EVENT) == pytest.approx(2.0, abs=1e-12)

    def test_dephased_two_event(self):
        # Spectrum {1, 0, +-gamma/2} at gamma = 1/2 sums to 3/2 in absolute value.
        gamma = 0.5
        M = GOLDEN_TWO_EVENT.copy()
        M[1, 2] = M[2, 1] = gamma / 2
        assert trace_norm(M) == pytest.approx(1.5, abs=1e-12)

    def test_unitary_invariance(self, rng):
        M = random_hermitian(4, rng)
        base = trace_norm(M)
        for _ in range(20):
            U = haar_unitary(4, rng)
            assert abs(trace_norm(U @ M @ U.conj().T) - base) <= 1e-10

    def test_bounds_pauli_overlap(self, rng):
        M = random_hermitian(4, rng)
        tn = trace_norm(M)
        assert tn >= abs(np.trace(M).real) - 1e-12
        for a in range(4):
            for b in range(4):
                P = pauli_string_matrix([a, b])
                assert abs(np.trace(P @ M).real) <= tn + 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(UsageError):
            trace_norm(np.array([[0, 2], [0, 0]], dtype=complex))
