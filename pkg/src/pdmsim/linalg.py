"""Dense complex operator algebra for small multi-qubit systems.

Everything here works on plain ``numpy`` complex arrays. The fixed
convention throughout the package: tensor factor 1 is the *leftmost*
Kronecker factor and the most significant bit of the computational basis
index, i.e. basis states are |b1 b2 ... bn> with b1 the high bit.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError

# Tolerances shared across the package.
HERM_ATOL = 1e-12
PSD_ATOL = 1e-10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: Single-qubit Pauli matrices indexed by label 0..3 (I, X, Y, Z).
PAULIS = (I2, X, Y, Z)
PAULI_NAMES = ("I", "X", "Y", "Z")


def pauli_matrix(label: int) -> np.ndarray:
    """Return the 2x2 Pauli matrix for a label in {0: I, 1: X, 2: Y, 3: Z}."""
    if label not in (0, 1, 2, 3):
        raise UsageError(f"Pauli label must be 0..3, got {label!r}")
    return PAULIS[label].copy()


def kron(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of a nonempty list, leftmost factor most significant."""
    if len(factors) == 0:
        raise UsageError("kron requires at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def pauli_string_matrix(labels: Iterable[int]) -> np.ndarray:
    """Matrix of a Pauli string: the Kronecker product of its labels, left to right."""
    return kron([PAULIS[l] for l in labels])


def is_hermitian(M: np.ndarray, atol: float = HERM_ATOL) -> bool:
    return bool(np.max(np.abs(M - M.conj().T)) <= atol)


def partial_trace(M: np.ndarray, factor_dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out the factors not listed in ``keep``.

    Parameters
    ----------
    M : square array whose dimension is the product of ``factor_dims``.
    factor_dims : dimension of each tensor factor, in order.
    keep : indices of the factors to keep; their relative order is preserved.

    The trace of the result equals the trace of ``M``.
    """
    M = np.asarray(M, dtype=complex)
    dims = list(factor_dims)
    d = int(np.prod(dims))
    if M.shape != (d, d):
        raise UsageError(f"matrix shape {M.shape} does not match factor dims {dims}")
    keep = sorted(set(keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise UsageError(f"keep indices {keep} out of range for {len(dims)} factors")
    n = len(dims)
    t = M.reshape(dims + dims)
    # Trace out dropped factors from highest index down so axis numbers stay valid.
    dropped = [i for i in range(n) if i not in keep]
    for i in sorted(dropped, reverse=True):
        t = np.trace(t, axis1=i, axis2=i + t.ndim // 2)
    dk = int(np.prod([dims[k] for k in keep])) if keep else 1
    return t.reshape(dk, dk)


def hermitian_eig(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, V)`` with eigenvalues ``w`` real and ascending and the
    columns of ``V`` an orthonormal eigenbasis. The input is symmetrized
    as ``(M + M^dag)/2`` before solving to absorb rounding noise; inputs
    farther than ``HERM_ATOL`` from Hermitian are rejected.
    """
    M = np.asarray(M, dtype=complex)
    if not is_hermitian(M):
        raise UsageError("hermitian_eig requires a Hermitian matrix")
    w, V = np.linalg.eigh((M + M.conj().T) / 2.0)
    return w, V


def trace_norm(M: np.ndarray) -> float:
    """Trace norm of a Hermitian matrix: the sum of absolute eigenvalues."""
    w, _ = hermitian_eig(M)
    return float(np.sum(np.abs(w)))


def embed_operator(K: np.ndarray, targets: Sequence[int], qubit_count: int) -> np.ndarray:
    """Embed an operator acting on ``targets`` into a ``qubit_count``-qubit system.

    ``K`` acts on ``len(targets)`` qubits; the targets are matched to K's
    factors in the order given. Identity acts everywhere else.
    """
    K = np.asarray(K, dtype=complex)
    m = len(targets)
    if len(set(targets)) != m:
        raise UsageError(f"targets must be distinct, got {list(targets)}")
    if any(q < 0 or q >= qubit_count for q in targets):
        raise UsageError(f"targets {list(targets)} out of range for {qubit_count} qubits")
    if K.shape != (2**m, 2**m):
        raise UsageError(f"operator shape {K.shape} does not act on {m} qubits")
    if m == qubit_count and list(targets) == list(range(qubit_count)):
        return K
    full = np.kron(K, np.eye(2 ** (qubit_count - m), dtype=complex))
    # Factor i of `full` currently holds qubit order[i]; permute so factor q
    # holds qubit q.
    order = list(targets) + [q for q in range(qubit_count) if q not in targets]
    perm = np.argsort(order)
    t = full.reshape([2] * (2 * qubit_count))
    axes = list(perm) + [qubit_count + p for p in perm]
    return t.transpose(axes).reshape(2**qubit_count, 2**qubit_count)
