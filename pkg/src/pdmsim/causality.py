"""Trace-norm causality monotone and randomized checks of its axioms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel
from .errors import UsageError
from .linalg import PSD_ATOL, embed_operator, hermitian_eig
from .schedule import PseudoDensityMatrix

CHECK_ATOL = 1e-9


def _f_tr_matrix(M: np.ndarray) -> float:
    w, _ = hermitian_eig(M)
    value = float(np.sum(np.abs(w))) - 1.0
    # Clamp rounding dust on either side of zero.
    return value if value > 1e-12 else 0.0


def f_tr(R: PseudoDensityMatrix) -> float:
    """Causality monotone: trace norm minus one, clamped at zero."""
    return _f_tr_matrix(R.matrix)


@dataclass(frozen=True)
class CausalityReport:
    f_tr: float
    eigenvalues: tuple
    min_eigenvalue: float
    classification: str  # "causal" | "spacelike_compatible"
    tolerance: float


def classify(R: PseudoDensityMatrix, tol: float = PSD_ATOL) -> CausalityReport:
    """Classify a PDM as causal (negative eigenvalue) or spacelike-compatible."""
    w, _ = hermitian_eig(R.matrix)
    value = float(np.sum(np.abs(w))) - 1.0
    value = value if value > 1e-12 else 0.0
    causal = bool(w[0] < -tol)
    return CausalityReport(
        f_tr=value,
        eigenvalues=tuple(float(x) for x in w),
        min_eigenvalue=float(w[0]),
        classification="causal" if causal else "spacelike_compatible",
        tolerance=tol,
    )


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary: QR of a complex Ginibre matrix, phase-fixed."""
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, Rm = np.linalg.qr(G)
    d = np.diagonal(Rm)
    return Q * (d / np.abs(d))


def random_cptp(qubits: int, kraus_rank: int, rng: np.random.Generator) -> KrausChannel:
    """Random CPTP channel from a random Stinespring isometry (QR of a Gaussian)."""
    d = 2**qubits
    G = rng.normal(size=(d * kraus_rank, d)) + 1j * rng.normal(size=(d * kraus_rank, d))
    Q, _ = np.linalg.qr(G)  # isometry: Q^dag Q = I_d
    ops = tuple(Q[k * d : (k + 1) * d, :] for k in range(kraus_rank))
    return KrausChannel(ops, qubits)


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    trials: int
    max_deviation: float


def check_unitary_invariance(
    R: PseudoDensityMatrix, trials: int = 100, seed: int = 0
) -> CheckReport:
    """f_tr(U R U^dag) must equal f_tr(R) for Haar-random unitaries U."""
    if trials < 1:
        raise UsageError("trials must be >= 1")
    base = f_tr(R)
    dim = R.matrix.shape[0]
    worst = 0.0
    for k in range(trials):
        rng = np.random.default_rng(seed + k)
        U = haar_unitary(dim, rng)
        worst = max(worst, abs(_f_tr_matrix(U @ R.matrix @ U.conj().T) - base))
    return CheckReport(worst <= CHECK_ATOL, trials, worst)


def check_local_monotonicity(
    R: PseudoDensityMatrix, trials: int = 100, seed: int = 0
) -> CheckReport:
    """f_tr must not increase under a CPTP channel on a single event factor."""
    if trials < 1:
        raise UsageError("trials must be >= 1")
    base = f_tr(R)
    n = R.event_count
    worst = -np.inf
    for k in range(trials):
        rng = np.random.default_rng(seed + k)
        ch = random_cptp(1, int(rng.integers(1, 5)), rng)
        factor = int(rng.integers(0, n))
        out = np.zeros_like(R.matrix)
        for K in ch.kraus_ops:
            Kf = embed_operator(K, [factor], n)
            out += Kf @ R.matrix @ Kf.conj().T
        worst = max(worst, _f_tr_matrix(out) - base)
    return CheckReport(worst <= CHECK_ATOL, trials, max(0.0, worst))


def check_convexity(Rs, weights) -> CheckReport:
    """f_tr of a mixture must not exceed the mixture of f_tr values."""
    ws = np.asarray(weights, dtype=float)
    if len(Rs) != len(ws) or len(Rs) == 0:
        raise UsageError("need matching nonempty lists of PDMs and weights")
    if np.any(ws < 0) or abs(ws.sum() - 1.0) > 1e-12:
        raise UsageError("weights must be nonnegative and sum to 1")
    dims = {R.matrix.shape for R in Rs}
    if len(dims) != 1:
        raise UsageError("all PDMs must share one dimension")
    mix = sum(w * R.matrix for w, R in zip(ws, Rs))
    gap = _f_tr_matrix(mix) - sum(w * f_tr(R) for w, R in zip(ws, Rs))
    return CheckReport(gap <= CHECK_ATOL, len(Rs), max(0.0, gap))
