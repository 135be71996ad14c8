"""Measurement-event schedules and pseudo-density matrices.

A schedule is an initial state plus ordered time slices of single-qubit
Pauli measurement events, with an optional CPTP channel acting between
adjacent slices. The pseudo-density matrix (PDM) over the events is
assembled from the expectation values of products of the +-1 measurement
outcomes, one tensor factor per event in event-id order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .channels import DensityState, KrausChannel, apply_channel_to_matrix, identity_channel
from .errors import InvariantViolation, UsageError
from .linalg import (
    HERM_ATOL,
    I2,
    PAULIS,
    embed_operator,
    kron,
    partial_trace,
)

MAX_PDM_EVENTS = 5
MAX_ORACLE_BRANCH_EVENTS = 12

# Basis-change unitaries U with U sigma U^dag = Z, for labels X, Y, Z.
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_SDG = np.array([[1, 0], [0, -1j]], dtype=complex)
_BASIS_CHANGE = {1: _H, 2: _H @ _SDG, 3: I2}
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


@dataclass(frozen=True)
class Event:
    """One measurement event: a (qubit, time slice) point, ordered by 1-based id."""

    id: int
    qubit: int
    slice_index: int


@dataclass(frozen=True)
class Schedule:
    qubit_count: int
    initial_state: DensityState
    events: tuple
    inter_slice_channels: tuple = ()

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        if self.initial_state.qubit_count != self.qubit_count:
            raise UsageError("initial state does not match qubit count")
        ids = sorted(e.id for e in events)
        if ids != list(range(1, len(events) + 1)):
            raise UsageError(f"event ids must be contiguous 1..n, got {ids}")
        slices = sorted({e.slice_index for e in events})
        if slices != list(range(len(slices))):
            raise UsageError(f"slice indices must be contiguous 0..S-1, got {slices}")
        for s in slices:
            qubits = [e.qubit for e in events if e.slice_index == s]
            if len(set(qubits)) != len(qubits):
                raise UsageError(f"slice {s} has repeated qubits {qubits}")
            if any(q < 0 or q >= self.qubit_count for q in qubits):
                raise UsageError(f"slice {s} touches qubits {qubits} out of range")
        channels = tuple(self.inter_slice_channels)
        gaps = max(len(slices) - 1, 0)
        if len(channels) == 0:
            channels = tuple([None] * gaps)
        if len(channels) != gaps:
            raise UsageError(f"expected {gaps} inter-slice channels, got {len(channels)}")
        for ch in channels:
            if ch is not None and ch.acts_on != self.qubit_count:
                raise UsageError("inter-slice channel dimension does not match system")
        object.__setattr__(self, "inter_slice_channels", channels)

    @property
    def event_count(self) -> int:
        return len(self.events)

    @property
    def slice_count(self) -> int:
        return 1 + max(e.slice_index for e in self.events)

    def events_in_slice(self, s: int) -> list:
        """Events of one slice ordered by qubit index (they commute; order fixed for reproducibility)."""
        return sorted((e for e in self.events if e.slice_index == s), key=lambda e: e.qubit)

    def _check_assignment(self, assignment) -> tuple:
        a = tuple(int(x) for x in assignment)
        if len(a) != self.event_count:
            raise UsageError(
                f"assignment length {len(a)} does not match {self.event_count} events"
            )
        if any(l not in (0, 1, 2, 3) for l in a):
            raise UsageError(f"assignment labels must be 0..3, got {a}")
        return a

    def _gap_channel(self, gap: int) -> KrausChannel:
        ch = self.inter_slice_channels[gap]
        return identity_channel(self.qubit_count) if ch is None else ch


def two_event_schedule(initial: DensityState, channel: KrausChannel | None) -> Schedule:
    """Two consecutive measurement events on one qubit with a channel in the gap."""
    return Schedule(
        qubit_count=1,
        initial_state=initial,
        events=(Event(1, 0, 0), Event(2, 0, 1)),
        inter_slice_channels=(channel,),
    )


def expectation(s: Schedule, assignment) -> float:
    """Expectation of the product of +-1 outcomes for one Pauli assignment.

    Uses the outcome-weighted superoperator: measuring a non-identity Pauli A
    and weighting by the outcome maps the running operator M to (AM + MA)/2,
    which equals P+ M P+ - P- M P-. Identity labels contribute outcome +1 and
    leave the state untouched. The result is the trace of the accumulated
    operator after all slices.
    """
    a = s._check_assignment(assignment)
    n = s.qubit_count
    M = s.initial_state.matrix.copy()
    for sl in range(s.slice_count):
        for ev in s.events_in_slice(sl):
            label = a[ev.id - 1]
            if label == 0:
                continue
            A = embed_operator(PAULIS[label], [ev.qubit], n)
            M = (A @ M + M @ A) / 2.0
        if sl < s.slice_count - 1:
            M = apply_channel_to_matrix(s._gap_channel(sl), M, list(range(n)), n)
    return float(np.trace(M).real)


def expectation_oracle(s: Schedule, assignment) -> float:
    """Brute-force cross-check of ``expectation`` by explicit branch enumeration.

    Every non-identity event splits the evolution into its two projective
    outcomes (Lueders rule, unnormalized so the trace carries the branch
    probability); the result is the probability-weighted sum of outcome
    products over all 2^k branches.
    """
    a = s._check_assignment(assignment)
    k = sum(1 for l in a if l != 0)
    if k > MAX_ORACLE_BRANCH_EVENTS:
        raise UsageError(f"{k} non-identity events exceeds the branch limit")
    n = s.qubit_count
    branches = [(1.0, s.initial_state.matrix.copy())]
    for sl in range(s.slice_count):
        for ev in s.events_in_slice(sl):
            label = a[ev.id - 1]
            if label == 0:
                continue
            A = embed_operator(PAULIS[label], [ev.qubit], n)
            P_plus = (np.eye(2**n) + A) / 2.0
            P_minus = (np.eye(2**n) - A) / 2.0
            branches = [
                (sign * prod, P @ M @ P)
                for prod, M in branches
                for sign, P in ((1.0, P_plus), (-1.0, P_minus))
            ]
        if sl < s.slice_count - 1:
            ch = s._gap_channel(sl)
            branches = [
                (prod, apply_channel_to_matrix(ch, M, list(range(n)), n))
                for prod, M in branches
            ]
    return float(sum(prod * np.trace(M).real for prod, M in branches))


@dataclass(frozen=True)
class PseudoDensityMatrix:
    """Hermitian unit-trace (possibly non-PSD) matrix over the event tensor space.

    ``coefficients`` stores the raw expectation of every Pauli assignment,
    flat-indexed base 4 with event 1 the most significant digit; the 1/2^n
    normalization lives only in the assembled matrix.
    """

    matrix: np.ndarray
    events: tuple
    coefficients: np.ndarray

    def __post_init__(self):
        n = len(self.events)
        M = np.asarray(self.matrix, dtype=complex)
        c = np.asarray(self.coefficients, dtype=float)
        if M.shape != (2**n, 2**n):
            raise InvariantViolation(f"PDM shape {M.shape} does not match {n} events")
        if c.shape != (4**n,):
            raise InvariantViolation(f"expected {4**n} coefficients, got {c.shape}")
        if np.max(np.abs(M - M.conj().T)) > HERM_ATOL:
            raise InvariantViolation("PDM is not Hermitian")
        tr = np.trace(M)
        if abs(tr.real - 1.0) > HERM_ATOL or abs(tr.imag) > HERM_ATOL:
            raise InvariantViolation(f"PDM trace {tr} is not 1")
        if np.max(np.abs(c)) > 1 + 1e-12:
            raise InvariantViolation("a stored expectation lies outside [-1, 1]")
        if abs(c[0] - 1.0) > 1e-12:
            raise InvariantViolation("all-identity expectation must be 1")
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "coefficients", c)

    @property
    def event_count(self) -> int:
        return len(self.events)

    def stored_expectation(self, assignment) -> float:
        a = tuple(int(x) for x in assignment)
        if len(a) != self.event_count:
            raise UsageError("assignment length does not match event count")
        idx = 0
        for l in a:
            idx = idx * 4 + l
        return float(self.coefficients[idx])


def build_pdm(s: Schedule) -> PseudoDensityMatrix:
    """Assemble the PDM from all 4^n assignment expectations (n = event count)."""
    n = s.event_count
    if n > MAX_PDM_EVENTS:
        raise UsageError(f"{n} events exceeds the {MAX_PDM_EVENTS}-event cap")
    dim = 2**n
    R = np.zeros((dim, dim), dtype=complex)
    coeffs = np.empty(4**n)
    for idx, a in enumerate(itertools.product(range(4), repeat=n)):
        e = expectation(s, a)
        coeffs[idx] = e
        R += e * kron([PAULIS[l] for l in a])
    R /= dim
    events = tuple(sorted(s.events, key=lambda ev: ev.id))
    return PseudoDensityMatrix((R + R.conj().T) / 2.0, events, coeffs)


def pdm_expectation(R: PseudoDensityMatrix, assignment) -> float:
    """Read an expectation back out of the matrix: Tr((tensor of Paulis) R)."""
    a = tuple(int(x) for x in assignment)
    if len(a) != R.event_count:
        raise UsageError("assignment length does not match event count")
    P = kron([PAULIS[l] for l in a])
    return float(np.trace(P @ R.matrix).real)


def reduce_pdm(R: PseudoDensityMatrix, keep) -> PseudoDensityMatrix:
    """Partial trace over the dropped event factors.

    ``keep`` is a set of event ids. The reduced PDM's expectations equal the
    parent's with the dropped events set to identity; kept events are
    renumbered 1..k in their original order.
    """
    keep_ids = sorted(set(keep))
    n = R.event_count
    if not keep_ids:
        raise UsageError("keep must be a nonempty set of event ids")
    if any(i < 1 or i > n for i in keep_ids):
        raise UsageError(f"keep ids {keep_ids} out of range 1..{n}")
    positions = [i - 1 for i in keep_ids]
    M = partial_trace(R.matrix, [2] * n, positions)
    k = len(positions)
    coeffs = np.empty(4**k)
    for idx, a in enumerate(itertools.product(range(4), repeat=k)):
        padded = [0] * n
        for pos, label in zip(positions, a):
            padded[pos] = label
        coeffs[idx] = R.stored_expectation(padded)
    events = tuple(
        Event(i + 1, R.events[pos].qubit, R.events[pos].slice_index)
        for i, pos in enumerate(positions)
    )
    return PseudoDensityMatrix(M, events, coeffs)


def ancilla_expectation(s: Schedule, assignment) -> float:
    """Ancilla-parity readout of a two-event single-qubit schedule.

    Simulates the primary qubit with a |0> ancilla: each non-identity event
    rotates the measured Pauli onto Z, copies the outcome bit into the
    ancilla with a CNOT, and rotates back; the gap channel acts on the
    primary only. Returns <Z> of the ancilla, which equals ``expectation``.
    """
    a = s._check_assignment(assignment)
    if s.qubit_count != 1 or s.event_count != 2 or s.slice_count != 2:
        raise UsageError("ancilla protocol requires one qubit and exactly two slices of one event")
    # Primary is qubit 0 (left factor), ancilla qubit 1.
    anc0 = np.array([[1, 0], [0, 0]], dtype=complex)
    rho = np.kron(s.initial_state.matrix, anc0)
    for sl in range(2):
        (ev,) = s.events_in_slice(sl)
        label = a[ev.id - 1]
        if label != 0:
            U = np.kron(_BASIS_CHANGE[label], I2)
            block = U.conj().T @ _CNOT @ U
            rho = block @ rho @ block.conj().T
        if sl == 0:
            rho = apply_channel_to_matrix(s._gap_channel(0), rho, [0], 2)
    Zanc = np.kron(I2, PAULIS[3])
    return float(np.trace(Zanc @ rho).real)
