"""Self-verification suites: golden values, engine/oracle equivalence, axiom checks.

These back ``pdm verify`` and double as helpers for the test suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .causality import (
    check_convexity,
    check_local_monotonicity,
    check_unitary_invariance,
    f_tr,
    random_cptp,
)
from .channels import DensityState, state_from_bloch
from .errors import UsageError
from .linalg import kron
from .schedule import (
    Event,
    Schedule,
    ancilla_expectation,
    build_pdm,
    expectation,
    expectation_oracle,
    two_event_schedule,
)

#: Eq.-style golden PDM for |0>, two consecutive measurements, no noise.
GOLDEN_TWO_EVENT = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.5, 0.0],
        [0.0, 0.5, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)
GOLDEN_EIGENVALUES = (-0.5, 0.0, 0.5, 1.0)


def golden_schedule() -> Schedule:
    return two_event_schedule(state_from_bloch([0, 0, 1]), None)


def random_bloch(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return v * rng.uniform(0, 1)


def random_product_state(qubits: int, rng: np.random.Generator) -> DensityState:
    mats = [state_from_bloch(random_bloch(rng)).matrix for _ in range(qubits)]
    return DensityState(kron(mats), qubits)


def random_schedule(rng: np.random.Generator, max_events: int = 4) -> Schedule:
    """Random schedule with <= max_events events on 1-3 qubits and random CPTP gaps."""
    qubits = int(rng.integers(1, 4))
    n_events = int(rng.integers(1, max_events + 1))
    events, slice_index, used = [], 0, set()
    for eid in range(1, n_events + 1):
        q = int(rng.integers(0, qubits))
        if q in used or (used and rng.random() < 0.4):
            slice_index += 1
            used = set()
            q = int(rng.integers(0, qubits))
        used.add(q)
        events.append(Event(eid, q, slice_index))
    channels = tuple(
        random_cptp(qubits, int(rng.integers(1, 5)), rng) for _ in range(slice_index)
    )
    return Schedule(qubits, random_product_state(qubits, rng), tuple(events), channels)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    max_deviation: float
    detail: str = ""


def suite_golden() -> SuiteResult:
    R = build_pdm(golden_schedule())
    dev = float(np.max(np.abs(R.matrix - GOLDEN_TWO_EVENT)))
    w = np.linalg.eigvalsh(R.matrix)
    dev = max(dev, float(np.max(np.abs(w - np.array(GOLDEN_EIGENVALUES)))))
    dev = max(dev, abs(f_tr(R) - 1.0))
    return SuiteResult("golden_two_event", dev <= 1e-10, dev)


def suite_engine_oracle(seed: int = 0, trials: int = 200, assignments_per: int = 8) -> SuiteResult:
    worst, detail = 0.0, ""
    for k in range(trials):
        rng = np.random.default_rng(seed + k)
        s = random_schedule(rng)
        n = s.event_count
        picks = [tuple(rng.integers(0, 4, size=n)) for _ in range(assignments_per)]
        picks.append((0,) * n)
        for a in picks:
            d = abs(expectation(s, a) - expectation_oracle(s, a))
            if d > worst:
                worst, detail = d, f"trial {k} assignment {a}"
    return SuiteResult("engine_vs_oracle", worst <= 1e-12, worst, detail)


def suite_ancilla(seed: int = 0, trials: int = 50) -> SuiteResult:
    worst, detail = 0.0, ""
    for k in range(trials):
        rng = np.random.default_rng(seed + k)
        s = two_event_schedule(
            state_from_bloch(random_bloch(rng)), random_cptp(1, int(rng.integers(1, 5)), rng)
        )
        for a in itertools.product(range(4), repeat=2):
            d = abs(ancilla_expectation(s, a) - expectation(s, a))
            if d > worst:
                worst, detail = d, f"trial {k} assignment {a}"
    return SuiteResult("ancilla_protocol", worst <= 1e-10, worst, detail)


def suite_unitary_invariance(seed: int = 0, trials: int = 200) -> SuiteResult:
    rep = check_unitary_invariance(build_pdm(golden_schedule()), trials, seed)
    return SuiteResult("unitary_invariance", rep.passed, rep.max_deviation)


def suite_local_monotonicity(seed: int = 0, trials: int = 200) -> SuiteResult:
    rep = check_local_monotonicity(build_pdm(golden_schedule()), trials, seed)
    return SuiteResult("local_monotonicity", rep.passed, rep.max_deviation)


def suite_convexity(seed: int = 0, trials: int = 200) -> SuiteResult:
    worst, ok = 0.0, True
    for k in range(trials):
        rng = np.random.default_rng(seed + k)
        Rs = [
            build_pdm(
                two_event_schedule(
                    state_from_bloch(random_bloch(rng)),
                    random_cptp(1, int(rng.integers(1, 5)), rng),
                )
            )
            for _ in range(2)
        ]
        p = float(rng.uniform(0, 1))
        rep = check_convexity(Rs, [p, 1 - p])
        worst = max(worst, rep.max_deviation)
        ok = ok and rep.passed
    return SuiteResult("convexity", ok, worst)


def run_all(seed: int = 0, trials: int = 200) -> list[SuiteResult]:
    if trials < 1:
        raise UsageError("trials must be >= 1")
    return [
        suite_golden(),
        suite_engine_oracle(seed, trials),
        suite_ancilla(seed, max(1, trials // 4)),
        suite_unitary_invariance(seed, trials),
        suite_local_monotonicity(seed, trials),
        suite_convexity(seed, max(1, trials // 2)),
    ]
